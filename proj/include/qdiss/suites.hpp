#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "analytic.hpp"
#include "enriched.hpp"
#include "functors.hpp"
#include "properties.hpp"
#include "quantaloid.hpp"
#include "search.hpp"
#include "zoo.hpp"

namespace qdiss {

enum class Verdict { Pass, Fail, Sampled };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Sampled: return "sampled";
  }
  return "?";
}

/// Outcome of one suite on one quantale. `notes` record observations on
/// instances outside a claim's hypotheses; they never affect the verdict.
struct SuiteResult {
  std::string id;
  std::string quantale;
  Verdict verdict = Verdict::Pass;
  std::vector<Violation> witnesses;
  std::vector<std::string> notes;
  std::size_t checked = 0;
  double seconds = 0;

  bool passed() const { return verdict != Verdict::Fail; }
  void fail(std::string rule, std::vector<std::string> w) {
    verdict = Verdict::Fail;
    for (const auto& v : witnesses)
      if (v.rule == rule) return;
    witnesses.push_back({std::move(rule), std::move(w)});
  }
  void absorb(const std::string& prefix, const ValidationReport& r) {
    for (const auto& v : r.violations) fail(prefix + v.rule, v.witness);
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "lemma-diagonal-props", "lemma-backdiagonal-props", "composition-agreement",
      "representation-theorems", "negation-lemmas", "endo-girard", "nucleus-duality", "mv-d1-d3"};
  return names;
}

/// Sampled suites over Lawvere's quantale.
inline const std::vector<std::string>& sampled_suite_names() {
  static const std::vector<std::string> names = {"lawvere-laws", "interval-axioms"};
  return names;
}

// ---------------------------------------------------------------------------
// Matrix enumeration and witness shrinking.

/// Calls f on every matrix over {0..|Q|-1} with a(y,x) = a(x,y)° (the
/// identity when Q has no involution). Stops early when f returns false.
inline void for_each_symmetric_matrix(const Quantale& Q, std::size_t n,
                                      const std::function<bool(const Matrix<Element>&)>& f) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y) cells.push_back({x, y});
  Matrix<Element> a(n, Element{0});
  std::vector<Element> digits(cells.size(), 0);
  const Element base = static_cast<Element>(Q.size());
  while (true) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      auto [x, y] = cells[k];
      a(x, y) = digits[k];
      a(y, x) = x == y ? digits[k] : Q.involute(digits[k]);
    }
    if (!f(a)) return;
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == base) digits[k++] = 0;
    if (k == digits.size()) return;
  }
}

/// Greedily drops carrier points while `still_fails` keeps holding.
inline std::vector<std::size_t> shrink_carrier(std::size_t n,
                                               const std::function<bool(const std::vector<std::size_t>&)>& still_fails) {
  std::vector<std::size_t> keep(n);
  for (std::size_t i = 0; i < n; ++i) keep[i] = i;
  bool changed = true;
  while (changed && keep.size() > 1) {
    changed = false;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      auto trial = keep;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
      if (still_fails(trial)) {
        keep = std::move(trial);
        changed = true;
        break;
      }
    }
  }
  return keep;
}

inline std::vector<std::string> matrix_witness(const Quantale& Q, const Matrix<Element>& a) {
  std::vector<std::string> out;
  for (std::size_t x = 0; x < a.size(); ++x) {
    std::string row;
    for (std::size_t y = 0; y < a.size(); ++y) row += (y ? " " : "") + Q.label(a(x, y));
    out.push_back("[" + row + "]");
  }
  return out;
}

/// Largest carrier size whose symmetric matrices stay below ~300k.
inline std::size_t representation_carrier_cap(std::size_t q_size) {
  if (q_size <= 8) return 3;
  if (q_size <= 64) return 2;
  return 1;
}

// ---------------------------------------------------------------------------

namespace suites {

inline void diagonal_props(const DerivedQuantaloids& Dq, SuiteResult& res) {
  const Quantale& Q = *Dq.base;
  const std::size_t n = Q.size();
  const bool divisible = is_divisible(Q);
  for (Element p = 0; p < n; ++p)
    for (Element q = 0; q < n; ++q) {
      ++res.checked;
      const auto Dpq = diagonals(Q, p, q);
      if (!Dpq.contains(Q.bottom())) res.fail("bottom-is-diagonal", {Q.label(p), Q.label(q)});
      for (Element d : Dpq.elements())
        for (Element e : Dpq.elements())
          if (!Dpq.contains(Q.join(d, e))) res.fail("closed-under-joins", {Q.label(p), Q.label(q), Q.label(d), Q.label(e)});
      if (usable_involution(Q))
        for (Element d : Dpq.elements())
          if (!is_diagonal(Q, Q.involute(q), Q.involute(p), Q.involute(d)))
            res.fail("involution-lift", {Q.label(p), Q.label(q), Q.label(d)});
      for (Element d : Dq.H->hom(p, q))
        if (!Q.leq(d, Q.meet(p, q))) res.fail("H-below-meet", {Q.label(p), Q.label(q), Q.label(d)});
      if (divisible)
        for (Element d = 0; d < n; ++d)
          if (Q.leq(d, Q.meet(p, q)) && !Dq.H->in_hom(p, q, d))
            res.fail("divisible-H-is-downset", {Q.label(p), Q.label(q), Q.label(d)});
    }
  for (Element q = 0; q < n; ++q)
    if (!is_diagonal(Q, q, q, q)) res.fail("identity-is-diagonal", {Q.label(q)});
  if (!divisible) res.notes.push_back("not divisible: H(p,q) = down(p^q) not claimed");
}

inline void backdiagonal_props(const DerivedQuantaloids& Dq, SuiteResult& res) {
  const Quantale& Q = *Dq.base;
  const std::size_t n = Q.size();
  for (Element p = 0; p < n; ++p)
    for (Element q = 0; q < n; ++q) {
      ++res.checked;
      const auto Bpq = back_diagonals(Q, p, q);
      if (!Bpq.contains(Q.top())) res.fail("top-is-back-diagonal", {Q.label(p), Q.label(q)});
      for (Element b : Bpq.elements())
        for (Element c : Bpq.elements())
          if (!Bpq.contains(Q.meet(b, c))) res.fail("closed-under-meets", {Q.label(p), Q.label(q), Q.label(b), Q.label(c)});
      if (usable_involution(Q))
        for (Element b : Bpq.elements())
          if (!is_back_diagonal(Q, Q.involute(q), Q.involute(p), Q.involute(b)))
            res.fail("involution-lift", {Q.label(p), Q.label(q), Q.label(b)});
      for (Element b : Dq.K->hom(p, q))
        if (!Q.leq(Q.join(p, q), b)) res.fail("K-above-join", {Q.label(p), Q.label(q), Q.label(b)});
    }
  for (Element q = 0; q < n; ++q)
    if (!is_back_diagonal(Q, q, q, q)) res.fail("identity-is-back-diagonal", {Q.label(q)});
}

inline void composition_agreement(const DerivedQuantaloids& Dq, SuiteResult& res) {
  for (auto k : {QuantaloidKind::D, QuantaloidKind::H, QuantaloidKind::B, QuantaloidKind::K}) {
    ++res.checked;
    res.absorb(std::string(to_string(k)) + ":", validate_quantaloid(*Dq.get(k)));
  }
}

inline void representation(const DerivedQuantaloids& Dq, SuiteResult& res, std::size_t max_carrier) {
  const Quantale& Q = *Dq.base;
  if (!usable_involution(Q)) {
    res.notes.push_back("no usable involution: symmetry undefined");
    return;
  }
  const SmallQuantaloid& H = *Dq.H;
  const SmallQuantaloid& K = *Dq.K;
  auto diag = [](const Matrix<Element>& a) {
    std::vector<Element> t(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) t[x] = a(x, x);
    return t;
  };
  auto sim_mismatch = [&](const Matrix<Element>& a) {
    bool s = check_similarity(Q, a).ok();
    auto t = diag(a);
    bool c = check_qcategory(H, t, a).ok() && check_symmetric(H, t, a).ok();
    return s != c;
  };
  auto dis_mismatch = [&](const Matrix<Element>& a) {
    bool s = check_dissimilarity(Q, a).ok();
    auto t = diag(a);
    bool c = check_qcategory(K, t, a).ok() && check_symmetric(K, t, a).ok();
    return s != c;
  };
  std::size_t sims = 0, diss = 0;
  for (std::size_t n = 1; n <= max_carrier; ++n)
    for_each_symmetric_matrix(Q, n, [&](const Matrix<Element>& a) {
      ++res.checked;
      if (check_similarity(Q, a).ok()) ++sims;
      if (check_dissimilarity(Q, a).ok()) ++diss;
      auto report = [&](const char* rule, const std::function<bool(const Matrix<Element>&)>& bad) {
        if (!bad(a)) return;
        auto keep = shrink_carrier(a.size(), [&](const std::vector<std::size_t>& k) { return bad(a.restrict(k)); });
        res.fail(rule, matrix_witness(Q, a.restrict(keep)));
      };
      report("similarity-iff-symmetric-H-category", sim_mismatch);
      report("dissimilarity-iff-symmetric-K-category", dis_mismatch);
      return res.witnesses.size() < 2;
    });
  res.notes.push_back(std::to_string(sims) + " similarities and " + std::to_string(diss) +
                      " dissimilarities on carriers up to " + std::to_string(max_carrier));
}

inline std::string grade_note(const LaxFunctor& F, const FunctorGrade& g) {
  return F.name() + ": " + (g.well_typed ? "" : "ill-typed ") + "lax=" + (g.is_lax ? "yes" : "no") +
         " hom=" + (g.is_homomorphism ? "yes" : "no") + " iso=" + (g.is_isomorphism ? "yes" : "no");
}

inline void require_grade(SuiteResult& res, const LaxFunctor& F, const FunctorGrade& g, bool lax,
                          bool hom, bool iso) {
  ++res.checked;
  auto first = [&]() {
    std::vector<std::string> w{F.name()};
    for (const auto& [k, v] : g.witnesses) {
      if (k.rfind("involution", 0) == 0) continue;
      w.push_back(k);
      w.insert(w.end(), v.begin(), v.end());
      break;
    }
    return w;
  };
  if (!g.well_typed) res.fail("well-typed", first());
  else if (lax && !g.is_lax) res.fail("lax", first());
  else if (hom && !g.is_homomorphism) res.fail("homomorphism", first());
  else if (iso && !g.is_isomorphism) res.fail("isomorphism", first());
  // grade ordering
  if ((g.is_isomorphism && !g.is_homomorphism) || (g.is_homomorphism && !g.is_lax))
    res.fail("grade-ordering", {F.name()});
}

inline void negation_lemmas(const DerivedQuantaloids& Dq, SuiteResult& res) {
  const Quantale& Q = *Dq.base;
  const auto prof = classify(Q);
  bool applied = false;
  if (prof.divisible) {
    applied = true;
    auto [nl, nr] = neg_functors_divisible(Dq);
    require_grade(res, nl, grade_functor(nl, false), true, false, false);
    require_grade(res, nr, grade_functor(nr, false), true, false, false);
    if (is_cyclic(Q, Q.bottom()) && !same_functor(nl, nr)) res.fail("neg_l-equals-neg_r", {});
  } else {
    auto [nl, nr] = negation_candidates(Dq);
    res.notes.push_back("not divisible; " + grade_note(nl, grade_functor(nl, false)));
    res.notes.push_back("not divisible; " + grade_note(nr, grade_functor(nr, false)));
  }
  if (prof.frame) {
    applied = true;
    auto [kh, hk] = neg_homomorphisms_frame(Dq);
    require_grade(res, kh, grade_functor(kh, false), true, true, false);
    require_grade(res, hk, grade_functor(hk, false), true, true, false);
  } else if (prof.commutative) {
    auto [kh, hk] = frame_negation_candidates(Dq);
    res.notes.push_back("not a frame; " + grade_note(kh, grade_functor(kh, false)));
    res.notes.push_back("not a frame; " + grade_note(hk, grade_functor(hk, false)));
  }
  for (Element m : prof.cyclic_dualizing) {
    applied = true;
    auto L = linear_negation_functors(Dq, m);
    for (const LaxFunctor* F : {&L.KH, &L.HK, &L.BD, &L.DB}) {
      auto g = grade_functor(*F, false);
      require_grade(res, *F, g, true, true, true);
      if (usable_involution(Q) && is_hermitian(Q, m) && !g.preserves_involution)
        res.fail("preserves-involution", {F->name(), Q.label(m)});
    }
    if (!is_identity_functor(compose_functors(L.KH, L.HK)) || !is_identity_functor(compose_functors(L.HK, L.KH)))
      res.fail("perp-HK-mutually-inverse", {Q.label(m)});
    if (!is_identity_functor(compose_functors(L.BD, L.DB)) || !is_identity_functor(compose_functors(L.DB, L.BD)))
      res.fail("perp-DB-mutually-inverse", {Q.label(m)});
    if (prof.integral)
      for (Element x = 0; x < Q.size(); ++x)
        if (Q.ldd(m, x) != neg_left(Q, x) || Q.ldd(m, x) != neg_right(Q, x))
          res.fail("integral-perp-equals-neg", {Q.label(m), Q.label(x)});
  }
  if (!applied) res.notes.push_back("no hypothesis applies (not divisible, not a frame, not Girard)");
}

inline Element local_index(const Quantale& E, Element in_parent) {
  const auto& o = E.origin();
  for (Element i = 0; i < o.size(); ++i)
    if (o[i] == in_parent) return i;
  return kNoElement;
}

inline void endo_girard(const DerivedQuantaloids& Dq, SuiteResult& res) {
  const Quantale& Q = *Dq.base;
  const bool comm = is_commutative(Q);
  for (Element q = 0; q < Q.size(); ++q) {
    if (!is_cyclic(Q, q)) continue;
    ++res.checked;
    Quantale E = endo_quantale(*Dq.B, q);
    const Element mq = local_index(E, Q.ldd(q, q));
    auto prof = classify(E);
    bool ok = mq != kNoElement && std::find(prof.cyclic_dualizing.begin(), prof.cyclic_dualizing.end(), mq) !=
                                      prof.cyclic_dualizing.end();
    if (!ok) {
      if (comm) res.fail("endo-girard", {Q.label(q)});
      else res.notes.push_back("B(Q)(" + Q.label(q) + "," + Q.label(q) + ") not Girard with q/q");
    }
    // b'↙b = q⧸(b'⇘b) against the scan.
    auto imp = hom_implications(*Dq.B, q, q, q);
    res.absorb("", imp.adjunction);
    for (const auto& [key, val] : imp.left) {
      auto [w, u] = key;
      if (val != Q.ldd(q, Q.rdd(w, u))) {
        if (comm) res.fail("endo-implication-closed-form", {Q.label(q), Q.label(w), Q.label(u)});
        else {
          res.notes.push_back("closed form for implication differs at q=" + Q.label(q));
          break;
        }
      }
    }
  }
  if (!comm) res.notes.push_back("not commutative: only cyclic q were examined, as data");
}

inline void nucleus_duality(const DerivedQuantaloids& Dq, SuiteResult& res) {
  const Quantale& Q = *Dq.base;
  const bool comm = is_commutative(Q);
  for (Element q = 0; q < Q.size(); ++q) {
    if (!is_cyclic(Q, q)) continue;
    ++res.checked;
    auto nuc = check_nucleus(Q, q);
    if (comm) res.absorb("nucleus-", nuc);
    Quantale Qj = nucleus_quotient(Q, q);
    Quantale E = endo_quantale(*Dq.B, q);
    const Element mq = local_index(E, Q.ldd(q, q));
    if (mq == kNoElement || !is_cyclic(E, mq) || !is_dualizing(E, mq)) {
      if (comm) res.fail("endo-girard", {Q.label(q)});
      continue;
    }
    Quantale Ed = dual_quantale(E, mq);
    // identity on underlying Q-elements
    std::vector<Element> map(Qj.size(), kNoElement);
    for (Element i = 0; i < Qj.size(); ++i) {
      Element in_e = local_index(E, Qj.origin()[i]);
      map[i] = in_e == kNoElement ? kNoElement : local_index(Ed, in_e);
    }
    bool total = std::find(map.begin(), map.end(), kNoElement) == map.end();
    bool iso = total && Qj.size() == Ed.size() && check_quantale_isomorphism(Qj, Ed, map).ok();
    if (!iso) {
      if (comm) res.fail("nucleus-quotient-iso-dual", {Q.label(q)});
      else res.notes.push_back("Q_j vs dual differ at q=" + Q.label(q));
    }
    if (comm && !classify(Qj).girard) res.fail("quotient-girard", {Q.label(q)});
  }
}

inline void mv_d1_d3(const DerivedQuantaloids& Dq, SuiteResult& res, std::size_t max_carrier) {
  const Quantale& Q = *Dq.base;
  if (!classify(Q).mv) {
    res.notes.push_back("not an MV-algebra: claim not applicable");
    return;
  }
  for (std::size_t n = 1; n <= max_carrier; ++n)
    for_each_symmetric_matrix(Q, n, [&](const Matrix<Element>& a) {
      ++res.checked;
      auto bad = [&](const Matrix<Element>& m) {
        auto r = check_dissimilarity(Q, m).report;
        return r.violates("D1-strictness") != r.violates("D3-regularity");
      };
      if (bad(a)) {
        auto keep = shrink_carrier(a.size(), [&](const std::vector<std::size_t>& k) { return bad(a.restrict(k)); });
        res.fail("D1-iff-D3", matrix_witness(Q, a.restrict(keep)));
        return false;
      }
      return true;
    });
}

}  // namespace suites

/// Runs one bundled suite. `max_carrier` = 0 picks the size-based default.
inline SuiteResult run_suite(const std::string& name, const DerivedQuantaloids& Dq, std::size_t max_carrier = 0) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult res;
  res.id = name;
  res.quantale = Dq.base->name();
  const std::size_t cap = max_carrier ? max_carrier : representation_carrier_cap(Dq.base->size());
  if (name == "lemma-diagonal-props") suites::diagonal_props(Dq, res);
  else if (name == "lemma-backdiagonal-props") suites::backdiagonal_props(Dq, res);
  else if (name == "composition-agreement") suites::composition_agreement(Dq, res);
  else if (name == "representation-theorems") suites::representation(Dq, res, cap);
  else if (name == "negation-lemmas") suites::negation_lemmas(Dq, res);
  else if (name == "endo-girard") suites::endo_girard(Dq, res);
  else if (name == "nucleus-duality") suites::nucleus_duality(Dq, res);
  else if (name == "mv-d1-d3") suites::mv_d1_d3(Dq, res, cap);
  else throw Error(ErrorCode::UnknownName, "unknown suite '" + name + "'");
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

inline SuiteResult run_suite(const std::string& name, QuantalePtr Q, std::size_t max_carrier = 0) {
  return run_suite(name, derive_all(std::move(Q)), max_carrier);
}

/// Lawvere laws and the interval axioms on seeded samples.
inline SuiteResult run_sampled_suite(const std::string& name, std::uint64_t seed, std::size_t samples) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult res;
  res.id = name;
  res.quantale = "lawvere";
  res.verdict = Verdict::Sampled;
  auto intervals = random_intervals(seed, samples);
  if (name == "lawvere-laws") {
    std::vector<ExtRational> pts;
    for (const auto& iv : intervals) {
      pts.push_back(ExtRational(iv.lo));
      pts.push_back(iv.hi);
    }
    LawvereQuantale L;
    auto r = check_lawvere_laws(L, pts);
    res.checked = with_anchors(L, pts).size();
    res.absorb("", r);
  } else if (name == "interval-axioms") {
    auto S = interval_similarity(intervals);
    auto D = interval_dissimilarity(intervals);
    res.checked = samples * samples * samples;
    res.absorb("similarity-", check_similarity(S));
    res.absorb("dissimilarity-", check_dissimilarity(D).report);
  } else {
    throw Error(ErrorCode::UnknownName, "unknown sampled suite '" + name + "'");
  }
  res.notes.push_back("seed " + std::to_string(seed) + ", " + std::to_string(samples) + " intervals");
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace qdiss
