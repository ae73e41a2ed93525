#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "functors.hpp"
#include "quantale.hpp"
#include "quantaloid.hpp"

namespace qdiss {

enum class IsoVerdict { Found, None, BudgetExceeded };

inline const char* to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Found: return "found";
    case IsoVerdict::None: return "none-exists";
    case IsoVerdict::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

struct IsoSearchResult {
  IsoVerdict verdict = IsoVerdict::None;
  std::optional<LaxFunctor> iso;
  std::uint64_t nodes = 0;
  std::uint64_t object_bijections = 0;
};

namespace detail {

/// Backtracking over object bijections, then over per-hom order
/// isomorphisms with identities forced and composites propagated.
class IsoSearch {
 public:
  IsoSearch(QuantaloidPtr A, QuantaloidPtr B, std::uint64_t budget)
      : A_(std::move(A)), B_(std::move(B)), budget_(budget), n_(A_->object_count()) {}

  IsoSearchResult run() {
    IsoSearchResult res;
    if (B_->object_count() != n_) {
      res.verdict = IsoVerdict::None;
      return res;
    }
    objects_.assign(n_, kNoElement);
    used_objects_.assign(n_, false);
    sigA_ = signatures(*A_);
    sigB_ = signatures(*B_);
    // Objects with rarer signatures first.
    order_.resize(n_);
    for (Element p = 0; p < n_; ++p) order_[p] = p;
    std::map<Signature, int> freq;
    for (const auto& s : sigA_) ++freq[s];
    std::stable_sort(order_.begin(), order_.end(),
                     [&](Element a, Element b) { return freq[sigA_[a]] < freq[sigA_[b]]; });
    {
      auto sa = sigA_, sb = sigB_;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa != sb) {
        res.verdict = IsoVerdict::None;
        return res;
      }
    }
    bool found = assign_object(0);
    res.nodes = nodes_;
    res.object_bijections = bijections_;
    if (found) {
      res.verdict = IsoVerdict::Found;
      res.iso = result_;
    } else {
      res.verdict = exceeded_ ? IsoVerdict::BudgetExceeded : IsoVerdict::None;
    }
    return res;
  }

 private:
  using Signature = std::vector<std::uint32_t>;

  // Per object: |hom(p,p)| followed by the sorted (|hom(p,q)|, |hom(q,p)|)
  // pairs and the shape of hom(p,p).
  static std::vector<Signature> signatures(const SmallQuantaloid& K) {
    const std::size_t n = K.object_count();
    std::vector<Signature> out(n);
    for (Element p = 0; p < n; ++p) {
      std::vector<std::uint32_t> pairs;
      for (Element q = 0; q < n; ++q)
        pairs.push_back(static_cast<std::uint32_t>(K.hom(p, q).size() * 1024 + K.hom(q, p).size()));
      std::sort(pairs.begin(), pairs.end());
      Signature s{static_cast<std::uint32_t>(K.hom(p, p).size())};
      s.insert(s.end(), pairs.begin(), pairs.end());
      s.push_back(shape(K, p, p));
      out[p] = std::move(s);
    }
    return out;
  }

  // Number of comparable pairs in a hom; invariant under order isomorphism.
  static std::uint32_t shape(const SmallQuantaloid& K, Element p, Element q) {
    std::uint32_t c = 0;
    for (Element a : K.hom(p, q))
      for (Element b : K.hom(p, q)) c += K.local_leq(a, b);
    return c;
  }

  bool tick() {
    if (++nodes_ > budget_) exceeded_ = true;
    return !exceeded_;
  }

  bool assign_object(std::size_t k) {
    if (exceeded_) return false;
    if (k == n_) {
      ++bijections_;
      return search_arrows();
    }
    const Element p = order_[k];
    for (Element fp = 0; fp < n_; ++fp) {
      if (used_objects_[fp] || sigA_[p] != sigB_[fp]) continue;
      if (!tick()) return false;
      bool fits = true;
      objects_[p] = fp;
      for (std::size_t j = 0; j <= k && fits; ++j) {
        Element q = order_[j];
        Element fq = objects_[q];
        fits = A_->hom(p, q).size() == B_->hom(fp, fq).size() &&
               A_->hom(q, p).size() == B_->hom(fq, fp).size() &&
               shape(*A_, p, q) == shape(*B_, fp, fq) && shape(*A_, q, p) == shape(*B_, fq, fp);
      }
      if (fits) {
        used_objects_[fp] = true;
        if (assign_object(k + 1)) return true;
        used_objects_[fp] = false;
      }
      objects_[p] = kNoElement;
      if (exceeded_) return false;
    }
    return false;
  }

  // ---- arrows ----

  std::size_t slot(Element p, Element q) const { return p * n_ + q; }

  bool search_arrows() {
    const std::size_t m = A_->object_count();
    image_.assign(n_ * n_, std::vector<Element>(m, kNoElement));
    used_.assign(n_ * n_, std::vector<bool>(m, false));
    trail_.clear();
    vars_.clear();
    for (Element p = 0; p < n_; ++p)
      for (Element q = 0; q < n_; ++q)
        for (Element v : A_->hom(p, q)) vars_.push_back({p, q, v});
    // Forced values: identities and local bottoms.
    for (Element q = 0; q < n_; ++q)
      if (!assign(q, q, A_->identity(q), B_->identity(objects_[q]))) return undo_all();
    for (Element p = 0; p < n_; ++p)
      for (Element q = 0; q < n_; ++q)
        if (!assign(p, q, A_->local_bottom(), B_->local_bottom())) return undo_all();
    if (!propagate()) return undo_all();
    if (arrow_rec(0)) return true;
    return undo_all();
  }

  bool undo_all() {
    undo_to(0);
    return false;
  }

  struct Var {
    Element p, q, v;
  };

  bool assign(Element p, Element q, Element v, Element fv) {
    auto& img = image_[slot(p, q)];
    if (img[v] != kNoElement) return img[v] == fv;
    const Element fp = objects_[p], fq = objects_[q];
    if (!B_->in_hom(fp, fq, fv)) return false;
    auto& used = used_[slot(p, q)];
    if (used[fv]) return false;
    for (Element w : A_->hom(p, q)) {
      Element fw = img[w];
      if (fw == kNoElement) continue;
      if (A_->local_leq(v, w) != B_->local_leq(fv, fw) || A_->local_leq(w, v) != B_->local_leq(fw, fv))
        return false;
    }
    img[v] = fv;
    used[fv] = true;
    trail_.push_back({p, q, v});
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      Var t = trail_.back();
      trail_.pop_back();
      auto& img = image_[slot(t.p, t.q)];
      used_[slot(t.p, t.q)][img[t.v]] = false;
      img[t.v] = kNoElement;
    }
  }

  // Forces F(v∘u) = Fv∘Fu wherever Fu and Fv are known.
  bool propagate() {
    std::size_t head = 0;
    while (head < trail_.size()) {
      Var t = trail_[head++];
      // t as the first factor u: p → q, then any v: q → r.
      for (Element r = 0; r < n_; ++r)
        for (Element v : A_->hom(t.q, r)) {
          Element fv = image_[slot(t.q, r)][v];
          if (fv == kNoElement) continue;
          Element fu = image_[slot(t.p, t.q)][t.v];
          Element comp = A_->compose(t.q, t.v, v);
          Element fcomp = B_->compose(objects_[t.q], fu, fv);
          if (!assign(t.p, r, comp, fcomp)) return false;
        }
      // t as the second factor v: q → r, after any u: s → p.
      for (Element s = 0; s < n_; ++s)
        for (Element u : A_->hom(s, t.p)) {
          Element fu = image_[slot(s, t.p)][u];
          if (fu == kNoElement) continue;
          Element fv = image_[slot(t.p, t.q)][t.v];
          Element comp = A_->compose(t.p, u, t.v);
          Element fcomp = B_->compose(objects_[t.p], fu, fv);
          if (!assign(s, t.q, comp, fcomp)) return false;
        }
    }
    return true;
  }

  bool arrow_rec(std::size_t i) {
    while (i < vars_.size() && image_[slot(vars_[i].p, vars_[i].q)][vars_[i].v] != kNoElement) ++i;
    if (i == vars_.size()) return finish();
    const Var x = vars_[i];
    const Element fp = objects_[x.p], fq = objects_[x.q];
    for (Element fv : B_->hom(fp, fq)) {
      if (used_[slot(x.p, x.q)][fv]) continue;
      if (!tick()) return false;
      const std::size_t mark = trail_.size();
      if (assign(x.p, x.q, x.v, fv) && propagate() && arrow_rec(i + 1)) return true;
      undo_to(mark);
      if (exceeded_) return false;
    }
    return false;
  }

  bool finish() {
    LaxFunctor F("iso", A_, B_);
    for (Element p = 0; p < n_; ++p) F.set_object(p, objects_[p]);
    for (const Var& x : vars_) F.set_arrow(x.p, x.q, x.v, image_[slot(x.p, x.q)][x.v]);
    if (!grade_functor(F, false).is_isomorphism) return false;
    result_ = std::move(F);
    return true;
  }

  QuantaloidPtr A_, B_;
  std::uint64_t budget_;
  std::size_t n_;
  std::uint64_t nodes_ = 0, bijections_ = 0;
  bool exceeded_ = false;
  std::vector<Signature> sigA_, sigB_;
  std::vector<Element> order_, objects_;
  std::vector<bool> used_objects_;
  std::vector<std::vector<Element>> image_;
  std::vector<std::vector<bool>> used_;
  std::vector<Var> trail_, vars_;
  std::optional<LaxFunctor> result_;
};

}  // namespace detail

/// Searches for a quantaloid isomorphism A → B. `budget` bounds the number
/// of search nodes; running out is reported separately from exhaustion.
inline IsoSearchResult iso_search(QuantaloidPtr A, QuantaloidPtr B, std::uint64_t budget = 10'000'000) {
  return detail::IsoSearch(std::move(A), std::move(B), budget).run();
}

// ---------------------------------------------------------------------------
// Enumeration of small quantales.

namespace detail {

inline std::vector<std::vector<Element>> permutations(std::size_t n) {
  std::vector<Element> p(n);
  for (Element i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<Element>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Bounded lattices on n elements up to isomorphism, as order tables in
/// which i ≤ j implies i ≤ j numerically (0 bottom, n-1 top).
inline std::vector<FiniteLattice> small_lattices(std::size_t n) {
  std::vector<FiniteLattice> out;
  if (n == 0) return out;
  std::vector<std::pair<Element, Element>> free_pairs;
  for (Element i = 1; i + 1 < n; ++i)
    for (Element j = i + 1; j + 1 < n; ++j) free_pairs.push_back({i, j});
  std::set<std::vector<std::uint8_t>> seen;
  const auto perms = permutations(n);
  for (std::uint32_t bits = 0; bits < (1u << free_pairs.size()); ++bits) {
    std::vector<std::uint8_t> leq(n * n, 0);
    for (Element i = 0; i < n; ++i) {
      leq[i * n + i] = 1;
      leq[0 * n + i] = 1;
      leq[i * n + (n - 1)] = 1;
    }
    for (std::size_t k = 0; k < free_pairs.size(); ++k)
      if (bits >> k & 1u) leq[free_pairs[k].first * n + free_pairs[k].second] = 1;
    bool transitive = true;
    for (Element a = 0; a < n && transitive; ++a)
      for (Element b = 0; b < n && transitive; ++b)
        for (Element c = 0; c < n && transitive; ++c)
          if (leq[a * n + b] && leq[b * n + c] && !leq[a * n + c]) transitive = false;
    if (!transitive) continue;
    FiniteLattice L;
    try {
      L = FiniteLattice::from_order(n, leq);
    } catch (const Error&) {
      continue;
    }
    std::vector<std::uint8_t> canon = leq;
    for (const auto& p : perms) {
      std::vector<std::uint8_t> t(n * n);
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) t[p[a] * n + p[b]] = leq[a * n + b];
      canon = std::min(canon, t);
    }
    if (seen.insert(canon).second) out.push_back(std::move(L));
  }
  return out;
}

inline std::vector<std::vector<Element>> lattice_automorphisms(const FiniteLattice& L) {
  std::vector<std::vector<Element>> out;
  for (const auto& p : permutations(L.size())) {
    bool ok = true;
    for (Element a = 0; a < L.size() && ok; ++a)
      for (Element b = 0; b < L.size() && ok; ++b) ok = L.leq(a, b) == L.leq(p[a], p[b]);
    if (ok) out.push_back(p);
  }
  return out;
}

inline std::vector<Element> join_irreducibles(const FiniteLattice& L) {
  std::vector<Element> out;
  for (Element a = 0; a < L.size(); ++a) {
    if (a == L.bottom()) continue;
    Element below = L.bottom();
    for (Element b = 0; b < L.size(); ++b)
      if (L.lt(b, a)) below = L.join(below, b);
    if (below != a) out.push_back(a);
  }
  return out;
}

}  // namespace detail

/// Every quantale on every lattice of size at most `max_size` (≤ 4), one per
/// isomorphism class. A tensor is fixed by its values on pairs of
/// join-irreducibles; each candidate extension is validated.
inline std::vector<Quantale> enumerate_small_quantales(std::size_t max_size) {
  if (max_size > 4) throw Error(ErrorCode::TooLarge, "enumeration is limited to size 4");
  std::vector<Quantale> out;
  for (std::size_t n = 1; n <= max_size; ++n) {
    std::size_t lattice_no = 0;
    for (const FiniteLattice& L : detail::small_lattices(n)) {
      const auto J = detail::join_irreducibles(L);
      const auto autos = detail::lattice_automorphisms(L);
      const std::size_t cells = J.size() * J.size();
      std::size_t combos = 1;
      for (std::size_t c = 0; c < cells; ++c) combos *= n;
      std::set<std::vector<Element>> seen;
      std::size_t count = 0;
      for (std::size_t code = 0; code < combos; ++code) {
        std::vector<Element> onJ(cells);
        std::size_t c = code;
        for (std::size_t k = 0; k < cells; ++k) {
          onJ[k] = static_cast<Element>(c % n);
          c /= n;
        }
        std::vector<Element> t(n * n, L.bottom());
        for (Element x = 0; x < n; ++x)
          for (Element y = 0; y < n; ++y)
            for (std::size_t i = 0; i < J.size(); ++i)
              for (std::size_t j = 0; j < J.size(); ++j)
                if (L.leq(J[i], x) && L.leq(J[j], y)) t[x * n + y] = L.join(t[x * n + y], onJ[i * J.size() + j]);
        // extension must agree with the chosen values
        bool agrees = true;
        for (std::size_t i = 0; i < J.size() && agrees; ++i)
          for (std::size_t j = 0; j < J.size() && agrees; ++j)
            agrees = t[J[i] * n + J[j]] == onJ[i * J.size() + j];
        if (!agrees) continue;
        Element unit = kNoElement;
        for (Element u = 0; u < n && unit == kNoElement; ++u) {
          bool is_unit = true;
          for (Element x = 0; x < n && is_unit; ++x) is_unit = t[u * n + x] == x && t[x * n + u] == x;
          if (is_unit) unit = u;
        }
        if (unit == kNoElement) continue;
        QuantaleData d;
        d.lattice = L;
        d.tensor = t;
        d.unit = unit;
        if (!validate_quantale_data(d).ok()) continue;
        std::vector<Element> canon = t;
        for (const auto& p : autos) {
          std::vector<Element> u(n * n);
          for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y) u[p[x] * n + p[y]] = p[t[x * n + y]];
          canon = std::min(canon, u);
        }
        if (!seen.insert(canon).second) continue;
        d.name = "q" + std::to_string(n) + "." + std::to_string(lattice_no) + "." + std::to_string(count++);
        for (Element e = 0; e < n; ++e)
          d.labels.push_back(e == L.bottom() ? "bot" : e == L.top() ? "top" : "e" + std::to_string(e));
        out.push_back(compute_residuals(std::move(d)));
      }
      ++lattice_no;
    }
  }
  return out;
}

}  // namespace qdiss
