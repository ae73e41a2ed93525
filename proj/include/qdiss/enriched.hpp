#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "analytic.hpp"
#include "properties.hpp"
#include "quantaloid.hpp"

namespace qdiss {

/// Carrier labels plus a Q-valued matrix over them.
template <class Q>
struct ValuedSpace {
  std::shared_ptr<const Q> base;
  std::vector<std::string> carrier;
  Matrix<typename Q::value_type> values;

  std::size_t size() const { return values.size(); }
  std::string point(std::size_t i) const {
    return i < carrier.size() ? carrier[i] : std::to_string(i);
  }
};

template <class Q>
struct SimilaritySpace : ValuedSpace<Q> {};

template <class Q>
struct DissimilaritySpace : ValuedSpace<Q> {};

enum class SimilarityMode { Full, Divisible, Frame };

inline const char* to_string(SimilarityMode m) {
  switch (m) {
    case SimilarityMode::Full: return "full";
    case SimilarityMode::Divisible: return "divisible";
    case SimilarityMode::Frame: return "frame";
  }
  return "?";
}

// Precondition probes; closed-form carriers declare their properties.
inline bool precondition_divisible(const Quantale& Q) { return is_divisible(Q); }
inline bool precondition_frame(const Quantale& Q) { return is_frame(Q); }
inline void require_involution(const Quantale& Q) {
  if (!usable_involution(Q))
    throw Error(ErrorCode::NotInvolutive, Q.name() + " is neither involutive nor commutative");
}
inline bool precondition_divisible(const LawvereQuantale&) { return LawvereQuantale::known_divisible; }
inline bool precondition_frame(const LawvereQuantale&) { return LawvereQuantale::known_frame; }
inline void require_involution(const LawvereQuantale&) {}

namespace detail {

template <class Q>
Scope scope_of() {
  return Q::exhaustive ? Scope::Exhaustive : Scope::Sampled;
}

template <class Q>
std::vector<std::string> pt(const std::vector<std::string>& names, std::initializer_list<std::size_t> idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(i < names.size() ? names[i] : std::to_string(i));
  return out;
}

}  // namespace detail

/// Axioms S1–S4 (full), S1, S2, S4 (divisible Q), or plain symmetry plus
/// meet-transitivity (frames). Tested on every triple of the carrier.
template <ResiduatedAlgebra Q>
ValidationReport check_similarity(const Q& Qn, const Matrix<typename Q::value_type>& a,
                                  SimilarityMode mode = SimilarityMode::Full,
                                  const std::vector<std::string>& names = {}) {
  if (mode == SimilarityMode::Divisible && !precondition_divisible(Qn))
    throw Error(ErrorCode::ModePreconditionFailed, "divisible mode on a non-divisible quantale");
  if (mode == SimilarityMode::Frame && !precondition_frame(Qn))
    throw Error(ErrorCode::ModePreconditionFailed, "frame mode on a quantale that is not a frame");
  require_involution(Qn);
  ValidationReport r;
  r.scope = detail::scope_of<Q>();
  const std::size_t n = a.size();
  auto P = [&](std::initializer_list<std::size_t> idx) { return detail::pt<Q>(names, idx); };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& axy = a(x, y);
      if (mode == SimilarityMode::Frame) {
        if (!(axy == a(y, x))) r.add("symmetry", P({x, y}));
      } else {
        if (!Qn.leq(axy, Qn.meet(a(x, x), a(y, y)))) r.add("S1-strictness", P({x, y}));
        if (!(axy == Qn.involute(a(y, x)))) r.add("S2-symmetry", P({x, y}));
        if (mode == SimilarityMode::Full && !(axy == Qn.tensor(Qn.ldd(axy, a(x, x)), a(x, x))))
          r.add("S3-divisibility", P({x, y}));
      }
      for (std::size_t z = 0; z < n; ++z) {
        if (mode == SimilarityMode::Frame) {
          if (!Qn.leq(Qn.meet(a(y, z), axy), a(x, z))) r.add("transitivity", P({x, y, z}));
        } else if (!Qn.leq(Qn.tensor(Qn.ldd(a(y, z), a(y, y)), axy), a(x, z))) {
          r.add("S4-transitivity", P({x, y, z}));
        }
      }
    }
  return r;
}

template <class Q>
ValidationReport check_similarity(const SimilaritySpace<Q>& S, SimilarityMode mode = SimilarityMode::Full) {
  return check_similarity(*S.base, S.values, mode, S.carrier);
}

/// Axioms D1–D4; `rigid` is set when every diagonal entry is ⊥.
struct DissimilarityReport {
  ValidationReport report;
  bool rigid = false;
  bool ok() const { return report.ok(); }
};

template <ResiduatedAlgebra Q>
DissimilarityReport check_dissimilarity(const Q& Qn, const Matrix<typename Q::value_type>& b,
                                        const std::vector<std::string>& names = {}) {
  require_involution(Qn);
  DissimilarityReport out;
  ValidationReport& r = out.report;
  r.scope = detail::scope_of<Q>();
  const std::size_t n = b.size();
  auto P = [&](std::initializer_list<std::size_t> idx) { return detail::pt<Q>(names, idx); };
  out.rigid = true;
  for (std::size_t x = 0; x < n; ++x) {
    if (!(b(x, x) == Qn.bottom())) out.rigid = false;
    for (std::size_t y = 0; y < n; ++y) {
      const auto& bxy = b(x, y);
      if (!Qn.leq(Qn.join(b(x, x), b(y, y)), bxy)) r.add("D1-strictness", P({x, y}));
      if (!(bxy == Qn.involute(b(y, x)))) r.add("D2-symmetry", P({x, y}));
      if (!(bxy == Qn.ldd(b(x, x), Qn.rdd(bxy, b(x, x))))) r.add("D3-regularity", P({x, y}));
      for (std::size_t z = 0; z < n; ++z)
        if (!Qn.leq(b(x, z), Qn.ldd(bxy, Qn.rdd(b(y, z), b(y, y)))))
          r.add("D4-contrapositive-transitivity", P({x, y, z}));
    }
  }
  return out;
}

template <class Q>
DissimilarityReport check_dissimilarity(const DissimilaritySpace<Q>& D) {
  return check_dissimilarity(*D.base, D.values, D.carrier);
}

// ---------------------------------------------------------------------------
// Apartness models over a frame.

struct ApartnessModel {
  QuantalePtr base;
  std::vector<std::string> carrier;
  std::vector<Element> extent;
  Matrix<Element> gamma;
};

/// γ ≤ E∧E, γ(x,x) = ⊥, symmetry, and γ(x,z)∧E(y) ≤ γ(x,y)∨γ(z,y).
inline ValidationReport check_apartness(const Quantale& W, const std::vector<Element>& E,
                                        const Matrix<Element>& g,
                                        const std::vector<std::string>& names = {}) {
  if (!is_frame(W)) throw Error(ErrorCode::NotAFrame, W.name() + " is not a frame");
  if (E.size() != g.size()) throw Error(ErrorCode::DimensionMismatch, "extent and matrix sizes differ");
  ValidationReport r;
  const std::size_t n = g.size();
  auto P = [&](std::initializer_list<std::size_t> idx) { return detail::pt<Quantale>(names, idx); };
  for (std::size_t x = 0; x < n; ++x) {
    if (g(x, x) != W.bottom()) r.add("irreflexive", P({x}));
    for (std::size_t y = 0; y < n; ++y) {
      if (!W.leq(g(x, y), W.meet(E[x], E[y]))) r.add("bounded-by-extent", P({x, y}));
      if (g(x, y) != g(y, x)) r.add("symmetric", P({x, y}));
      for (std::size_t z = 0; z < n; ++z)
        if (!W.leq(W.meet(g(x, z), E[y]), W.join(g(x, y), g(z, y))))
          r.add("cotransitive", P({x, y, z}));
    }
  }
  return r;
}

inline ValidationReport check_apartness(const ApartnessModel& A) {
  return check_apartness(*A.base, A.extent, A.gamma, A.carrier);
}

// ---------------------------------------------------------------------------
// Quantaloid-enriched categories.

/// Hom values are raw Q-elements; membership in base.hom(|x|, |y|) is a
/// checked invariant rather than a constructor restriction.
struct QCategory {
  QuantaloidPtr base;
  std::vector<std::string> carrier;
  std::vector<Element> types;
  Matrix<Element> hom;

  std::size_t size() const { return hom.size(); }
  std::string point(std::size_t i) const {
    return i < carrier.size() ? carrier[i] : std::to_string(i);
  }
};

/// Typing of every hom, 1_{|x|} ≤ hom(x,x), hom(y,z)∘hom(x,y) ≤ hom(x,z).
inline ValidationReport check_qcategory(const SmallQuantaloid& K, const std::vector<Element>& types,
                                        const Matrix<Element>& a,
                                        const std::vector<std::string>& names = {}) {
  if (types.size() != a.size()) throw Error(ErrorCode::DimensionMismatch, "types and matrix sizes differ");
  ValidationReport r;
  const std::size_t n = a.size();
  auto P = [&](std::initializer_list<std::size_t> idx) { return detail::pt<Quantale>(names, idx); };
  bool typed = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (!K.in_hom(types[x], types[y], a(x, y))) {
        r.add("typed", P({x, y}));
        typed = false;
      }
  for (std::size_t x = 0; x < n; ++x)
    if (!K.local_leq(K.identity(types[x]), a(x, x))) r.add("reflexive", P({x}));
  if (!typed) return r;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (!K.local_leq(K.compose(types[y], a(x, y), a(y, z)), a(x, z)))
          r.add("transitive", P({x, y, z}));
  return r;
}

inline ValidationReport check_qcategory(const QCategory& C) {
  return check_qcategory(*C.base, C.types, C.hom, C.carrier);
}

/// hom(x,y) = hom(y,x)° under the lifted involution; also reports any type
/// that is not hermitian, which symmetry forces.
inline ValidationReport check_symmetric(const SmallQuantaloid& K, const std::vector<Element>& types,
                                        const Matrix<Element>& a,
                                        const std::vector<std::string>& names = {}) {
  if (!K.has_involution()) throw Error(ErrorCode::NotInvolutive, K.name() + " has no involution");
  ValidationReport r;
  auto P = [&](std::initializer_list<std::size_t> idx) { return detail::pt<Quantale>(names, idx); };
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (K.object_involution(types[x]) != types[x]) r.add("hermitian-type", P({x}));
    for (std::size_t y = 0; y < a.size(); ++y)
      if (a(x, y) != K.arrow_involution(a(y, x))) r.add("symmetric", P({x, y}));
  }
  return r;
}

inline ValidationReport check_symmetric(const QCategory& C) {
  return check_symmetric(*C.base, C.types, C.hom, C.carrier);
}

/// Types |x| = α(x,x) over H(Q).
inline QCategory similarity_to_category(const SimilaritySpace<Quantale>& S, QuantaloidPtr H) {
  if (!H || H->kind() != QuantaloidKind::H)
    throw Error(ErrorCode::TypeMismatch, "similarities are enriched in H(Q)");
  auto rep = check_similarity(S);
  if (!rep.ok()) throw Error(ErrorCode::NotASimilarity, rep.violations.front().str());
  QCategory C{std::move(H), S.carrier, {}, S.values};
  for (std::size_t x = 0; x < S.size(); ++x) C.types.push_back(S.values(x, x));
  return C;
}

/// Types |x| = β(x,x) over K(Q).
inline QCategory dissimilarity_to_category(const DissimilaritySpace<Quantale>& D, QuantaloidPtr K) {
  if (!K || K->kind() != QuantaloidKind::K)
    throw Error(ErrorCode::TypeMismatch, "dissimilarities are enriched in K(Q)");
  auto rep = check_dissimilarity(D);
  if (!rep.ok()) throw Error(ErrorCode::NotADissimilarity, rep.report.violations.front().str());
  QCategory C{std::move(K), D.carrier, {}, D.values};
  for (std::size_t x = 0; x < D.size(); ++x) C.types.push_back(D.values(x, x));
  return C;
}

inline SimilaritySpace<Quantale> category_to_similarity(const QCategory& C) {
  SimilaritySpace<Quantale> S;
  S.base = C.base->base_ptr();
  S.carrier = C.carrier;
  S.values = C.hom;
  return S;
}

inline DissimilaritySpace<Quantale> category_to_dissimilarity(const QCategory& C) {
  DissimilaritySpace<Quantale> D;
  D.base = C.base->base_ptr();
  D.carrier = C.carrier;
  D.values = C.hom;
  return D;
}

/// Searches for a type map making `a` a symmetric K-category. Types of x
/// are constrained by the diagonal entry first, then checked globally.
inline std::optional<std::vector<Element>> find_symmetric_category_types(const SmallQuantaloid& K,
                                                                         const Matrix<Element>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Element>> candidates(n);
  for (std::size_t x = 0; x < n; ++x)
    for (Element t = 0; t < K.object_count(); ++t)
      if (K.in_hom(t, t, a(x, x)) && K.local_leq(K.identity(t), a(x, x)) &&
          (!K.has_involution() || K.object_involution(t) == t))
        candidates[x].push_back(t);
  std::vector<Element> types(n);
  auto rec = [&](auto&& self, std::size_t x) -> bool {
    if (x == n) {
      if (!check_qcategory(K, types, a).ok()) return false;
      return !K.has_involution() || check_symmetric(K, types, a).ok();
    }
    for (Element t : candidates[x]) {
      types[x] = t;
      bool fits = true;
      for (std::size_t y = 0; y <= x && fits; ++y)
        fits = K.in_hom(types[y], t, a(y, x)) && K.in_hom(t, types[y], a(x, y));
      if (fits && self(self, x + 1)) return true;
    }
    return false;
  };
  if (rec(rec, 0)) return types;
  return std::nullopt;
}

/// |x| = |f x| and A(x,y) ≤ B(fx, fy) in the local order.
inline ValidationReport check_qfunctor_report(const std::vector<std::size_t>& f, const QCategory& A,
                                              const QCategory& B) {
  if (f.size() != A.size()) throw Error(ErrorCode::DimensionMismatch, "map length differs from carrier");
  ValidationReport r;
  for (std::size_t x = 0; x < A.size(); ++x) {
    if (f[x] >= B.size()) {
      r.add("in-range", {A.point(x)});
      return r;
    }
    if (A.types[x] != B.types[f[x]]) r.add("type-preserving", {A.point(x), B.point(f[x])});
  }
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t y = 0; y < A.size(); ++y)
      if (!A.base->local_leq(A.hom(x, y), B.hom(f[x], f[y])))
        r.add("monotone", {A.point(x), A.point(y)});
  return r;
}

inline bool check_qfunctor(const std::vector<std::size_t>& f, const QCategory& A, const QCategory& B) {
  return check_qfunctor_report(f, A, B).ok();
}

// ---------------------------------------------------------------------------
// Boolean-valued apartness ⇄ similarity.

inline bool is_boolean_algebra(const Quantale& W) {
  if (!is_frame(W)) return false;
  for (Element q = 0; q < W.size(); ++q)
    if (neg_right(W, neg_right(W, q)) != q) return false;
  return true;
}

/// α(x,y) = E(x) ∧ E(y) ∧ ¬γ(x,y).
inline Matrix<Element> apartness_to_similarity(const Quantale& B, const std::vector<Element>& E,
                                               const Matrix<Element>& g) {
  if (!is_boolean_algebra(B)) throw Error(ErrorCode::NotBoolean, B.name() + " is not Boolean");
  Matrix<Element> a(g.size(), B.bottom());
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g.size(); ++y)
      a(x, y) = B.meet(B.meet(E[x], E[y]), neg_right(B, g(x, y)));
  return a;
}

/// E(x) = α(x,x) and γ(x,y) = E(x) ∧ E(y) ∧ ¬α(x,y).
inline std::pair<std::vector<Element>, Matrix<Element>> similarity_to_apartness(
    const Quantale& B, const Matrix<Element>& a) {
  if (!is_boolean_algebra(B)) throw Error(ErrorCode::NotBoolean, B.name() + " is not Boolean");
  std::vector<Element> E(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) E[x] = a(x, x);
  Matrix<Element> g(a.size(), B.bottom());
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y)
      g(x, y) = B.meet(B.meet(E[x], E[y]), neg_right(B, a(x, y)));
  return {E, g};
}

/// α(x,y) and γ(x,y) are complements inside ↓(E(x) ∧ E(y)).
inline ValidationReport check_complement_in_downset(const Quantale& B, const std::vector<Element>& E,
                                                    const Matrix<Element>& a,
                                                    const Matrix<Element>& g) {
  ValidationReport r;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < a.size(); ++y) {
      Element e = B.meet(E[x], E[y]);
      if (!B.leq(a(x, y), e) || !B.leq(g(x, y), e)) r.add("inside-downset", {std::to_string(x), std::to_string(y)});
      if (B.join(a(x, y), g(x, y)) != e || B.meet(a(x, y), g(x, y)) != B.bottom())
        r.add("complement", {std::to_string(x), std::to_string(y)});
    }
  return r;
}

}  // namespace qdiss
