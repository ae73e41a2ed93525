#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "enriched.hpp"
#include "properties.hpp"
#include "quantaloid.hpp"

namespace qdiss {

/// Extensional map between two small quantaloids. `arrow(p, q, v)` is the
/// image of v ∈ hom(p, q); values outside the source hom are unmapped.
class LaxFunctor {
 public:
  LaxFunctor() = default;
  LaxFunctor(std::string name, QuantaloidPtr source, QuantaloidPtr target)
      : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)) {
    const std::size_t n = source_->object_count();
    objects_.assign(n, kNoElement);
    arrows_.assign(n * n * n, kNoElement);
  }

  /// Populates both maps from formulas; arrows are only evaluated on the
  /// source hom-sets.
  static LaxFunctor from_formula(std::string name, QuantaloidPtr source, QuantaloidPtr target,
                                 const std::function<Element(Element)>& on_objects,
                                 const std::function<Element(Element, Element, Element)>& on_arrows) {
    LaxFunctor F(std::move(name), std::move(source), std::move(target));
    const std::size_t n = F.source_->object_count();
    for (Element p = 0; p < n; ++p) F.objects_[p] = on_objects(p);
    for (Element p = 0; p < n; ++p)
      for (Element q = 0; q < n; ++q)
        for (Element v : F.source_->hom(p, q)) F.set_arrow(p, q, v, on_arrows(p, q, v));
    return F;
  }

  const std::string& name() const { return name_; }
  const SmallQuantaloid& source() const { return *source_; }
  const SmallQuantaloid& target() const { return *target_; }
  const QuantaloidPtr& source_ptr() const { return source_; }
  const QuantaloidPtr& target_ptr() const { return target_; }

  Element object(Element p) const { return objects_[p]; }
  Element arrow(Element p, Element q, Element v) const {
    const std::size_t n = source_->object_count();
    return arrows_[(p * n + q) * n + v];
  }
  void set_object(Element p, Element fp) { objects_[p] = fp; }
  void set_arrow(Element p, Element q, Element v, Element fv) {
    const std::size_t n = source_->object_count();
    arrows_[(p * n + q) * n + v] = fv;
  }

  const std::vector<Element>& object_map() const { return objects_; }

 private:
  std::string name_;
  QuantaloidPtr source_;
  QuantaloidPtr target_;
  std::vector<Element> objects_;
  std::vector<Element> arrows_;
};

struct FunctorGrade {
  bool well_typed = true;
  bool is_lax = false;
  bool is_homomorphism = false;
  bool is_isomorphism = false;
  bool preserves_involution = false;
  std::map<std::string, std::vector<std::string>> witnesses;

  std::string str() const {
    std::string s = std::string("lax=") + (is_lax ? "yes" : "no") +
                    " homomorphism=" + (is_homomorphism ? "yes" : "no") +
                    " isomorphism=" + (is_isomorphism ? "yes" : "no") +
                    " involution=" + (preserves_involution ? "yes" : "no");
    for (const auto& [k, w] : witnesses) {
      s += "\n  " + k + ":";
      for (const auto& x : w) s += " " + x;
    }
    return s;
  }
};

/// Decides every flag exhaustively. With `strict`, an arrow landing outside
/// its target hom throws IllTyped; otherwise it is recorded and every flag
/// is false.
inline FunctorGrade grade_functor(const LaxFunctor& F, bool strict = true) {
  FunctorGrade g;
  const SmallQuantaloid& A = F.source();
  const SmallQuantaloid& B = F.target();
  const std::size_t n = A.object_count(), m = B.object_count();
  auto LA = [&](Element e) { return A.label(e); };
  auto LB = [&](Element e) { return B.label(e); };
  auto note = [&](const std::string& k, std::vector<std::string> w) {
    if (!g.witnesses.count(k)) g.witnesses[k] = std::move(w);
  };

  for (Element p = 0; p < n; ++p)
    if (F.object(p) >= m) {
      if (strict) throw Error(ErrorCode::IllTyped, "object " + LA(p) + " has no image");
      g.well_typed = false;
      note("typed", {LA(p)});
      return g;
    }
  for (Element p = 0; p < n; ++p)
    for (Element q = 0; q < n; ++q)
      for (Element v : A.hom(p, q)) {
        Element fv = F.arrow(p, q, v);
        if (!B.in_hom(F.object(p), F.object(q), fv)) {
          std::vector<std::string> w{LA(p), LA(q), LA(v), fv < m ? LB(fv) : "unmapped"};
          if (strict)
            throw Error(ErrorCode::IllTyped, "arrow " + LA(v) + ": " + LA(p) + " -> " + LA(q) +
                                                 " maps to " + w[3] + " outside hom(" +
                                                 LB(F.object(p)) + "," + LB(F.object(q)) + ")");
          g.well_typed = false;
          note("typed", std::move(w));
        }
      }
  if (!g.well_typed) return g;

  bool monotone = true, unital = true, lax = true;
  bool strict_units = true, strict_comp = true, joins = true;
  for (Element p = 0; p < n; ++p)
    for (Element q = 0; q < n; ++q) {
      const auto& h = A.hom(p, q);
      if (F.arrow(p, q, A.local_bottom()) != B.local_bottom()) {
        joins = false;
        note("preserves-bottom", {LA(p), LA(q)});
      }
      for (Element u : h)
        for (Element u2 : h) {
          if (A.local_leq(u, u2) && !B.local_leq(F.arrow(p, q, u), F.arrow(p, q, u2))) {
            monotone = false;
            note("monotone", {LA(p), LA(q), LA(u), LA(u2)});
          }
          Element j = A.local_join(u, u2);
          if (F.arrow(p, q, j) != B.local_join(F.arrow(p, q, u), F.arrow(p, q, u2))) {
            joins = false;
            note("preserves-joins", {LA(p), LA(q), LA(u), LA(u2)});
          }
        }
    }
  for (Element q = 0; q < n; ++q) {
    Element f1 = F.arrow(q, q, A.identity(q));
    Element one = B.identity(F.object(q));
    if (!B.local_leq(one, f1)) {
      unital = false;
      note("unit", {LA(q)});
    }
    if (f1 != one) {
      strict_units = false;
      note("preserves-identity", {LA(q)});
    }
  }
  for (Element p = 0; p < n; ++p)
    for (Element q = 0; q < n; ++q)
      for (Element u : A.hom(p, q))
        for (Element r = 0; r < n; ++r)
          for (Element v : A.hom(q, r)) {
            Element lhs = B.compose(F.object(q), F.arrow(p, q, u), F.arrow(q, r, v));
            Element rhs = F.arrow(p, r, A.compose(q, u, v));
            if (!B.local_leq(lhs, rhs)) {
              lax = false;
              note("lax-composition", {LA(p), LA(q), LA(r), LA(u), LA(v)});
            }
            if (lhs != rhs) {
              strict_comp = false;
              note("preserves-composition", {LA(p), LA(q), LA(r), LA(u), LA(v)});
            }
          }
  g.is_lax = monotone && unital && lax;
  g.is_homomorphism = g.is_lax && strict_units && strict_comp && joins;

  bool bijective = n == m;
  if (bijective) {
    std::vector<bool> hit(m, false);
    for (Element p = 0; p < n && bijective; ++p) {
      if (hit[F.object(p)]) {
        bijective = false;
        note("bijective-objects", {LA(p)});
      }
      hit[F.object(p)] = true;
    }
  } else {
    note("bijective-objects", {std::to_string(n), std::to_string(m)});
  }
  for (Element p = 0; p < n && bijective; ++p)
    for (Element q = 0; q < n && bijective; ++q) {
      const auto& h = A.hom(p, q);
      const auto& th = B.hom(F.object(p), F.object(q));
      std::vector<bool> hit(m, false);
      std::size_t distinct = 0;
      for (Element u : h) {
        Element fu = F.arrow(p, q, u);
        if (!hit[fu]) ++distinct;
        hit[fu] = true;
      }
      if (distinct != h.size() || h.size() != th.size()) {
        bijective = false;
        note("bijective-arrows", {LA(p), LA(q)});
      }
    }
  g.is_isomorphism = g.is_homomorphism && bijective;

  if (A.has_involution() && B.has_involution()) {
    bool inv = true;
    for (Element p = 0; p < n; ++p) {
      if (F.object(A.object_involution(p)) != B.object_involution(F.object(p))) {
        inv = false;
        note("involution-objects", {LA(p)});
      }
      for (Element q = 0; q < n; ++q)
        for (Element u : A.hom(p, q)) {
          Element lhs = F.arrow(A.object_involution(q), A.object_involution(p), A.arrow_involution(u));
          if (lhs != B.arrow_involution(F.arrow(p, q, u))) {
            inv = false;
            note("involution-arrows", {LA(p), LA(q), LA(u)});
          }
        }
    }
    g.preserves_involution = inv;
  } else {
    note("involution-objects", {"no involution"});
  }
  return g;
}

inline LaxFunctor identity_functor(QuantaloidPtr K) {
  return LaxFunctor::from_formula(
      "id", K, K, [](Element p) { return p; }, [](Element, Element, Element v) { return v; });
}

/// G∘F, defined on the arrows of F's source.
inline LaxFunctor compose_functors(const LaxFunctor& F, const LaxFunctor& G) {
  return LaxFunctor::from_formula(
      G.name() + "." + F.name(), F.source_ptr(), G.target_ptr(),
      [&](Element p) { return G.object(F.object(p)); },
      [&](Element p, Element q, Element v) {
        return G.arrow(F.object(p), F.object(q), F.arrow(p, q, v));
      });
}

/// Object- and arrow-wise equality on the source hom-sets.
inline bool same_functor(const LaxFunctor& F, const LaxFunctor& G) {
  const std::size_t n = F.source().object_count();
  if (G.source().object_count() != n) return false;
  for (Element p = 0; p < n; ++p) {
    if (F.object(p) != G.object(p)) return false;
    for (Element q = 0; q < n; ++q)
      for (Element v : F.source().hom(p, q))
        if (F.arrow(p, q, v) != G.arrow(p, q, v)) return false;
  }
  return true;
}

inline bool is_identity_functor(const LaxFunctor& F) {
  const std::size_t n = F.source().object_count();
  for (Element p = 0; p < n; ++p) {
    if (F.object(p) != p) return false;
    for (Element q = 0; q < n; ++q)
      for (Element v : F.source().hom(p, q))
        if (F.arrow(p, q, v) != v) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Derived quantaloids of one base, shared by the functor builders.

struct DerivedQuantaloids {
  QuantalePtr base;
  QuantaloidPtr D, H, B, K;

  const QuantaloidPtr& get(QuantaloidKind k) const {
    switch (k) {
      case QuantaloidKind::D: return D;
      case QuantaloidKind::H: return H;
      case QuantaloidKind::B: return B;
      case QuantaloidKind::K: return K;
    }
    return D;
  }
};

/// Builds all four, lifting the involution when the base has a usable one.
inline DerivedQuantaloids derive_all(QuantalePtr Q) {
  const bool inv = usable_involution(*Q);
  auto mk = [&](QuantaloidKind k) {
    auto K = SmallQuantaloid::build(Q, k);
    return std::make_shared<const SmallQuantaloid>(inv ? lift_involution(K) : K);
  };
  return {Q, mk(QuantaloidKind::D), mk(QuantaloidKind::H), mk(QuantaloidKind::B), mk(QuantaloidKind::K)};
}

/// x ↦ f(x) on objects and arrows alike.
inline LaxFunctor pointwise_functor(std::string name, QuantaloidPtr source, QuantaloidPtr target,
                                    const std::function<Element(Element)>& f) {
  return LaxFunctor::from_formula(
      std::move(name), std::move(source), std::move(target), f,
      [&](Element, Element, Element v) { return f(v); });
}

/// ¬_l and ¬_r as maps K(Q) → H(Q), built whatever Q is.
inline std::pair<LaxFunctor, LaxFunctor> negation_candidates(const DerivedQuantaloids& Dq) {
  const Quantale& Q = *Dq.base;
  return {pointwise_functor("neg_l", Dq.K, Dq.H, [&](Element x) { return neg_left(Q, x); }),
          pointwise_functor("neg_r", Dq.K, Dq.H, [&](Element x) { return neg_right(Q, x); })};
}

inline std::pair<LaxFunctor, LaxFunctor> neg_functors_divisible(const DerivedQuantaloids& Dq) {
  if (!is_divisible(*Dq.base)) throw Error(ErrorCode::NotDivisible, Dq.base->name() + " is not divisible");
  return negation_candidates(Dq);
}

/// ¬ : K(Q) → H(Q) and ¬ : H(Q) → K(Q), built whatever Q is.
inline std::pair<LaxFunctor, LaxFunctor> frame_negation_candidates(const DerivedQuantaloids& Dq) {
  const Quantale& Q = *Dq.base;
  auto neg = [&](Element x) { return neg_right(Q, x); };
  return {pointwise_functor("neg_KH", Dq.K, Dq.H, neg), pointwise_functor("neg_HK", Dq.H, Dq.K, neg)};
}

inline std::pair<LaxFunctor, LaxFunctor> neg_homomorphisms_frame(const DerivedQuantaloids& Dq) {
  if (!is_frame(*Dq.base)) throw Error(ErrorCode::NotAFrame, Dq.base->name() + " is not a frame");
  return frame_negation_candidates(Dq);
}

struct LinearNegationFunctors {
  LaxFunctor KH, HK, BD, DB;
};

/// x ↦ m⧸x between K and H, and between B and D.
inline LinearNegationFunctors linear_negation_functors(const DerivedQuantaloids& Dq, Element m) {
  const Quantale& Q = *Dq.base;
  if (!is_cyclic(Q, m) || !is_dualizing(Q, m))
    throw Error(ErrorCode::NotDualizing, Q.label(m) + " is not a cyclic dualizing element");
  auto perp = [&](Element x) { return Q.ldd(m, x); };
  return {pointwise_functor("perp_KH", Dq.K, Dq.H, perp), pointwise_functor("perp_HK", Dq.H, Dq.K, perp),
          pointwise_functor("perp_BD", Dq.B, Dq.D, perp), pointwise_functor("perp_DB", Dq.D, Dq.B, perp)};
}

/// (X, F|−|, Fα) over F's target.
inline QCategory transport_category(const LaxFunctor& F, const QCategory& A) {
  if (A.base.get() != &F.source() && !(A.base->kind() == F.source().kind() &&
                                       A.base->base().data().tensor == F.source().base().data().tensor))
    throw Error(ErrorCode::TypeMismatch, "category is not enriched in the functor's source");
  auto g = grade_functor(F);
  if (!g.is_lax) throw Error(ErrorCode::NotLax, F.name() + " is not a lax functor");
  QCategory out{F.target_ptr(), A.carrier, {}, A.hom};
  for (Element t : A.types) out.types.push_back(F.object(t));
  for (std::size_t x = 0; x < A.size(); ++x)
    for (std::size_t y = 0; y < A.size(); ++y)
      out.hom(x, y) = F.arrow(A.types[x], A.types[y], A.hom(x, y));
  return out;
}

}  // namespace qdiss
