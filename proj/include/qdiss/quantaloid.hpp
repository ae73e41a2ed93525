#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "properties.hpp"
#include "quantale.hpp"

namespace qdiss {

// ---------------------------------------------------------------------------
// Diagonals and back diagonals over any residuated algebra.

template <class V>
struct Diagonal {
  V src;
  V tgt;
  V value;
};

template <class V>
struct BackDiagonal {
  V src;
  V tgt;
  V value;
};

/// (d⧸p)⊗p = d = q⊗(q⇘d)
template <ResiduatedAlgebra Q>
bool is_diagonal(const Q& Qn, const typename Q::value_type& p, const typename Q::value_type& q,
                 const typename Q::value_type& d) {
  return Qn.tensor(Qn.ldd(d, p), p) == d && Qn.tensor(q, Qn.rdd(q, d)) == d;
}

/// p⧸(b⇘p) = b = (q⧸b)⇘q
template <ResiduatedAlgebra Q>
bool is_back_diagonal(const Q& Qn, const typename Q::value_type& p,
                      const typename Q::value_type& q, const typename Q::value_type& b) {
  return Qn.ldd(p, Qn.rdd(b, p)) == b && Qn.rdd(Qn.ldd(q, b), q) == b;
}

/// e⋄d = (e⧸q)⊗d, where q is the middle object.
template <ResiduatedAlgebra Q>
typename Q::value_type diamond(const Q& Qn, const typename Q::value_type& q,
                               const typename Q::value_type& d, const typename Q::value_type& e) {
  return Qn.tensor(Qn.ldd(e, q), d);
}

/// The second expression for e⋄d: e⊗(q⇘d).
template <ResiduatedAlgebra Q>
typename Q::value_type diamond_alt(const Q& Qn, const typename Q::value_type& q,
                                   const typename Q::value_type& d,
                                   const typename Q::value_type& e) {
  return Qn.tensor(e, Qn.rdd(q, d));
}

/// c•b = b⧸(c⇘q).
template <ResiduatedAlgebra Q>
typename Q::value_type bullet(const Q& Qn, const typename Q::value_type& q,
                              const typename Q::value_type& b, const typename Q::value_type& c) {
  return Qn.ldd(b, Qn.rdd(c, q));
}

/// The second expression for c•b: (q⧸b)⇘c.
template <ResiduatedAlgebra Q>
typename Q::value_type bullet_alt(const Q& Qn, const typename Q::value_type& q,
                                  const typename Q::value_type& b,
                                  const typename Q::value_type& c) {
  return Qn.rdd(Qn.ldd(q, b), c);
}

template <ResiduatedAlgebra Q>
Diagonal<typename Q::value_type> compose_diagonal(const Q& Qn,
                                                  const Diagonal<typename Q::value_type>& d,
                                                  const Diagonal<typename Q::value_type>& e) {
  if (!(d.tgt == e.src))
    throw Error(ErrorCode::TypeMismatch, "diagonal ends at " + Qn.format(d.tgt) +
                                             " but the next starts at " + Qn.format(e.src));
  return {d.src, e.tgt, diamond(Qn, d.tgt, d.value, e.value)};
}

template <ResiduatedAlgebra Q>
BackDiagonal<typename Q::value_type> compose_back_diagonal(
    const Q& Qn, const BackDiagonal<typename Q::value_type>& b,
    const BackDiagonal<typename Q::value_type>& c) {
  if (!(b.tgt == c.src))
    throw Error(ErrorCode::TypeMismatch, "back diagonal ends at " + Qn.format(b.tgt) +
                                             " but the next starts at " + Qn.format(c.src));
  return {b.src, c.tgt, bullet(Qn, b.tgt, b.value, c.value)};
}

inline ElementSubset diagonals(const Quantale& Q, Element p, Element q) {
  ElementSubset out(Q.size());
  for (Element d = 0; d < Q.size(); ++d)
    if (is_diagonal(Q, p, q, d)) out.insert(d);
  return out;
}

inline ElementSubset back_diagonals(const Quantale& Q, Element p, Element q) {
  ElementSubset out(Q.size());
  for (Element b = 0; b < Q.size(); ++b)
    if (is_back_diagonal(Q, p, q, b)) out.insert(b);
  return out;
}

// ---------------------------------------------------------------------------
// Small quantaloids derived from a finite quantale.

enum class QuantaloidKind { D, H, B, K };

inline const char* to_string(QuantaloidKind k) {
  switch (k) {
    case QuantaloidKind::D: return "D";
    case QuantaloidKind::H: return "H";
    case QuantaloidKind::B: return "B";
    case QuantaloidKind::K: return "K";
  }
  return "?";
}

/// Objects are the elements of Q; hom(p, q) is a subset of Q. For B and K
/// the local order is the reverse of Q's, so the local bottom is ⊤ and local
/// joins are Q-meets. Composition is evaluated from the closed forms on
/// demand.
class SmallQuantaloid {
 public:
  static constexpr std::size_t kMaxObjects = 64;

  static SmallQuantaloid build(QuantalePtr Q, QuantaloidKind kind) {
    if (Q->size() > kMaxObjects)
      throw Error(ErrorCode::TooLarge, "quantaloids are built for at most " +
                                           std::to_string(kMaxObjects) + " objects, got " +
                                           std::to_string(Q->size()));
    SmallQuantaloid K;
    K.q_ = std::move(Q);
    K.kind_ = kind;
    const Quantale& Qn = *K.q_;
    const std::size_t n = Qn.size();
    K.member_.assign(n * n * n, 0);
    K.homs_.resize(n * n);
    for (Element p = 0; p < n; ++p)
      for (Element q = 0; q < n; ++q)
        for (Element v = 0; v < n; ++v) {
          bool in = false;
          switch (kind) {
            case QuantaloidKind::D: in = is_diagonal(Qn, p, q, v); break;
            case QuantaloidKind::H: in = Qn.leq(v, Qn.meet(p, q)) && is_diagonal(Qn, p, q, v); break;
            case QuantaloidKind::B: in = is_back_diagonal(Qn, p, q, v); break;
            case QuantaloidKind::K:
              in = Qn.leq(Qn.join(p, q), v) && is_back_diagonal(Qn, p, q, v);
              break;
          }
          if (in) {
            K.member_[(p * n + q) * n + v] = 1;
            K.homs_[p * n + q].push_back(v);
          }
        }
    return K;
  }

  QuantaloidKind kind() const { return kind_; }
  const Quantale& base() const { return *q_; }
  const QuantalePtr& base_ptr() const { return q_; }
  std::size_t object_count() const { return q_->size(); }
  bool reversed() const { return kind_ == QuantaloidKind::B || kind_ == QuantaloidKind::K; }
  std::string name() const { return std::string(to_string(kind_)) + "(" + q_->name() + ")"; }

  const std::vector<Element>& hom(Element p, Element q) const { return homs_[p * object_count() + q]; }
  bool in_hom(Element p, Element q, Element v) const {
    const std::size_t n = object_count();
    return v < n && member_[(p * n + q) * n + v] != 0;
  }

  bool local_leq(Element a, Element b) const { return reversed() ? q_->leq(b, a) : q_->leq(a, b); }
  Element local_join(Element a, Element b) const {
    return reversed() ? q_->meet(a, b) : q_->join(a, b);
  }
  Element local_bottom() const { return reversed() ? q_->top() : q_->bottom(); }

  Element identity(Element q) const { return q; }

  /// v∘u for u: p → q and v: q → r.
  Element compose(Element q, Element u, Element v) const {
    return reversed() ? bullet(*q_, q, u, v) : diamond(*q_, q, u, v);
  }
  Element compose_alt(Element q, Element u, Element v) const {
    return reversed() ? bullet_alt(*q_, q, u, v) : diamond_alt(*q_, q, u, v);
  }

  bool has_involution() const { return involutive_; }
  Element object_involution(Element q) const { return q_->involute(q); }
  Element arrow_involution(Element v) const { return q_->involute(v); }

  std::string label(Element e) const { return q_->label(e); }

  friend SmallQuantaloid lift_involution(const SmallQuantaloid& K);

 private:
  QuantalePtr q_;
  QuantaloidKind kind_ = QuantaloidKind::D;
  std::vector<std::uint8_t> member_;
  std::vector<std::vector<Element>> homs_;
  bool involutive_ = false;
};

using QuantaloidPtr = std::shared_ptr<const SmallQuantaloid>;

inline SmallQuantaloid build_DQ(QuantalePtr Q) { return SmallQuantaloid::build(std::move(Q), QuantaloidKind::D); }
inline SmallQuantaloid build_HQ(QuantalePtr Q) { return SmallQuantaloid::build(std::move(Q), QuantaloidKind::H); }
inline SmallQuantaloid build_BQ(QuantalePtr Q) { return SmallQuantaloid::build(std::move(Q), QuantaloidKind::B); }
inline SmallQuantaloid build_KQ(QuantalePtr Q) { return SmallQuantaloid::build(std::move(Q), QuantaloidKind::K); }

/// Whether Q supplies an involution usable on the derived quantaloids. A
/// commutative quantale without an explicit one uses the identity.
inline bool usable_involution(const Quantale& Q) { return Q.has_involution() || is_commutative(Q); }

/// Object map q ↦ q°, arrow map value ↦ value°.
inline SmallQuantaloid lift_involution(const SmallQuantaloid& K) {
  if (!usable_involution(K.base()))
    throw Error(ErrorCode::NotInvolutive, K.base().name() + " carries no involution");
  SmallQuantaloid out = K;
  out.involutive_ = true;
  return out;
}

/// Objects fixed by the involution.
inline std::vector<Element> hermitian_objects(const SmallQuantaloid& K) {
  std::vector<Element> out;
  for (Element q = 0; q < K.object_count(); ++q)
    if (K.object_involution(q) == q) out.push_back(q);
  return out;
}

/// Hom-set closure, composition typing and agreement of both closed forms,
/// unit and associativity laws, join preservation, and the involution laws
/// when present.
inline ValidationReport validate_quantaloid(const SmallQuantaloid& K) {
  ValidationReport r;
  const std::size_t n = K.object_count();
  auto L = [&](Element e) { return K.label(e); };
  const Element bot = K.local_bottom();
  for (Element p = 0; p < n; ++p)
    for (Element q = 0; q < n; ++q) {
      const auto& h = K.hom(p, q);
      if (!K.in_hom(p, q, bot)) r.add("hom-has-local-bottom", {L(p), L(q)});
      for (Element a : h)
        for (Element b : h)
          if (!K.in_hom(p, q, K.local_join(a, b)))
            r.add("hom-closed-under-joins", {L(p), L(q), L(a), L(b)});
    }
  for (Element q = 0; q < n; ++q)
    if (!K.in_hom(q, q, K.identity(q))) r.add("identity-in-hom", {L(q)});

  for (Element p = 0; p < n; ++p)
    for (Element q = 0; q < n; ++q)
      for (Element u : K.hom(p, q)) {
        if (K.compose(q, u, K.identity(q)) != u) r.add("left-unit", {L(p), L(q), L(u)});
        if (K.compose(p, K.identity(p), u) != u) r.add("right-unit", {L(p), L(q), L(u)});
        for (Element s = 0; s < n; ++s)
          for (Element v : K.hom(q, s)) {
            Element w = K.compose(q, u, v);
            if (w != K.compose_alt(q, u, v))
              r.add("composition-expressions-agree", {L(p), L(q), L(s), L(u), L(v)});
            if (!K.in_hom(p, s, w)) r.add("composition-typed", {L(p), L(q), L(s), L(u), L(v)});
          }
      }

  // associativity: (x∘w)∘u = x∘(w∘u) for u: p→q, w: q→s, x: s→t
  for (Element p = 0; p < n; ++p)
    for (Element q = 0; q < n; ++q)
      for (Element u : K.hom(p, q))
        for (Element s = 0; s < n; ++s)
          for (Element w : K.hom(q, s)) {
            Element wu = K.compose(q, u, w);
            for (Element t = 0; t < n; ++t)
              for (Element x : K.hom(s, t))
                if (K.compose(s, wu, x) != K.compose(q, u, K.compose(s, w, x)))
                  r.add("associative", {L(p), L(q), L(s), L(t), L(u), L(w), L(x)});
          }

  // join preservation in each variable (binary joins plus local bottom)
  for (Element p = 0; p < n; ++p)
    for (Element q = 0; q < n; ++q)
      for (Element s = 0; s < n; ++s) {
        const auto& h1 = K.hom(p, q);
        const auto& h2 = K.hom(q, s);
        for (Element v : h2) {
          if (K.compose(q, bot, v) != bot) r.add("preserves-bottom-right", {L(p), L(q), L(s), L(v)});
          for (Element u1 : h1)
            for (Element u2 : h1)
              if (K.compose(q, K.local_join(u1, u2), v) !=
                  K.local_join(K.compose(q, u1, v), K.compose(q, u2, v)))
                r.add("preserves-joins-right", {L(p), L(q), L(s), L(u1), L(u2), L(v)});
        }
        for (Element u : h1) {
          if (K.compose(q, u, bot) != bot) r.add("preserves-bottom-left", {L(p), L(q), L(s), L(u)});
          for (Element v1 : h2)
            for (Element v2 : h2)
              if (K.compose(q, u, K.local_join(v1, v2)) !=
                  K.local_join(K.compose(q, u, v1), K.compose(q, u, v2)))
                r.add("preserves-joins-left", {L(p), L(q), L(s), L(u), L(v1), L(v2)});
        }
      }

  if (K.has_involution()) {
    for (Element q = 0; q < n; ++q) {
      if (K.object_involution(K.object_involution(q)) != q) r.add("object-involution-self-inverse", {L(q)});
      if (K.arrow_involution(K.identity(q)) != K.identity(K.object_involution(q)))
        r.add("involution-preserves-identity", {L(q)});
    }
    for (Element p = 0; p < n; ++p)
      for (Element q = 0; q < n; ++q) {
        const Element po = K.object_involution(p), qo = K.object_involution(q);
        for (Element u : K.hom(p, q)) {
          Element uo = K.arrow_involution(u);
          if (!K.in_hom(qo, po, uo)) r.add("involution-typed", {L(p), L(q), L(u)});
          if (K.arrow_involution(uo) != u) r.add("involution-self-inverse", {L(u)});
          for (Element u2 : K.hom(p, q))
            if (K.arrow_involution(K.local_join(u, u2)) != K.local_join(uo, K.arrow_involution(u2)))
              r.add("involution-preserves-joins", {L(p), L(q), L(u), L(u2)});
          for (Element s = 0; s < n; ++s)
            for (Element v : K.hom(q, s)) {
              // (v∘u)° = u°∘v° with middle object q°
              Element lhs = K.arrow_involution(K.compose(q, u, v));
              Element rhs = K.compose(qo, K.arrow_involution(v), uo);
              if (lhs != rhs) r.add("involution-contravariant", {L(p), L(q), L(s), L(u), L(v)});
            }
        }
      }
  }
  return r;
}

/// Tables of w↙u (keyed by (w, u)) and v↘w (keyed by (v, w)) for the hom
/// triple p → q → r, computed by sup-scan in the local order, plus the
/// adjunction check v∘u ≤ w ⟺ v ≤ w↙u ⟺ u ≤ v↘w.
struct HomImplications {
  std::map<std::pair<Element, Element>, Element> left;
  std::map<std::pair<Element, Element>, Element> right;
  ValidationReport adjunction;
};

inline HomImplications hom_implications(const SmallQuantaloid& K, Element p, Element q, Element r) {
  HomImplications out;
  const auto& pq = K.hom(p, q);
  const auto& qr = K.hom(q, r);
  const auto& pr = K.hom(p, r);
  for (Element w : pr) {
    for (Element u : pq) {
      Element acc = K.local_bottom();
      for (Element v : qr)
        if (K.local_leq(K.compose(q, u, v), w)) acc = K.local_join(acc, v);
      out.left[{w, u}] = acc;
    }
    for (Element v : qr) {
      Element acc = K.local_bottom();
      for (Element u : pq)
        if (K.local_leq(K.compose(q, u, v), w)) acc = K.local_join(acc, u);
      out.right[{v, w}] = acc;
    }
  }
  for (Element u : pq)
    for (Element v : qr)
      for (Element w : pr) {
        bool a = K.local_leq(K.compose(q, u, v), w);
        bool b = K.local_leq(v, out.left.at({w, u}));
        bool c = K.local_leq(u, out.right.at({v, w}));
        if (a != b || a != c)
          out.adjunction.add("hom-adjunction", {K.label(u), K.label(v), K.label(w)});
      }
  return out;
}

/// hom(q, q) as a quantale under composition with unit 1_q, in the local
/// order. Elements keep their Q-labels; `origin()` maps back into Q.
inline Quantale endo_quantale(const SmallQuantaloid& K, Element q) {
  return derived_quantale(
      K.base(), K.hom(q, q), K.reversed(),
      [&](Element x, Element y) { return K.compose(q, y, x); }, K.identity(q),
      K.name() + "(" + K.label(q) + "," + K.label(q) + ")");
}

}  // namespace qdiss
