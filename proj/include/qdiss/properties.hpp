#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quantale.hpp"

namespace qdiss {

/// Structural classification of a finite quantale. Every false flag has an
/// entry in `witnesses`.
struct PropertyProfile {
  bool commutative = false;
  bool integral = false;
  bool divisible = false;
  bool idempotent = false;
  bool frame = false;
  bool mv = false;
  bool girard = false;
  bool involutive = false;
  std::map<std::string, std::vector<std::string>> witnesses;
  /// All cyclic dualizing elements, in element order.
  std::vector<Element> cyclic_dualizing;

  std::optional<Element> dualizing_element() const {
    if (cyclic_dualizing.empty()) return std::nullopt;
    return cyclic_dualizing.front();
  }
};

inline bool is_commutative(const Quantale& Q) {
  for (Element p = 0; p < Q.size(); ++p)
    for (Element q = p + 1; q < Q.size(); ++q)
      if (Q.tensor(p, q) != Q.tensor(q, p)) return false;
  return true;
}

inline bool is_integral(const Quantale& Q) { return Q.unit() == Q.top(); }

/// (u⧸q)⊗q = u = q⊗(q⇘u) whenever u ≤ q.
inline std::optional<std::pair<Element, Element>> divisibility_witness(const Quantale& Q) {
  for (Element q = 0; q < Q.size(); ++q)
    for (Element u = 0; u < Q.size(); ++u)
      if (Q.leq(u, q) && (Q.tensor(Q.ldd(u, q), q) != u || Q.tensor(q, Q.rdd(q, u)) != u))
        return std::pair{u, q};
  return std::nullopt;
}

inline bool is_divisible(const Quantale& Q) { return !divisibility_witness(Q).has_value(); }

inline bool is_frame(const Quantale& Q) {
  if (Q.unit() != Q.top()) return false;
  for (Element p = 0; p < Q.size(); ++p)
    for (Element q = 0; q < Q.size(); ++q)
      if (Q.tensor(p, q) != Q.meet(p, q)) return false;
  return true;
}

/// m⧸q = q⇘m for all q.
inline bool is_cyclic(const Quantale& Q, Element m) {
  for (Element q = 0; q < Q.size(); ++q)
    if (Q.ldd(m, q) != Q.rdd(q, m)) return false;
  return true;
}

/// (m⧸q)⇘m = q = m⧸(q⇘m) for all q.
inline std::optional<Element> dualizing_witness(const Quantale& Q, Element m) {
  for (Element q = 0; q < Q.size(); ++q)
    if (Q.rdd(Q.ldd(m, q), m) != q || Q.ldd(m, Q.rdd(q, m)) != q) return q;
  return std::nullopt;
}

inline bool is_dualizing(const Quantale& Q, Element m) { return !dualizing_witness(Q, m); }

inline std::vector<Element> find_cyclic_dualizing(const Quantale& Q) {
  std::vector<Element> out;
  for (Element m = 0; m < Q.size(); ++m)
    if (is_cyclic(Q, m) && is_dualizing(Q, m)) out.push_back(m);
  return out;
}

inline bool is_hermitian(const Quantale& Q, Element q) { return Q.involute(q) == q; }

inline PropertyProfile classify(const Quantale& Q) {
  PropertyProfile prof;
  const std::size_t n = Q.size();
  auto L = [&](Element e) { return Q.label(e); };

  prof.commutative = true;
  for (Element p = 0; p < n && prof.commutative; ++p)
    for (Element q = p + 1; q < n; ++q)
      if (Q.tensor(p, q) != Q.tensor(q, p)) {
        prof.commutative = false;
        prof.witnesses["commutative"] = {L(p), L(q)};
        break;
      }

  prof.integral = is_integral(Q);
  if (!prof.integral) prof.witnesses["integral"] = {L(Q.unit()), L(Q.top())};

  if (auto w = divisibility_witness(Q)) prof.witnesses["divisible"] = {L(w->first), L(w->second)};
  else prof.divisible = true;

  prof.idempotent = true;
  for (Element p = 0; p < n; ++p)
    if (Q.tensor(p, p) != p) {
      prof.idempotent = false;
      prof.witnesses["idempotent"] = {L(p)};
      break;
    }

  prof.frame = prof.integral;
  if (!prof.integral) prof.witnesses["frame"] = {L(Q.unit())};
  for (Element p = 0; p < n && prof.frame; ++p)
    for (Element q = 0; q < n; ++q)
      if (Q.tensor(p, q) != Q.meet(p, q)) {
        prof.frame = false;
        prof.witnesses["frame"] = {L(p), L(q)};
        break;
      }

  // (p→q)→q = p∨q, only meaningful for commutative Q.
  if (!prof.commutative) {
    prof.witnesses["mv"] = prof.witnesses["commutative"];
  } else {
    prof.mv = true;
    for (Element p = 0; p < n && prof.mv; ++p)
      for (Element q = 0; q < n; ++q)
        if (Q.rdd(Q.rdd(p, q), q) != Q.join(p, q)) {
          prof.mv = false;
          prof.witnesses["mv"] = {L(p), L(q)};
          break;
        }
  }

  prof.involutive = Q.has_involution();
  if (!prof.involutive) prof.witnesses["involutive"] = {};

  prof.cyclic_dualizing = find_cyclic_dualizing(Q);
  prof.girard = !prof.cyclic_dualizing.empty();
  if (!prof.girard) {
    // Record why the first candidate of each kind fails.
    for (Element m = 0; m < n; ++m) {
      if (!is_cyclic(Q, m)) continue;
      auto w = dualizing_witness(Q, m);
      prof.witnesses["girard"] = {L(m), L(*w)};
      break;
    }
    if (!prof.witnesses.count("girard")) prof.witnesses["girard"] = {"no cyclic element"};
  }
  return prof;
}

/// ¬_l q = ⊥⧸q and ¬_r q = q⇘⊥.
inline std::pair<Element, Element> negations(const Quantale& Q, Element q) {
  return {Q.ldd(Q.bottom(), q), Q.rdd(q, Q.bottom())};
}

inline Element neg_left(const Quantale& Q, Element q) { return Q.ldd(Q.bottom(), q); }
inline Element neg_right(const Quantale& Q, Element q) { return Q.rdd(q, Q.bottom()); }

/// q^⊥ = m⧸q. Throws NotDualizing unless m is cyclic and dualizing.
inline Element linear_negation(const Quantale& Q, Element m, Element q) {
  if (!is_cyclic(Q, m) || !is_dualizing(Q, m))
    throw Error(ErrorCode::NotDualizing, Q.label(m) + " is not a cyclic dualizing element");
  return Q.ldd(m, q);
}

/// Elements q with r⧸(q⇘r) = q = (r⧸q)⇘r.
inline ElementSubset regular_elements(const Quantale& Q, std::optional<Element> r = std::nullopt) {
  const Element base = r.value_or(Q.bottom());
  ElementSubset out(Q.size());
  for (Element q = 0; q < Q.size(); ++q)
    if (Q.ldd(base, Q.rdd(q, base)) == q && Q.rdd(Q.ldd(base, q), base) == q) out.insert(q);
  return out;
}

/// Builds a derived quantale on `members` (elements of Q) with the induced
/// (optionally reversed) order and the given multiplication on Q-elements.
template <class Mul>
Quantale derived_quantale(const Quantale& Q, const std::vector<Element>& members, bool reversed,
                          Mul&& mul, Element unit_in_q, std::string name) {
  const std::size_t m = members.size();
  std::vector<Element> index(Q.size(), kNoElement);
  for (std::size_t i = 0; i < m; ++i) index[members[i]] = static_cast<Element>(i);
  QuantaleData d;
  d.name = std::move(name);
  d.lattice = induced_lattice(Q.lattice(), members, reversed);
  d.tensor.resize(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Element v = mul(members[i], members[j]);
      if (index[v] == kNoElement)
        throw Error(ErrorCode::NotAQuantale, "product " + Q.label(members[i]) + "*" +
                                                 Q.label(members[j]) + " = " + Q.label(v) +
                                                 " leaves the carrier");
      d.tensor[i * m + j] = index[v];
    }
  if (index[unit_in_q] == kNoElement)
    throw Error(ErrorCode::NotAQuantale, "unit " + Q.label(unit_in_q) + " not in carrier");
  d.unit = index[unit_in_q];
  for (Element e : members) d.labels.push_back(Q.label(e));
  d.origin = members;
  bool inv_closed = Q.has_involution();
  for (Element e : members) inv_closed = inv_closed && index[Q.involute(e)] != kNoElement;
  if (inv_closed) {
    // Keep the restricted involution only if it is still an involution here.
    std::vector<Element> inv(m);
    for (std::size_t i = 0; i < m; ++i) inv[i] = index[Q.involute(members[i])];
    QuantaleData with = d;
    with.involution = std::move(inv);
    if (validate_quantale_data(with).ok()) return compute_residuals(std::move(with));
  }
  return compute_residuals(std::move(d));
}

/// Quantale on ↑r with p ⊗_r q = (p⊗q) ∨ r and unit ⊤. Requires integral Q.
inline Quantale relative_quantale(const Quantale& Q, Element r) {
  if (!is_integral(Q)) throw Error(ErrorCode::NotIntegral, Q.name() + " has unit below top");
  return derived_quantale(
      Q, upset(Q.lattice(), r).elements(), false,
      [&](Element a, Element b) { return Q.join(Q.tensor(a, b), r); }, Q.top(),
      Q.name() + "/up(" + Q.label(r) + ")");
}

/// j(a) = (a⇘q)⇘q for cyclic q.
inline Element nucleus(const Quantale& Q, Element q, Element a) {
  return Q.rdd(Q.rdd(a, q), q);
}

/// Monotone, inflationary, idempotent and j(a)⊗j(b) ≤ j(a⊗b).
inline ValidationReport check_nucleus(const Quantale& Q, Element q) {
  ValidationReport r;
  auto j = [&](Element a) { return nucleus(Q, q, a); };
  for (Element a = 0; a < Q.size(); ++a) {
    if (!Q.leq(a, j(a))) r.add("inflationary", {Q.label(a)});
    if (j(j(a)) != j(a)) r.add("idempotent", {Q.label(a)});
    for (Element b = 0; b < Q.size(); ++b) {
      if (Q.leq(a, b) && !Q.leq(j(a), j(b))) r.add("monotone", {Q.label(a), Q.label(b)});
      if (!Q.leq(Q.tensor(j(a), j(b)), j(Q.tensor(a, b))))
        r.add("lax-multiplicative", {Q.label(a), Q.label(b)});
    }
  }
  return r;
}

/// Quotient on the fixed points of j with b ⊗_j c = j(b⊗c), unit q⇘q.
inline Quantale nucleus_quotient(const Quantale& Q, Element q) {
  if (!is_cyclic(Q, q)) throw Error(ErrorCode::NotCyclic, Q.label(q) + " is not cyclic");
  std::vector<Element> fixed;
  for (Element a = 0; a < Q.size(); ++a)
    if (nucleus(Q, q, a) == a) fixed.push_back(a);
  return derived_quantale(
      Q, fixed, false, [&](Element a, Element b) { return nucleus(Q, q, Q.tensor(a, b)); },
      Q.rdd(q, q), Q.name() + "_j(" + Q.label(q) + ")");
}

/// Reversed order, p ⊗^d q = (p^⊥ ⊗ q^⊥)^⊥, unit m. Elements keep their
/// indices, so q ↦ q^⊥ is the isomorphism Q → Q^d.
inline Quantale dual_quantale(const Quantale& Q, Element m) {
  if (!is_cyclic(Q, m) || !is_dualizing(Q, m))
    throw Error(ErrorCode::NotDualizing, Q.label(m) + " is not a cyclic dualizing element");
  std::vector<Element> all(Q.size());
  for (Element e = 0; e < Q.size(); ++e) all[e] = e;
  auto perp = [&](Element e) { return Q.ldd(m, e); };
  return derived_quantale(
      Q, all, true, [&](Element a, Element b) { return perp(Q.tensor(perp(a), perp(b))); }, m,
      Q.name() + "^d");
}

}  // namespace qdiss
