#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "report.hpp"

namespace qdiss {

/// Elements are dense indices 0..n-1; names live in separate label tables.
using Element = std::uint32_t;
inline constexpr Element kNoElement = std::numeric_limits<Element>::max();

/// A finite lattice stored as full order, join and meet tables.
///
/// Instances produced by `from_order`, `from_covers`, `chain` and `powerset`
/// are valid lattices. `from_tables` stores whatever it is given, so that
/// `validate_lattice` can be pointed at malformed data.
class FiniteLattice {
 public:
  FiniteLattice() = default;

  static FiniteLattice from_tables(std::size_t n, std::vector<std::uint8_t> leq,
                                   std::vector<Element> join, std::vector<Element> meet,
                                   Element top, Element bottom) {
    FiniteLattice l;
    l.n_ = n;
    l.leq_ = std::move(leq);
    l.join_ = std::move(join);
    l.meet_ = std::move(meet);
    l.top_ = top;
    l.bottom_ = bottom;
    return l;
  }

  /// Derives join/meet/top/bottom from a partial order given as an n*n
  /// row-major table. Throws NotALattice with a witness otherwise.
  static FiniteLattice from_order(std::size_t n, std::vector<std::uint8_t> leq);

  /// Reflexive-transitive closure of covering pairs (lower, upper).
  static FiniteLattice from_covers(std::size_t n,
                                   std::span<const std::pair<Element, Element>> covers);

  /// 0 < 1 < ... < n-1.
  static FiniteLattice chain(std::size_t n);

  /// Subsets of {0..bits-1} encoded as bitmasks, ordered by inclusion.
  static FiniteLattice powerset(unsigned bits);

  std::size_t size() const { return n_; }
  bool leq(Element a, Element b) const { return leq_[a * n_ + b] != 0; }
  bool lt(Element a, Element b) const { return a != b && leq(a, b); }
  Element join(Element a, Element b) const { return join_[a * n_ + b]; }
  Element meet(Element a, Element b) const { return meet_[a * n_ + b]; }
  Element top() const { return top_; }
  Element bottom() const { return bottom_; }

  bool is_chain() const {
    for (Element a = 0; a < n_; ++a)
      for (Element b = 0; b < n_; ++b)
        if (!leq(a, b) && !leq(b, a)) return false;
    return true;
  }

  const std::vector<std::uint8_t>& leq_table() const { return leq_; }
  const std::vector<Element>& join_table() const { return join_; }
  const std::vector<Element>& meet_table() const { return meet_; }

  friend bool operator==(const FiniteLattice&, const FiniteLattice&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> leq_;
  std::vector<Element> join_;
  std::vector<Element> meet_;
  Element top_ = 0;
  Element bottom_ = 0;
};

/// Membership vector over the elements of some lattice of size `size()`.
class ElementSubset {
 public:
  ElementSubset() = default;
  explicit ElementSubset(std::size_t n) : members_(n, false) {}
  ElementSubset(std::size_t n, std::initializer_list<Element> elems) : members_(n, false) {
    for (Element e : elems) insert(e);
  }

  std::size_t size() const { return members_.size(); }
  bool contains(Element e) const { return e < members_.size() && members_[e]; }
  void insert(Element e) { members_.at(e) = true; }
  void erase(Element e) { members_.at(e) = false; }

  std::size_t count() const {
    std::size_t c = 0;
    for (bool b : members_) c += b;
    return c;
  }
  bool empty() const { return count() == 0; }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    for (Element e = 0; e < members_.size(); ++e)
      if (members_[e]) out.push_back(e);
    return out;
  }

  friend bool operator==(const ElementSubset&, const ElementSubset&) = default;

 private:
  std::vector<bool> members_;
};

// ---------------------------------------------------------------------------

inline FiniteLattice FiniteLattice::from_order(std::size_t n, std::vector<std::uint8_t> leq) {
  if (leq.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "order table is not n*n");
  if (n == 0) throw Error(ErrorCode::NotALattice, "empty carrier");
  auto le = [&](Element a, Element b) { return leq[a * n + b] != 0; };
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (a != b && le(a, b) && le(b, a))
        throw Error(ErrorCode::NotALattice,
                    "antisymmetry fails at (" + std::to_string(a) + "," + std::to_string(b) + ")");

  // Least upper bound (upper = true) or greatest lower bound, or kNoElement.
  auto extremal = [&](Element a, Element b, bool upper) {
    Element best = kNoElement;
    for (Element u = 0; u < n; ++u) {
      bool bound = upper ? (le(a, u) && le(b, u)) : (le(u, a) && le(u, b));
      if (!bound) continue;
      if (best == kNoElement || (upper ? le(u, best) : le(best, u))) best = u;
    }
    for (Element u = 0; u < n && best != kNoElement; ++u) {
      bool bound = upper ? (le(a, u) && le(b, u)) : (le(u, a) && le(u, b));
      if (bound && !(upper ? le(best, u) : le(u, best))) best = kNoElement;
    }
    return best;
  };

  std::vector<Element> join(n * n), meet(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = a; b < n; ++b) {
      Element j = extremal(a, b, true), m = extremal(a, b, false);
      if (j == kNoElement || m == kNoElement)
        throw Error(ErrorCode::NotALattice, "pair (" + std::to_string(a) + "," + std::to_string(b) +
                                                ") has no " + (j == kNoElement ? "join" : "meet"));
      join[a * n + b] = join[b * n + a] = j;
      meet[a * n + b] = meet[b * n + a] = m;
    }
  Element top = 0, bottom = 0;
  for (Element a = 1; a < n; ++a) {
    top = join[top * n + a];
    bottom = meet[bottom * n + a];
  }
  return from_tables(n, std::move(leq), std::move(join), std::move(meet), top, bottom);
}

inline FiniteLattice FiniteLattice::from_covers(
    std::size_t n, std::span<const std::pair<Element, Element>> covers) {
  std::vector<std::uint8_t> leq(n * n, 0);
  for (Element a = 0; a < n; ++a) leq[a * n + a] = 1;
  for (auto [lo, hi] : covers) {
    if (lo >= n || hi >= n) throw Error(ErrorCode::DimensionMismatch, "covering pair out of range");
    leq[lo * n + hi] = 1;
  }
  // Warshall closure.
  for (Element k = 0; k < n; ++k)
    for (Element i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (Element j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = 1;
  return from_order(n, std::move(leq));
}

inline FiniteLattice FiniteLattice::chain(std::size_t n) {
  std::vector<std::uint8_t> leq(n * n);
  std::vector<Element> join(n * n), meet(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      leq[a * n + b] = a <= b;
      join[a * n + b] = std::max(a, b);
      meet[a * n + b] = std::min(a, b);
    }
  return from_tables(n, std::move(leq), std::move(join), std::move(meet),
                     static_cast<Element>(n ? n - 1 : 0), 0);
}

inline FiniteLattice FiniteLattice::powerset(unsigned bits) {
  std::size_t n = std::size_t{1} << bits;
  std::vector<std::uint8_t> leq(n * n);
  std::vector<Element> join(n * n), meet(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      leq[a * n + b] = (a & ~b) == 0;
      join[a * n + b] = a | b;
      meet[a * n + b] = a & b;
    }
  return from_tables(n, std::move(leq), std::move(join), std::move(meet),
                     static_cast<Element>(n - 1), 0);
}

/// Lists every violated lattice axiom with a witness. Completeness reduces to
/// binary joins/meets plus bounds because the carrier is finite.
inline ValidationReport validate_lattice(const FiniteLattice& l) {
  const std::size_t n = l.size();
  if (l.leq_table().size() != n * n || l.join_table().size() != n * n ||
      l.meet_table().size() != n * n)
    throw Error(ErrorCode::DimensionMismatch, "lattice tables do not match n = " + std::to_string(n));
  ValidationReport r;
  auto s = [](Element e) { return std::to_string(e); };
  if (n == 0) {
    r.add("nonempty", {});
    return r;
  }
  if (l.top() >= n || l.bottom() >= n) {
    r.add("bounds-in-range", {s(l.top()), s(l.bottom())});
    return r;
  }
  for (Element a = 0; a < n; ++a) {
    if (!l.leq(a, a)) r.add("reflexive", {s(a)});
    if (!l.leq(l.bottom(), a)) r.add("bottom-least", {s(a)});
    if (!l.leq(a, l.top())) r.add("top-greatest", {s(a)});
    for (Element b = 0; b < n; ++b) {
      if (a != b && l.leq(a, b) && l.leq(b, a)) r.add("antisymmetric", {s(a), s(b)});
      Element j = l.join(a, b), m = l.meet(a, b);
      if (j >= n || m >= n) {
        r.add("table-in-range", {s(a), s(b)});
        continue;
      }
      if (!l.leq(a, j) || !l.leq(b, j)) r.add("join-upper-bound", {s(a), s(b)});
      if (!l.leq(m, a) || !l.leq(m, b)) r.add("meet-lower-bound", {s(a), s(b)});
      for (Element c = 0; c < n; ++c) {
        if (l.leq(a, b) && l.leq(b, c) && !l.leq(a, c)) r.add("transitive", {s(a), s(b), s(c)});
        if (l.leq(a, c) && l.leq(b, c) && !l.leq(j, c)) r.add("join-least", {s(a), s(b), s(c)});
        if (l.leq(c, a) && l.leq(c, b) && !l.leq(c, m)) r.add("meet-greatest", {s(a), s(b), s(c)});
      }
    }
  }
  return r;
}

/// Least upper bound; sup of the empty subset is bottom.
inline Element sup(const FiniteLattice& l, const ElementSubset& s) {
  if (s.size() != l.size()) throw Error(ErrorCode::DimensionMismatch, "subset/lattice size differ");
  Element acc = l.bottom();
  for (Element e : s.elements()) acc = l.join(acc, e);
  return acc;
}

/// Greatest lower bound; inf of the empty subset is top.
inline Element inf(const FiniteLattice& l, const ElementSubset& s) {
  if (s.size() != l.size()) throw Error(ErrorCode::DimensionMismatch, "subset/lattice size differ");
  Element acc = l.top();
  for (Element e : s.elements()) acc = l.meet(acc, e);
  return acc;
}

inline ElementSubset upset(const FiniteLattice& l, Element r) {
  ElementSubset out(l.size());
  for (Element q = 0; q < l.size(); ++q)
    if (l.leq(r, q)) out.insert(q);
  return out;
}

inline ElementSubset downset(const FiniteLattice& l, Element r) {
  ElementSubset out(l.size());
  for (Element q = 0; q < l.size(); ++q)
    if (l.leq(q, r)) out.insert(q);
  return out;
}

/// Order restricted to a subset, re-indexed densely in the subset's element
/// order. `reversed` flips it. Throws NotALattice when the induced order is
/// not a lattice.
inline FiniteLattice induced_lattice(const FiniteLattice& l, const std::vector<Element>& members,
                                     bool reversed = false) {
  const std::size_t m = members.size();
  std::vector<std::uint8_t> leq(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      leq[i * m + j] = reversed ? l.leq(members[j], members[i]) : l.leq(members[i], members[j]);
  return FiniteLattice::from_order(m, std::move(leq));
}

}  // namespace qdiss
