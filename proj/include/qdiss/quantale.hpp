#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "lattice.hpp"
#include "report.hpp"

namespace qdiss {

/// Unvalidated description of a finite quantale, as produced by parsers and
/// constructors. `tensor` is row-major: tensor[p * n + q] = p ⊗ q.
struct QuantaleData {
  std::string name;
  FiniteLattice lattice;
  std::vector<Element> tensor;
  Element unit = 0;
  std::optional<std::vector<Element>> involution;
  std::vector<std::string> labels;
  /// For derived quantales: origin[i] is the element of the parent quantale
  /// that local element i stands for. Empty when there is no parent.
  std::vector<Element> origin;
};

/// Checks monoid laws, distributivity over binary joins and bottom, and the
/// involution laws when an involution is present.
inline ValidationReport validate_quantale_data(const QuantaleData& d) {
  const std::size_t n = d.lattice.size();
  if (d.tensor.size() != n * n)
    throw Error(ErrorCode::DimensionMismatch, "tensor table is not n*n for n = " + std::to_string(n));
  if (d.involution && d.involution->size() != n)
    throw Error(ErrorCode::DimensionMismatch, "involution length differs from n");
  ValidationReport r = validate_lattice(d.lattice);
  if (!r.ok()) return r;
  auto lab = [&](Element e) {
    return e < d.labels.size() ? d.labels[e] : std::to_string(e);
  };
  if (d.unit >= n) {
    r.add("unit-in-range", {std::to_string(d.unit)});
    return r;
  }
  for (Element e : d.tensor)
    if (e >= n) {
      r.add("tensor-in-range", {std::to_string(e)});
      return r;
    }
  const auto& L = d.lattice;
  auto t = [&](Element a, Element b) { return d.tensor[a * n + b]; };
  for (Element p = 0; p < n; ++p) {
    if (t(d.unit, p) != p || t(p, d.unit) != p) r.add("unit-law", {lab(p)});
    if (t(p, L.bottom()) != L.bottom() || t(L.bottom(), p) != L.bottom())
      r.add("bottom-absorbing", {lab(p)});
    for (Element q = 0; q < n; ++q)
      for (Element s = 0; s < n; ++s) {
        if (t(t(p, q), s) != t(p, t(q, s))) r.add("associative", {lab(p), lab(q), lab(s)});
        if (t(p, L.join(q, s)) != L.join(t(p, q), t(p, s)))
          r.add("left-distributive", {lab(p), lab(q), lab(s)});
        if (t(L.join(q, s), p) != L.join(t(q, p), t(s, p)))
          r.add("right-distributive", {lab(p), lab(q), lab(s)});
      }
  }
  if (d.involution) {
    const auto& inv = *d.involution;
    for (Element e : inv)
      if (e >= n) {
        r.add("involution-in-range", {std::to_string(e)});
        return r;
      }
    if (inv[d.unit] != d.unit) r.add("involution-fixes-unit", {lab(d.unit)});
    if (inv[L.bottom()] != L.bottom()) r.add("involution-preserves-bottom", {lab(L.bottom())});
    for (Element p = 0; p < n; ++p) {
      if (inv[inv[p]] != p) r.add("involution-self-inverse", {lab(p)});
      for (Element q = 0; q < n; ++q) {
        if (inv[t(p, q)] != t(inv[q], inv[p])) r.add("involution-reverses-tensor", {lab(p), lab(q)});
        if (inv[L.join(p, q)] != L.join(inv[p], inv[q]))
          r.add("involution-preserves-joins", {lab(p), lab(q)});
      }
    }
  }
  return r;
}

/// A validated finite quantale with cached residual tables.
class Quantale {
 public:
  using value_type = Element;
  static constexpr bool exhaustive = true;

  std::size_t size() const { return data_.lattice.size(); }
  const FiniteLattice& lattice() const { return data_.lattice; }
  const QuantaleData& data() const { return data_; }
  const std::string& name() const { return data_.name; }

  bool leq(Element a, Element b) const { return data_.lattice.leq(a, b); }
  Element join(Element a, Element b) const { return data_.lattice.join(a, b); }
  Element meet(Element a, Element b) const { return data_.lattice.meet(a, b); }
  Element top() const { return data_.lattice.top(); }
  Element bottom() const { return data_.lattice.bottom(); }
  Element unit() const { return data_.unit; }
  Element tensor(Element a, Element b) const { return data_.tensor[a * size() + b]; }
  /// r⧸q = ⋁{p : p ⊗ q ≤ r}
  Element ldd(Element r, Element q) const { return ldd_[r * size() + q]; }
  /// p⇘r = ⋁{q : p ⊗ q ≤ r}
  Element rdd(Element p, Element r) const { return rdd_[p * size() + r]; }

  bool has_involution() const { return data_.involution.has_value(); }
  /// Identity when no involution was supplied.
  Element involute(Element a) const { return data_.involution ? (*data_.involution)[a] : a; }

  const std::string& label(Element e) const { return data_.labels[e]; }
  std::string format(Element e) const { return data_.labels[e]; }
  const std::vector<std::string>& labels() const { return data_.labels; }
  const std::vector<Element>& origin() const { return data_.origin; }

  /// Element by label; also accepts the aliases bot, top, k/unit.
  Element find(const std::string& label) const {
    for (Element e = 0; e < size(); ++e)
      if (data_.labels[e] == label) return e;
    if (label == "bot" || label == "⊥") return bottom();
    if (label == "top" || label == "⊤") return top();
    if (label == "k" || label == "unit") return unit();
    throw Error(ErrorCode::UnknownName, "no element labelled '" + label + "' in " + name());
  }

  friend Quantale compute_residuals(QuantaleData d);

 private:
  QuantaleData data_;
  std::vector<Element> ldd_;
  std::vector<Element> rdd_;
};

/// Validates the data (NotAQuantale with the first witness on failure) and
/// caches both implications by sup-scan over the definition.
inline Quantale compute_residuals(QuantaleData d) {
  ValidationReport r = validate_quantale_data(d);
  if (!r.ok()) throw Error(ErrorCode::NotAQuantale, r.violations.front().str());
  const std::size_t n = d.lattice.size();
  if (d.labels.size() != n) {
    d.labels.resize(n);
    for (Element e = 0; e < n; ++e)
      if (d.labels[e].empty()) d.labels[e] = std::to_string(e);
  }
  Quantale q;
  q.data_ = std::move(d);
  q.ldd_.assign(n * n, q.bottom());
  q.rdd_.assign(n * n, q.bottom());
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      Element t = q.tensor(a, b);
      // a ⊗ b ≤ r contributes a to r⧸b and b to a⇘r.
      for (Element r2 = 0; r2 < n; ++r2)
        if (q.leq(t, r2)) {
          q.ldd_[r2 * n + b] = q.join(q.ldd_[r2 * n + b], a);
          q.rdd_[a * n + r2] = q.join(q.rdd_[a * n + r2], b);
        }
    }
  return q;
}

using QuantalePtr = std::shared_ptr<const Quantale>;

inline QuantalePtr share(Quantale q) { return std::make_shared<const Quantale>(std::move(q)); }

/// p⊗q ≤ r ⟺ p ≤ r⧸q ⟺ q ≤ p⇘r for every triple.
inline ValidationReport check_adjunction(const Quantale& Q) {
  ValidationReport r;
  for (Element p = 0; p < Q.size(); ++p)
    for (Element q = 0; q < Q.size(); ++q)
      for (Element s = 0; s < Q.size(); ++s) {
        bool a = Q.leq(Q.tensor(p, q), s);
        bool b = Q.leq(p, Q.ldd(s, q));
        bool c = Q.leq(q, Q.rdd(p, s));
        if (a != b || a != c) r.add("adjunction", {Q.label(p), Q.label(q), Q.label(s)});
      }
  return r;
}

/// (p⧸q)° = q°⇘p° for all p, q.
inline ValidationReport check_involution_residuals(const Quantale& Q) {
  ValidationReport r;
  if (!Q.has_involution()) return r;
  for (Element p = 0; p < Q.size(); ++p)
    for (Element q = 0; q < Q.size(); ++q)
      if (Q.involute(Q.ldd(p, q)) != Q.rdd(Q.involute(q), Q.involute(p)))
        r.add("involution-residuals", {Q.label(p), Q.label(q)});
  return r;
}

/// Whether `map` (indexed by elements of A) is a quantale isomorphism A → B:
/// bijective, order-reflecting both ways, unit- and tensor-preserving.
inline ValidationReport check_quantale_isomorphism(const Quantale& A, const Quantale& B,
                                                   const std::vector<Element>& map) {
  ValidationReport r;
  if (A.size() != B.size() || map.size() != A.size()) {
    r.add("sizes", {std::to_string(A.size()), std::to_string(B.size())});
    return r;
  }
  std::vector<bool> hit(B.size(), false);
  for (Element a = 0; a < A.size(); ++a) {
    if (map[a] >= B.size() || hit[map[a]]) {
      r.add("bijective", {A.label(a)});
      return r;
    }
    hit[map[a]] = true;
  }
  if (map[A.unit()] != B.unit()) r.add("unit", {A.label(A.unit())});
  for (Element a = 0; a < A.size(); ++a)
    for (Element b = 0; b < A.size(); ++b) {
      if (A.leq(a, b) != B.leq(map[a], map[b])) r.add("order", {A.label(a), A.label(b)});
      if (map[A.tensor(a, b)] != B.tensor(map[a], map[b])) r.add("tensor", {A.label(a), A.label(b)});
    }
  return r;
}

/// Backtracking search for a quantale isomorphism A → B. Intended for the
/// small quantales this library builds (tens of elements).
inline std::optional<std::vector<Element>> find_quantale_isomorphism(const Quantale& A,
                                                                     const Quantale& B) {
  const std::size_t n = A.size();
  if (B.size() != n) return std::nullopt;
  auto profile = [](const Quantale& Q, Element e) {
    std::size_t below = 0, idem = Q.tensor(e, e) == e;
    for (Element x = 0; x < Q.size(); ++x) below += Q.leq(x, e);
    return std::pair{below, idem};
  };
  std::vector<Element> map(n, kNoElement);
  std::vector<bool> used(n, false);
  map[A.unit()] = B.unit();
  if (profile(A, A.unit()) != profile(B, B.unit())) return std::nullopt;
  used[B.unit()] = true;

  auto consistent = [&](Element a) {
    for (Element x = 0; x < n; ++x) {
      if (map[x] == kNoElement) continue;
      if (A.leq(a, x) != B.leq(map[a], map[x]) || A.leq(x, a) != B.leq(map[x], map[a])) return false;
      Element t1 = A.tensor(a, x), t2 = A.tensor(x, a);
      if (map[t1] != kNoElement && map[t1] != B.tensor(map[a], map[x])) return false;
      if (map[t2] != kNoElement && map[t2] != B.tensor(map[x], map[a])) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, Element a) -> bool {
    if (a == n) return check_quantale_isomorphism(A, B, map).ok();
    if (map[a] != kNoElement) return self(self, a + 1);
    for (Element b = 0; b < n; ++b) {
      if (used[b] || profile(A, a) != profile(B, b)) continue;
      map[a] = b;
      used[b] = true;
      if (consistent(a) && self(self, a + 1)) return true;
      used[b] = false;
      map[a] = kNoElement;
    }
    return false;
  };
  if (!consistent(A.unit())) return std::nullopt;
  if (rec(rec, 0)) return map;
  return std::nullopt;
}

}  // namespace qdiss
