#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "error.hpp"
#include "report.hpp"

namespace qdiss {

using Rational = boost::rational<std::int64_t>;

/// Nonnegative rational or ∞. Ordered numerically.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(std::int64_t v) : value_(v) {}  // NOLINT(implicit)
  ExtRational(Rational v) : value_(v) {}      // NOLINT(implicit)
  ExtRational(std::int64_t num, std::int64_t den) : value_(num, den) {}

  static ExtRational infinity() {
    ExtRational e;
    e.inf_ = true;
    return e;
  }

  bool is_infinite() const { return inf_; }
  const Rational& value() const { return value_; }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
  friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
  friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }

  /// p + ∞ = ∞ + p = ∞.
  friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.inf_ || b.inf_) return infinity();
    return ExtRational(a.value_ + b.value_);
  }

  /// Truncated subtraction max(0, a − b) with ∞ − p = ∞ for finite p and
  /// ∞ − ∞ = 0; a finite minus ∞ is 0.
  friend ExtRational monus(const ExtRational& a, const ExtRational& b) {
    if (a.inf_) return b.inf_ ? ExtRational(0) : infinity();
    if (b.inf_) return ExtRational(0);
    return a.value_ > b.value_ ? ExtRational(a.value_ - b.value_) : ExtRational(0);
  }

  std::string str() const {
    if (inf_) return "inf";
    std::ostringstream os;
    os << value_.numerator();
    if (value_.denominator() != 1) os << "/" << value_.denominator();
    return os.str();
  }

  /// Accepts "inf", "∞", integers and "a/b".
  static ExtRational parse(const std::string& s) {
    if (s == "inf" || s == "∞" || s == "infinity") return infinity();
    try {
      auto slash = s.find('/');
      if (slash == std::string::npos) return ExtRational(std::stoll(s));
      return ExtRational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "not an extended rational: '" + s + "'");
    }
  }

  friend std::ostream& operator<<(std::ostream& os, const ExtRational& e) { return os << e.str(); }

 private:
  Rational value_{0};
  bool inf_ = false;
};

/// Lawvere's quantale ([0,∞], +, 0) with the reversed numeric order: 0 is
/// top, ∞ is bottom, joins are numeric minima. Commutative, integral and
/// divisible; the involution is the identity.
class LawvereQuantale {
 public:
  using value_type = ExtRational;
  static constexpr bool exhaustive = false;

  bool leq(const ExtRational& a, const ExtRational& b) const { return a >= b; }
  ExtRational join(const ExtRational& a, const ExtRational& b) const { return std::min(a, b); }
  ExtRational meet(const ExtRational& a, const ExtRational& b) const { return std::max(a, b); }
  ExtRational tensor(const ExtRational& a, const ExtRational& b) const { return a + b; }
  ExtRational top() const { return ExtRational(0); }
  ExtRational bottom() const { return ExtRational::infinity(); }
  ExtRational unit() const { return ExtRational(0); }
  ExtRational involute(const ExtRational& a) const { return a; }

  /// p → q: q − p if p < q, else 0.
  ExtRational implies(const ExtRational& p, const ExtRational& q) const {
    return p < q ? monus(q, p) : ExtRational(0);
  }
  /// r⧸q = q → r.
  ExtRational ldd(const ExtRational& r, const ExtRational& q) const { return implies(q, r); }
  /// p⇘r = p → r.
  ExtRational rdd(const ExtRational& p, const ExtRational& r) const { return implies(p, r); }

  std::string format(const ExtRational& a) const { return a.str(); }

  static constexpr bool known_commutative = true;
  static constexpr bool known_integral = true;
  static constexpr bool known_divisible = true;
  static constexpr bool known_frame = false;
};

inline LawvereQuantale make_lawvere() { return {}; }

/// Samples plus the mandatory anchors {0, 1, ∞, unit}, deduplicated.
inline std::vector<ExtRational> with_anchors(const LawvereQuantale& Q,
                                             std::vector<ExtRational> samples) {
  samples.push_back(ExtRational(0));
  samples.push_back(ExtRational(1));
  samples.push_back(ExtRational::infinity());
  samples.push_back(Q.unit());
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  return samples;
}

/// Adjunction, monoid, distributivity and divisibility laws on every triple
/// drawn from the anchored sample set. Always stamped as sampled.
inline ValidationReport check_lawvere_laws(const LawvereQuantale& Q,
                                           const std::vector<ExtRational>& samples) {
  ValidationReport r;
  r.scope = Scope::Sampled;
  auto pts = with_anchors(Q, samples);
  for (const auto& p : pts) {
    if (Q.tensor(p, Q.unit()) != p) r.add("unit-law", {p.str()});
    if (Q.tensor(p, Q.bottom()) != Q.bottom()) r.add("bottom-absorbing", {p.str()});
    for (const auto& q : pts) {
      if (Q.tensor(p, q) != Q.tensor(q, p)) r.add("commutative", {p.str(), q.str()});
      if (Q.leq(p, q)) {
        // divisibility: (p⧸q)⊗q = p whenever p ≤ q
        if (Q.tensor(Q.ldd(p, q), q) != p || Q.tensor(q, Q.rdd(q, p)) != p)
          r.add("divisible", {p.str(), q.str()});
      }
      for (const auto& s : pts) {
        bool a = Q.leq(Q.tensor(p, q), s);
        bool b = Q.leq(p, Q.ldd(s, q));
        bool c = Q.leq(q, Q.rdd(p, s));
        if (a != b || a != c) r.add("adjunction", {p.str(), q.str(), s.str()});
        if (Q.tensor(Q.tensor(p, q), s) != Q.tensor(p, Q.tensor(q, s)))
          r.add("associative", {p.str(), q.str(), s.str()});
        if (Q.tensor(p, Q.join(q, s)) != Q.join(Q.tensor(p, q), Q.tensor(p, s)))
          r.add("distributive", {p.str(), q.str(), s.str()});
      }
    }
  }
  return r;
}

}  // namespace qdiss
