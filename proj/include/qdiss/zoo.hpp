#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "analytic.hpp"
#include "enriched.hpp"
#include "quantale.hpp"

namespace qdiss {

namespace detail {

inline std::vector<Element> identity_perm(std::size_t n) {
  std::vector<Element> v(n);
  std::iota(v.begin(), v.end(), Element{0});
  return v;
}

inline std::string fraction_label(std::size_t i, std::size_t steps) {
  if (i == 0) return "0";
  if (i == steps) return "1";
  std::size_t g = std::gcd(i, steps);
  return std::to_string(i / g) + "/" + std::to_string(steps / g);
}

inline std::string set_label(std::uint32_t mask, unsigned bits) {
  std::string s = "{";
  bool first = true;
  for (unsigned b = 0; b < bits; ++b)
    if (mask >> b & 1u) {
      if (!first) s += ",";
      s += std::to_string(b);
      first = false;
    }
  return s + "}";
}

}  // namespace detail

/// Powerset of n atoms with ⊗ = ∩. One atom gives 2 with labels 0, 1.
inline Quantale make_boolean(unsigned n_atoms) {
  if (n_atoms > 8) throw Error(ErrorCode::TooLarge, "boolean algebras are built for at most 8 atoms");
  QuantaleData d;
  d.name = "boolean:" + std::to_string(n_atoms);
  d.lattice = FiniteLattice::powerset(n_atoms);
  const std::size_t n = d.lattice.size();
  d.tensor.resize(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) d.tensor[a * n + b] = a & b;
  d.unit = d.lattice.top();
  d.involution = detail::identity_perm(n);
  for (Element a = 0; a < n; ++a)
    d.labels.push_back(n_atoms == 1 ? std::to_string(a) : detail::set_label(a, n_atoms));
  return compute_residuals(std::move(d));
}

enum class TNorm { Godel, Lukasiewicz, NilpotentMinimum, ProductDiscretized };

inline const char* to_string(TNorm t) {
  switch (t) {
    case TNorm::Godel: return "godel";
    case TNorm::Lukasiewicz: return "lukasiewicz";
    case TNorm::NilpotentMinimum: return "nilpotent_minimum";
    case TNorm::ProductDiscretized: return "product";
  }
  return "?";
}

/// Chain {0, 1/steps, …, 1} under the named t-norm. Element i stands for
/// i/steps.
inline Quantale make_chain_tnorm(std::size_t steps, TNorm tnorm) {
  if (steps < 1) throw Error(ErrorCode::DimensionMismatch, "a t-norm chain needs steps >= 1");
  if (steps > 255) throw Error(ErrorCode::TooLarge, "t-norm chains are built for at most 255 steps");
  const std::size_t n = steps + 1;
  QuantaleData d;
  d.name = std::string(to_string(tnorm)) + ":" + std::to_string(n);
  d.lattice = FiniteLattice::chain(n);
  d.tensor.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t v = 0;
      switch (tnorm) {
        case TNorm::Godel: v = std::min(i, j); break;
        case TNorm::Lukasiewicz: v = i + j > steps ? i + j - steps : 0; break;
        case TNorm::NilpotentMinimum: v = i + j <= steps ? 0 : std::min(i, j); break;
        case TNorm::ProductDiscretized:
          if (i * j % steps != 0)
            throw Error(ErrorCode::NonClosed, "product " + detail::fraction_label(i, steps) + "*" +
                                                  detail::fraction_label(j, steps) +
                                                  " leaves the chain");
          v = i * j / steps;
          break;
      }
      d.tensor[i * n + j] = static_cast<Element>(v);
    }
  d.unit = static_cast<Element>(steps);
  d.involution = detail::identity_perm(n);
  for (std::size_t i = 0; i < n; ++i) d.labels.push_back(detail::fraction_label(i, steps));
  return compute_residuals(std::move(d));
}

/// ⊥ < k < ⊤ with unit k and ⊤⊗⊤ = ⊤.
inline Quantale make_c3() {
  QuantaleData d;
  d.name = "c3";
  d.lattice = FiniteLattice::chain(3);
  // rows: bot, k, top
  d.tensor = {0, 0, 0,  //
              0, 1, 2,  //
              0, 2, 2};
  d.unit = 1;
  d.involution = detail::identity_perm(3);
  d.labels = {"bot", "k", "top"};
  return compute_residuals(std::move(d));
}

/// Relations on {0..s-1}; bit x*s+y encodes x R y. S⊗R = S∘R relates x to
/// z when x R y and y S z for some y. The involution is the opposite.
inline Quantale make_rel(unsigned set_size) {
  if (set_size < 1) throw Error(ErrorCode::DimensionMismatch, "rel needs a nonempty set");
  if (set_size > 3) throw Error(ErrorCode::TooLarge, "rel is built for sets of at most 3 points");
  const unsigned s = set_size, bits = s * s;
  QuantaleData d;
  d.name = "rel:" + std::to_string(s);
  d.lattice = FiniteLattice::powerset(bits);
  const std::size_t n = d.lattice.size();
  auto has = [&](std::uint32_t r, unsigned x, unsigned y) { return (r >> (x * s + y)) & 1u; };
  d.tensor.resize(n * n);
  for (std::uint32_t S = 0; S < n; ++S)
    for (std::uint32_t R = 0; R < n; ++R) {
      std::uint32_t out = 0;
      for (unsigned x = 0; x < s; ++x)
        for (unsigned z = 0; z < s; ++z)
          for (unsigned y = 0; y < s; ++y)
            if (has(R, x, y) && has(S, y, z)) {
              out |= 1u << (x * s + z);
              break;
            }
      d.tensor[S * n + R] = out;
    }
  std::uint32_t id = 0;
  for (unsigned x = 0; x < s; ++x) id |= 1u << (x * s + x);
  d.unit = id;
  std::vector<Element> inv(n);
  for (std::uint32_t R = 0; R < n; ++R) {
    std::uint32_t t = 0;
    for (unsigned x = 0; x < s; ++x)
      for (unsigned y = 0; y < s; ++y)
        if (has(R, x, y)) t |= 1u << (y * s + x);
    inv[R] = t;
  }
  d.involution = std::move(inv);
  for (std::uint32_t R = 0; R < n; ++R) {
    std::string l = "{";
    bool first = true;
    for (unsigned x = 0; x < s; ++x)
      for (unsigned y = 0; y < s; ++y)
        if (has(R, x, y)) {
          if (!first) l += ",";
          l += std::to_string(x) + std::to_string(y);
          first = false;
        }
    d.labels.push_back(l + "}");
  }
  return compute_residuals(std::move(d));
}

// ---------------------------------------------------------------------------
// Finite topological spaces.

/// Points 0..n-1; opens are bitmasks over the points.
struct FiniteTopSpace {
  std::string name;
  unsigned points = 0;
  std::vector<std::uint32_t> opens;

  std::uint32_t whole() const { return points == 32 ? ~0u : ((1u << points) - 1u); }

  bool is_open(std::uint32_t m) const {
    for (auto o : opens)
      if (o == m) return true;
    return false;
  }

  std::uint32_t interior(std::uint32_t m) const {
    std::uint32_t acc = 0;
    for (auto o : opens)
      if ((o & ~m) == 0) acc |= o;
    return acc;
  }

  std::size_t index_of(std::uint32_t open) const {
    for (std::size_t i = 0; i < opens.size(); ++i)
      if (opens[i] == open) return i;
    throw Error(ErrorCode::UnknownName, "not an open set of " + name);
  }
};

inline ValidationReport validate_space(const FiniteTopSpace& X) {
  ValidationReport r;
  if (X.points > 16) {
    r.add("at-most-16-points", {std::to_string(X.points)});
    return r;
  }
  if (!X.is_open(0)) r.add("empty-open", {});
  if (!X.is_open(X.whole())) r.add("whole-open", {});
  for (auto a : X.opens) {
    if (a & ~X.whole()) r.add("opens-within-points", {detail::set_label(a, 32)});
    for (auto b : X.opens) {
      if (!X.is_open(a | b)) r.add("union-closed", {detail::set_label(a, X.points), detail::set_label(b, X.points)});
      if (!X.is_open(a & b)) r.add("intersection-closed", {detail::set_label(a, X.points), detail::set_label(b, X.points)});
    }
  }
  return r;
}

namespace detail {
inline FiniteTopSpace normalized(FiniteTopSpace X) {
  std::sort(X.opens.begin(), X.opens.end());
  X.opens.erase(std::unique(X.opens.begin(), X.opens.end()), X.opens.end());
  auto rep = validate_space(X);
  if (!rep.ok()) throw Error(ErrorCode::NotAFrame, X.name + ": " + rep.violations.front().str());
  return X;
}
}  // namespace detail

/// Points {0, 1} with opens ∅, {0}, {0,1}.
inline FiniteTopSpace sierpinski() { return detail::normalized({"sierpinski", 2, {0b00, 0b01, 0b11}}); }

inline FiniteTopSpace discrete_space(unsigned n) {
  if (n > 8) throw Error(ErrorCode::TooLarge, "discrete spaces are built for at most 8 points");
  FiniteTopSpace X{"discrete:" + std::to_string(n), n, {}};
  for (std::uint32_t m = 0; m < (1u << n); ++m) X.opens.push_back(m);
  return detail::normalized(std::move(X));
}

inline FiniteTopSpace indiscrete_space(unsigned n) {
  FiniteTopSpace X{"indiscrete:" + std::to_string(n), n, {0}};
  X.opens.push_back(X.whole());
  return detail::normalized(std::move(X));
}

/// (O(X), ∩, X). Element i is X.opens[i].
inline Quantale make_open_set_frame(const FiniteTopSpace& X) {
  auto rep = validate_space(X);
  if (!rep.ok()) throw Error(ErrorCode::NotAFrame, rep.violations.front().str());
  const std::size_t n = X.opens.size();
  std::vector<std::uint8_t> leq(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) leq[i * n + j] = (X.opens[i] & ~X.opens[j]) == 0;
  QuantaleData d;
  d.name = "O(" + X.name + ")";
  d.lattice = FiniteLattice::from_order(n, std::move(leq));
  d.tensor.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d.tensor[i * n + j] = static_cast<Element>(X.index_of(X.opens[i] & X.opens[j]));
  d.unit = static_cast<Element>(X.index_of(X.whole()));
  d.involution = detail::identity_perm(n);
  for (auto o : X.opens) d.labels.push_back(detail::set_label(o, X.points));
  return compute_residuals(std::move(d));
}

/// A continuous map from an open subset into {0..V-1}; values[x] = -1
/// outside the domain.
struct PartialMap {
  std::uint32_t domain = 0;
  std::vector<int> values;

  std::string str() const {
    std::string s;
    for (int v : values) s += v < 0 ? std::string("_") : std::to_string(v);
    return s;
  }
};

/// Every partial map whose domain is open and whose fibres are open.
inline std::vector<PartialMap> enumerate_partial_maps(const FiniteTopSpace& X, unsigned V) {
  std::vector<PartialMap> out;
  for (auto U : X.opens) {
    std::vector<unsigned> pts;
    for (unsigned p = 0; p < X.points; ++p)
      if (U >> p & 1u) pts.push_back(p);
    std::size_t total = 1;
    for (std::size_t i = 0; i < pts.size(); ++i) total *= V;
    if (V == 0 && !pts.empty()) continue;
    for (std::size_t code = 0; code < total; ++code) {
      PartialMap f{U, std::vector<int>(X.points, -1)};
      std::size_t c = code;
      for (unsigned p : pts) {
        f.values[p] = static_cast<int>(c % V);
        c /= V;
      }
      bool continuous = true;
      for (unsigned v = 0; v < V && continuous; ++v) {
        std::uint32_t fibre = 0;
        for (unsigned p : pts)
          if (f.values[p] == static_cast<int>(v)) fibre |= 1u << p;
        continuous = X.is_open(fibre);
      }
      if (continuous) out.push_back(std::move(f));
    }
  }
  return out;
}

/// α(f,g) = Int{x ∈ D(f)∩D(g) : f(x) = g(x)}.
inline SimilaritySpace<Quantale> pcx_similarity(const FiniteTopSpace& X, unsigned V) {
  auto frame = share(make_open_set_frame(X));
  auto maps = enumerate_partial_maps(X, V);
  SimilaritySpace<Quantale> S;
  S.base = frame;
  S.values = Matrix<Element>(maps.size(), Element{0});
  for (const auto& f : maps) S.carrier.push_back(f.str());
  for (std::size_t i = 0; i < maps.size(); ++i)
    for (std::size_t j = 0; j < maps.size(); ++j) {
      std::uint32_t agree = 0;
      for (unsigned p = 0; p < X.points; ++p)
        if (maps[i].values[p] >= 0 && maps[i].values[p] == maps[j].values[p]) agree |= 1u << p;
      S.values(i, j) = static_cast<Element>(X.index_of(X.interior(agree)));
    }
  return S;
}

/// β(f,g) = Int(X − α(f,g)).
inline DissimilaritySpace<Quantale> pcx_dissimilarity(const FiniteTopSpace& X, unsigned V) {
  auto S = pcx_similarity(X, V);
  DissimilaritySpace<Quantale> D;
  D.base = S.base;
  D.carrier = S.carrier;
  D.values = S.values.map([&](Element a) {
    return static_cast<Element>(X.index_of(X.interior(X.whole() & ~X.opens[a])));
  });
  return D;
}

// ---------------------------------------------------------------------------
// Closed intervals over Lawvere's quantale.

struct RationalInterval {
  Rational lo;
  ExtRational hi;

  std::string str() const { return "[" + ExtRational(lo).str() + "," + hi.str() + "]"; }
};

inline RationalInterval make_interval(Rational lo, ExtRational hi) {
  if (lo < 0 || !(ExtRational(lo) < hi))
    throw Error(ErrorCode::DimensionMismatch, "interval needs 0 <= lo < hi");
  return {lo, hi};
}

/// α([a,b],[c,d]) = max(b,d) − min(a,c).
inline ExtRational interval_alpha(const RationalInterval& x, const RationalInterval& y) {
  return monus(std::max(x.hi, y.hi), ExtRational(std::min(x.lo, y.lo)));
}

/// β = 0 if max(b,d) = ∞, else max{0, min(b,d) − max(a,c)}.
inline ExtRational interval_beta(const RationalInterval& x, const RationalInterval& y) {
  if (std::max(x.hi, y.hi).is_infinite()) return ExtRational(0);
  return monus(std::min(x.hi, y.hi), ExtRational(std::max(x.lo, y.lo)));
}

inline SimilaritySpace<LawvereQuantale> interval_similarity(const std::vector<RationalInterval>& xs) {
  if (xs.empty()) throw Error(ErrorCode::DimensionMismatch, "no intervals given");
  SimilaritySpace<LawvereQuantale> S;
  S.base = std::make_shared<const LawvereQuantale>();
  S.values = Matrix<ExtRational>(xs.size(), ExtRational(0));
  for (const auto& x : xs) S.carrier.push_back(x.str());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) S.values(i, j) = interval_alpha(xs[i], xs[j]);
  return S;
}

inline DissimilaritySpace<LawvereQuantale> interval_dissimilarity(const std::vector<RationalInterval>& xs) {
  if (xs.empty()) throw Error(ErrorCode::DimensionMismatch, "no intervals given");
  DissimilaritySpace<LawvereQuantale> D;
  D.base = std::make_shared<const LawvereQuantale>();
  D.values = Matrix<ExtRational>(xs.size(), ExtRational(0));
  for (const auto& x : xs) D.carrier.push_back(x.str());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) D.values(i, j) = interval_beta(xs[i], xs[j]);
  return D;
}

/// Intervals with endpoints in multiples of 1/4 up to 10; about one in six
/// is unbounded above.
inline std::vector<RationalInterval> random_intervals(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<RationalInterval> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::int64_t a = static_cast<std::int64_t>(rng() % 40);
    std::int64_t len = 1 + static_cast<std::int64_t>(rng() % 24);
    bool unbounded = rng() % 6 == 0;
    Rational lo(a, 4);
    out.push_back({lo, unbounded ? ExtRational::infinity() : ExtRational(Rational(a + len, 4))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Builtin names.

namespace detail {
inline unsigned parse_param(const std::string& name, const std::string& p) {
  try {
    std::size_t used = 0;
    int v = std::stoi(p, &used);
    if (used != p.size() || v < 0) throw std::invalid_argument(p);
    return static_cast<unsigned>(v);
  } catch (const std::exception&) {
    throw Error(ErrorCode::UnknownName, "bad parameter in '" + name + "'");
  }
}
}  // namespace detail

/// Chains take their element count (`godel:3` is {0, 1/2, 1}); `boolean:n`
/// takes atoms, `rel:n` the size of the set, `discrete:n` and
/// `indiscrete:n` points of the space whose open-set frame is built.
inline Quantale quantale_by_name(const std::string& name) {
  auto colon = name.find(':');
  std::string head = name.substr(0, colon);
  bool has_param = colon != std::string::npos;
  auto param = [&]() {
    if (!has_param) throw Error(ErrorCode::UnknownName, "'" + head + "' needs a parameter, e.g. " + head + ":3");
    return detail::parse_param(name, name.substr(colon + 1));
  };
  auto chain = [&](TNorm t) {
    unsigned n = param();
    if (n < 2) throw Error(ErrorCode::UnknownName, "chains need at least 2 elements");
    return make_chain_tnorm(n - 1, t);
  };
  if (head == "boolean") return make_boolean(param());
  if (head == "godel") return chain(TNorm::Godel);
  if (head == "lukasiewicz") return chain(TNorm::Lukasiewicz);
  if (head == "nm" || head == "nilpotent_minimum") return chain(TNorm::NilpotentMinimum);
  if (head == "product") return chain(TNorm::ProductDiscretized);
  if (head == "c3" && !has_param) return make_c3();
  if (head == "rel") return make_rel(param());
  if (head == "sierpinski" && !has_param) return make_open_set_frame(sierpinski());
  if (head == "discrete") return make_open_set_frame(discrete_space(param()));
  if (head == "indiscrete") return make_open_set_frame(indiscrete_space(param()));
  throw Error(ErrorCode::UnknownName, "unknown quantale '" + name + "'");
}

/// Builtin instances in increasing size, up to `max_size` elements.
inline std::vector<std::string> zoo_names(std::size_t max_size) {
  static const std::vector<std::pair<std::string, std::size_t>> all = {
      {"boolean:0", 1},      {"boolean:1", 2},      {"godel:3", 3},       {"lukasiewicz:3", 3},
      {"nm:3", 3},           {"c3", 3},             {"sierpinski", 3},    {"indiscrete:2", 2},
      {"boolean:2", 4},      {"godel:4", 4},        {"lukasiewicz:4", 4}, {"nm:4", 4},
      {"discrete:2", 4},     {"godel:5", 5},        {"lukasiewicz:5", 5}, {"nm:5", 5},
      {"godel:6", 6},        {"lukasiewicz:6", 6},  {"nm:6", 6},          {"boolean:3", 8},
      {"lukasiewicz:8", 8},  {"godel:8", 8},        {"nm:8", 8},          {"rel:2", 16},
      {"boolean:4", 16},     {"lukasiewicz:16", 16}, {"boolean:5", 32},   {"discrete:5", 32},
  };
  std::vector<std::string> out;
  for (const auto& [n, s] : all)
    if (s <= max_size) out.push_back(n);
  return out;
}

}  // namespace qdiss
