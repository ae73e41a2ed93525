// Reference computations that deliberately avoid the library's cached tables.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qdiss/qdiss.hpp"

namespace oracle {

using qdiss::Element;
using qdiss::Quantale;

// Greatest p with p⊗q ≤ r, found as the unique maximal element of the
// solution set. Returns nullopt when the set has no greatest element.
inline std::optional<Element> left_residual(const Quantale& Q, Element r, Element q) {
  std::vector<Element> sols;
  for (Element p = 0; p < Q.size(); ++p)
    if (Q.leq(Q.tensor(p, q), r)) sols.push_back(p);
  for (Element m : sols) {
    bool greatest = true;
    for (Element p : sols) greatest = greatest && Q.leq(p, m);
    if (greatest) return m;
  }
  return std::nullopt;
}

inline std::optional<Element> right_residual(const Quantale& Q, Element p, Element r) {
  std::vector<Element> sols;
  for (Element q = 0; q < Q.size(); ++q)
    if (Q.leq(Q.tensor(p, q), r)) sols.push_back(q);
  for (Element m : sols) {
    bool greatest = true;
    for (Element q : sols) greatest = greatest && Q.leq(q, m);
    if (greatest) return m;
  }
  return std::nullopt;
}

// On the chain {0..s}: Łukasiewicz r⧸q = min(s, s - q + r), Gödel r⧸q = s if q ≤ r else r.
inline std::size_t lukasiewicz_implication(std::size_t s, std::size_t q, std::size_t r) {
  return q <= r ? s : s - q + r;
}
inline std::size_t godel_implication(std::size_t s, std::size_t q, std::size_t r) { return q <= r ? s : r; }

// Relations on {0,1} as 4-bit masks, bit x*2+y for x R y; composition
// applies R first.
inline std::uint32_t rel2_compose(std::uint32_t S, std::uint32_t R) {
  std::uint32_t out = 0;
  for (unsigned x = 0; x < 2; ++x)
    for (unsigned y = 0; y < 2; ++y)
      for (unsigned z = 0; z < 2; ++z)
        if ((R >> (x * 2 + y) & 1u) && (S >> (y * 2 + z) & 1u)) out |= 1u << (x * 2 + z);
  return out;
}

// Diagonal membership straight from the definition, using the brute residuals.
inline bool diagonal(const Quantale& Q, Element p, Element q, Element d) {
  auto a = left_residual(Q, d, p);
  auto b = right_residual(Q, q, d);
  return a && b && Q.tensor(*a, p) == d && Q.tensor(q, *b) == d;
}

inline bool back_diagonal(const Quantale& Q, Element p, Element q, Element b) {
  auto x = right_residual(Q, b, p);
  if (!x) return false;
  auto y = left_residual(Q, p, *x);
  auto u = left_residual(Q, q, b);
  if (!y || !u) return false;
  auto v = right_residual(Q, *u, q);
  return v && *y == b && *v == b;
}

// Number of associative, unital, join-preserving tensors on the n-chain,
// counted over raw tables without any deduplication.
inline std::size_t naive_chain_structures(std::size_t n) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n * n; ++i) total *= n;
  std::size_t count = 0;
  std::vector<std::size_t> t(n * n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (auto& v : t) {
      v = c % n;
      c /= n;
    }
    auto T = [&](std::size_t a, std::size_t b) { return t[a * n + b]; };
    bool ok = true;
    // on a chain join is max; bottom must absorb
    for (std::size_t a = 0; a < n && ok; ++a) {
      if (T(a, 0) != 0 || T(0, a) != 0) ok = false;
      for (std::size_t b = 0; b < n && ok; ++b)
        for (std::size_t e = 0; e < n && ok; ++e) {
          if (T(a, std::max(b, e)) != std::max(T(a, b), T(a, e))) ok = false;
          if (T(std::max(b, e), a) != std::max(T(b, a), T(e, a))) ok = false;
          if (T(T(a, b), e) != T(a, T(b, e))) ok = false;
        }
    }
    if (!ok) continue;
    for (std::size_t u = 0; u < n; ++u) {
      bool unit = true;
      for (std::size_t a = 0; a < n; ++a) unit = unit && T(u, a) == a && T(a, u) == a;
      if (unit) {
        ++count;
        break;
      }
    }
  }
  return count;
}

}  // namespace oracle
