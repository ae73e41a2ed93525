#pragma once

#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "error.hpp"

namespace qdiss {

/// The operations every quantale-valued check needs, shared by finite
/// (table-backed) quantales and closed-form carriers such as Lawvere's.
/// `ldd(r, q)` is r⧸q (left implication), `rdd(p, r)` is p⇘r.
template <class Q>
concept ResiduatedAlgebra = requires(const Q& q, typename Q::value_type a) {
  typename Q::value_type;
  { q.leq(a, a) } -> std::convertible_to<bool>;
  { q.join(a, a) } -> std::convertible_to<typename Q::value_type>;
  { q.meet(a, a) } -> std::convertible_to<typename Q::value_type>;
  { q.tensor(a, a) } -> std::convertible_to<typename Q::value_type>;
  { q.ldd(a, a) } -> std::convertible_to<typename Q::value_type>;
  { q.rdd(a, a) } -> std::convertible_to<typename Q::value_type>;
  { q.involute(a) } -> std::convertible_to<typename Q::value_type>;
  { q.bottom() } -> std::convertible_to<typename Q::value_type>;
  { q.top() } -> std::convertible_to<typename Q::value_type>;
  { q.unit() } -> std::convertible_to<typename Q::value_type>;
  { q.format(a) } -> std::convertible_to<std::string>;
  { Q::exhaustive } -> std::convertible_to<bool>;
};

/// Dense square matrix indexed by carrier positions.
template <class V>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t n, V fill) : n_(n), data_(n * n, fill) {}
  Matrix(std::size_t n, std::vector<V> data) : n_(n), data_(std::move(data)) {
    if (data_.size() != n_ * n_) throw Error(ErrorCode::DimensionMismatch, "matrix data is not n*n");
  }

  std::size_t size() const { return n_; }
  V& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const V& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<V>& data() const { return data_; }

  /// Principal submatrix on the given carrier positions.
  Matrix restrict(const std::vector<std::size_t>& keep) const {
    Matrix out(keep.size(), V{});
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = 0; j < keep.size(); ++j) out(i, j) = (*this)(keep[i], keep[j]);
    return out;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<V>()))> {
    using W = decltype(f(std::declval<V>()));
    std::vector<W> out;
    out.reserve(data_.size());
    for (const V& v : data_) out.push_back(f(v));
    return Matrix<W>(n_, std::move(out));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<V> data_;
};

}  // namespace qdiss
