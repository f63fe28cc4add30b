#pragma once

#include "cmv/scalar_expr.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace cmv {

/// Components of a vector field on the coordinate basis d/dx_i.
struct CoordVec {
  std::vector<ScalarExpr> c;
};

/// Components of a vector field on the frame E_i.
struct FrameVec {
  std::vector<ScalarExpr> c;

  static FrameVec zero(std::size_t dim) { return FrameVec{std::vector<ScalarExpr>(dim)}; }
  static FrameVec unit(std::size_t dim, std::size_t i) {
    FrameVec v = zero(dim);
    v.c[i] = ScalarExpr(1);
    return v;
  }
  std::size_t dim() const { return c.size(); }
  bool is_zero() const {
    for (const auto& x : c) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  FrameVec& operator+=(const FrameVec& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  FrameVec& operator-=(const FrameVec& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
  friend FrameVec operator+(FrameVec a, const FrameVec& b) { return a += b; }
  friend FrameVec operator-(FrameVec a, const FrameVec& b) { return a -= b; }
  friend FrameVec operator*(const ScalarExpr& s, FrameVec v) {
    for (auto& x : v.c) x *= s;
    return v;
  }
};

/// Dense square matrix of scalars, row-major.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarExpr(1);
    return m;
  }

  std::size_t size() const { return n_; }
  ScalarExpr& operator()(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  const ScalarExpr& operator()(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }

  SquareMatrix transposed() const {
    SquareMatrix t(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix m(a.n_);
    for (std::size_t r = 0; r < a.n_; ++r) {
      for (std::size_t c = 0; c < a.n_; ++c) {
        ScalarExpr s;
        for (std::size_t k = 0; k < a.n_; ++k) s += a(r, k) * b(k, c);
        m(r, c) = s;
      }
    }
    return m;
  }

  /// Treats the matrix as a (1,1)-tensor acting on frame components:
  /// (A v)^r = sum_c A(r, c) v^c.
  FrameVec apply(const FrameVec& v) const {
    FrameVec out = FrameVec::zero(n_);
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) {
        if (!v.c[c].is_zero()) out.c[r] += (*this)(r, c) * v.c[c];
      }
    }
    return out;
  }

  /// Bilinear form value v^T A w.
  ScalarExpr form(const FrameVec& v, const FrameVec& w) const {
    ScalarExpr s;
    for (std::size_t r = 0; r < n_; ++r) {
      if (v.c[r].is_zero()) continue;
      for (std::size_t c = 0; c < n_; ++c) {
        if (!w.c[c].is_zero()) s += v.c[r] * (*this)(r, c) * w.c[c];
      }
    }
    return s;
  }

  FrameVec column(std::size_t c) const {
    FrameVec v = FrameVec::zero(n_);
    for (std::size_t r = 0; r < n_; ++r) v.c[r] = (*this)(r, c);
    return v;
  }

 private:
  std::size_t n_ = 0;
  std::vector<ScalarExpr> a_;
};

/// Dense rank-N array of values with equal extent dim in every slot.
template <std::size_t Rank, class T = ScalarExpr>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::size_t dim) : dim_(dim), data_(pow(dim)) {}

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return data_.size(); }

  template <class... I>
  T& operator()(I... idx) {
    static_assert(sizeof...(I) == Rank);
    return data_[flat({static_cast<std::size_t>(idx)...})];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    static_assert(sizeof...(I) == Rank);
    return data_[flat({static_cast<std::size_t>(idx)...})];
  }

  T& at(const std::array<std::size_t, Rank>& idx) { return data_[flat(idx)]; }
  const T& at(const std::array<std::size_t, Rank>& idx) const { return data_[flat(idx)]; }

  /// Index tuple of a flat position, first slot most significant.
  std::array<std::size_t, Rank> unflatten(std::size_t pos) const {
    std::array<std::size_t, Rank> idx{};
    for (std::size_t r = Rank; r-- > 0;) {
      idx[r] = pos % dim_;
      pos /= dim_;
    }
    return idx;
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

 private:
  std::size_t pow(std::size_t d) const {
    std::size_t n = 1;
    for (std::size_t r = 0; r < Rank; ++r) n *= d;
    return n;
  }
  std::size_t flat(const std::array<std::size_t, Rank>& idx) const {
    std::size_t pos = 0;
    for (std::size_t r = 0; r < Rank; ++r) pos = pos * dim_ + idx[r];
    return pos;
  }

  std::size_t dim_ = 0;
  std::vector<T> data_;
};

}  // namespace cmv
