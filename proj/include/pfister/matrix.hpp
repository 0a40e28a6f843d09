#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pfister/domain.hpp"
#include "pfister/errors.hpp"

namespace pfister {

/// Dense row-major matrix over a domain scalar.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const S& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<S> column(std::size_t c) const {
    std::vector<S> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  Matrix transposed() const {
    Matrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.data_.reserve(data_.size());
    for (std::size_t c = 0; c < cols_; ++c)
      for (std::size_t r = 0; r < rows_; ++r) t.data_.push_back((*this)(r, c));
    return t;
  }

  /// Entrywise map into another scalar type.
  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const S&>()))> {
    using R = decltype(f(std::declval<const S&>()));
    std::vector<R> out;
    out.reserve(data_.size());
    for (const S& s : data_) out.push_back(f(s));
    Matrix<R> m;
    m.assign(rows_, cols_, std::move(out));
    return m;
  }

  void assign(std::size_t rows, std::size_t cols, std::vector<S> data) {
    if (data.size() != rows * cols) throw UsageError("matrix data size mismatch");
    rows_ = rows;
    cols_ = cols;
    data_ = std::move(data);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

template <ScalarDomain D>
Matrix<typename D::Scalar> identity_matrix(const D& dom, std::size_t n) {
  Matrix<typename D::Scalar> m(n, n, dom.constant(0));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = dom.constant(1);
  return m;
}

template <ScalarDomain D>
Matrix<typename D::Scalar> multiply(const D& dom, const Matrix<typename D::Scalar>& a,
                                    const Matrix<typename D::Scalar>& b) {
  if (a.cols() != b.rows()) throw UsageError("matrix product dimension mismatch");
  Matrix<typename D::Scalar> out(a.rows(), b.cols(), dom.constant(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (dom.is_exact_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (dom.is_exact_zero(b(k, j))) continue;
        out(i, j) += a(i, k) * b(k, j);
      }
    }
  }
  return out;
}

/// First entry where a and b differ, if any.
template <ScalarDomain D>
std::optional<std::pair<std::size_t, std::size_t>> first_difference(const D& dom,
                                                                    const Matrix<typename D::Scalar>& a,
                                                                    const Matrix<typename D::Scalar>& b) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!dom.equal(a(i, j), b(i, j))) return std::pair{i, j};
  return std::nullopt;
}

/// Determinant by Gaussian elimination with row pivoting. Meant for the
/// modular domain, where every nonzero residue is invertible.
template <ScalarDomain D>
typename D::Scalar determinant(const D& dom, Matrix<typename D::Scalar> m) {
  if (!m.square()) throw UsageError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  auto det = dom.constant(1);
  const auto zero = dom.constant(0);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && dom.equal(m(pivot, col), zero)) ++pivot;
    if (pivot == n) return zero;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
      det = -det;
    }
    det = det * m(col, col);
    const auto inv = dom.inverse(m(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const auto factor = m(r, col) * inv;
      for (std::size_t c = col; c < n; ++c) m(r, c) = m(r, c) - factor * m(col, c);
    }
  }
  return det;
}

}  // namespace pfister
