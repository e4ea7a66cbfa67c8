#pragma once

// Small dense row-major matrices over exact scalars (field elements, truncated
// series). Elimination routines pivot on the first invertible entry, which is
// the right rule both over a field and over the local ring k[[t]]/(t^n).

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "frobdyn/error.hpp"

namespace frobdyn {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& zero, const T& one) {
    Matrix m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    Matrix<U> out(rows_, cols_, f(data_.front()));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = f((*this)(r, c));
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
  Matrix<T> out(a.rows(), b.cols(), a(0, 0) - a(0, 0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      T acc = a(i, 0) * b(0, j);
      for (std::size_t k = 1; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = std::move(acc);
    }
  return out;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shapes");
  std::vector<T> out;
  out.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T acc = a(i, 0) * v[0];
    for (std::size_t k = 1; k < a.cols(); ++k) acc += a(i, k) * v[k];
    out.push_back(std::move(acc));
  }
  return out;
}

/// Inverse by Gauss-Jordan elimination. Requires `is_invertible(x)` and
/// `x.inverse()` for the scalar. Returns nullopt when no invertible pivot exists
/// in some column.
template <class T>
std::optional<Matrix<T>> try_inverse(Matrix<T> a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  const T zero = a(0, 0) - a(0, 0);
  Matrix<T> inv = Matrix<T>::identity(n, zero, one_like(a(0, 0)));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = col; r < n; ++r) {
      if (is_invertible(a(r, col))) {
        piv = r;
        break;
      }
    }
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    }
    const T pinv = a(col, col).inverse();
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) = a(col, c) * pinv;
      inv(col, c) = inv(col, c) * pinv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const T factor = a(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= factor * a(col, c);
        inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

/// Determinant over a field by elimination.
template <class T>
T determinant(Matrix<T> a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  T det = one_like(a(0, 0));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = col; r < n; ++r) {
      if (is_invertible(a(r, col))) {
        piv = r;
        break;
      }
    }
    if (piv == n) return a(0, 0) - a(0, 0);
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
      det = -det;
    }
    det = det * a(col, col);
    const T pinv = a(col, col).inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      const T factor = a(r, col) * pinv;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

/// Rank over a field.
template <class T>
std::size_t rank(Matrix<T> a) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t piv = a.rows();
    for (std::size_t i = r; i < a.rows(); ++i) {
      if (is_invertible(a(i, col))) {
        piv = i;
        break;
      }
    }
    if (piv == a.rows()) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(piv, c), a(r, c));
    const T pinv = a(r, col).inverse();
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      const T factor = a(i, col) * pinv;
      for (std::size_t c = col; c < a.cols(); ++c) a(i, c) -= factor * a(r, c);
    }
    ++r;
  }
  return r;
}

}  // namespace frobdyn
