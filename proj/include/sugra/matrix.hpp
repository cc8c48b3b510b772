#pragma once

#include "sugra/scalar.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace sugra {

/// Dense matrix over an arbitrary field. Sizes here are small (spinor spaces
/// up to 128, metric blocks up to 11), so plain Gaussian elimination with
/// magnitude pivoting covers every use.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  friend Mat operator+(const Mat& x, const Mat& y) {
    Mat r(x.rows_, x.cols_);
    for (size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] + y.a_[k];
    return r;
  }
  friend Mat operator-(const Mat& x, const Mat& y) {
    Mat r(x.rows_, x.cols_);
    for (size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = x.a_[k] - y.a_[k];
    return r;
  }
  friend Mat operator-(const Mat& x) {
    Mat r(x.rows_, x.cols_);
    for (size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = -x.a_[k];
    return r;
  }
  friend Mat operator*(const T& s, const Mat& x) {
    Mat r(x.rows_, x.cols_);
    for (size_t k = 0; k < x.a_.size(); ++k) r.a_[k] = s * x.a_[k];
    return r;
  }
  friend Mat operator*(const Mat& x, const Mat& y) {
    assert(x.cols_ == y.rows_);
    Mat r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        const T& xik = x(i, k);
        if (ScalarTraits<T>::is_zero(xik)) continue;
        for (int j = 0; j < y.cols_; ++j) r(i, j) += xik * y(k, j);
      }
    return r;
  }
  Mat& operator+=(const Mat& y) { *this = *this + y; return *this; }
  Mat& operator-=(const Mat& y) { *this = *this - y; return *this; }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

  Mat transposed() const {
    Mat r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : a_) m = std::max(m, magnitude(v));
    return m;
  }

  /// Gauss-Jordan inverse. Throws on singular input.
  Mat inverse() const {
    assert(rows_ == cols_);
    int n = rows_;
    Mat a = *this, inv = identity(n);
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      double best = 0;
      for (int r = col; r < n; ++r) {
        double m = magnitude(a(r, col));
        if (m > best) { best = m; piv = r; }
      }
      if (piv < 0) throw std::runtime_error("Mat::inverse: singular matrix");
      a.swap_rows(col, piv);
      inv.swap_rows(col, piv);
      T d = a(col, col);
      for (int j = 0; j < n; ++j) { a(col, j) = a(col, j) / d; inv(col, j) = inv(col, j) / d; }
      for (int r = 0; r < n; ++r) {
        if (r == col) continue;
        T f = a(r, col);
        if (ScalarTraits<T>::is_zero(f)) continue;
        for (int j = 0; j < n; ++j) {
          a(r, j) = a(r, j) - f * a(col, j);
          inv(r, j) = inv(r, j) - f * inv(col, j);
        }
      }
    }
    return inv;
  }

  /// Solve A x = b for a square A (b may have several columns).
  Mat solve(const Mat& b) const { return inverse() * b; }

  /// Rank by full-pivot elimination. For inexact scalars, entries whose
  /// magnitude falls below tol * (initial max entry) count as zero.
  int rank(double tol = 1e-10) const {
    Mat a = *this;
    double scale = ScalarTraits<T>::exact ? 0.0 : a.max_abs();
    double thresh = ScalarTraits<T>::exact ? 0.0 : tol * std::max(scale, 1.0);
    int rk = 0;
    std::vector<bool> used_row(rows_, false);
    for (int col = 0; col < cols_; ++col) {
      int piv = -1;
      double best = thresh;
      for (int r = 0; r < rows_; ++r) {
        if (used_row[r]) continue;
        double m = magnitude(a(r, col));
        if (m > best) { best = m; piv = r; }
      }
      if (piv < 0) continue;
      used_row[piv] = true;
      ++rk;
      for (int r = 0; r < rows_; ++r) {
        if (r == piv) continue;
        if (ScalarTraits<T>::is_zero(a(r, col))) continue;
        T f = a(r, col) / a(piv, col);
        for (int j = col; j < cols_; ++j) a(r, j) = a(r, j) - f * a(piv, j);
      }
    }
    return rk;
  }

  /// Basis of the right nullspace, returned as matrix columns.
  Mat nullspace(double tol = 1e-10) const {
    Mat a = *this;
    double thresh = ScalarTraits<T>::exact ? 0.0 : tol * std::max(a.max_abs(), 1.0);
    std::vector<int> pivot_col_of_row(rows_, -1);
    std::vector<bool> col_is_pivot(cols_, false);
    int row = 0;
    for (int col = 0; col < cols_ && row < rows_; ++col) {
      int piv = -1;
      double best = thresh;
      for (int r = row; r < rows_; ++r) {
        double m = magnitude(a(r, col));
        if (m > best) { best = m; piv = r; }
      }
      if (piv < 0) continue;
      a.swap_rows(row, piv);
      T d = a(row, col);
      for (int j = col; j < cols_; ++j) a(row, j) = a(row, j) / d;
      for (int r = 0; r < rows_; ++r) {
        if (r == row) continue;
        T f = a(r, col);
        if (ScalarTraits<T>::is_zero(f)) continue;
        for (int j = col; j < cols_; ++j) a(r, j) = a(r, j) - f * a(row, j);
      }
      pivot_col_of_row[row] = col;
      col_is_pivot[col] = true;
      ++row;
    }
    int nfree = 0;
    for (int c = 0; c < cols_; ++c)
      if (!col_is_pivot[c]) ++nfree;
    Mat basis(cols_, nfree);
    int k = 0;
    for (int c = 0; c < cols_; ++c) {
      if (col_is_pivot[c]) continue;
      basis(c, k) = T(1);
      for (int r = 0; r < row; ++r) basis(pivot_col_of_row[r], k) = -a(r, c);
      ++k;
    }
    return basis;
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  /// Vertical stack.
  static Mat vstack(const std::vector<Mat>& parts) {
    int rows = 0, cols = parts.empty() ? 0 : parts[0].cols();
    for (const auto& p : parts) rows += p.rows();
    Mat r(rows, cols);
    int at = 0;
    for (const auto& p : parts) {
      for (int i = 0; i < p.rows(); ++i)
        for (int j = 0; j < cols; ++j) r(at + i, j) = p(i, j);
      at += p.rows();
    }
    return r;
  }

  friend Mat kron(const Mat& x, const Mat& y) {
    Mat r(x.rows_ * y.rows_, x.cols_ * y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int j = 0; j < x.cols_; ++j) {
        if (ScalarTraits<T>::is_zero(x(i, j))) continue;
        for (int p = 0; p < y.rows_; ++p)
          for (int q = 0; q < y.cols_; ++q)
            r(i * y.rows_ + p, j * y.cols_ + q) = x(i, j) * y(p, q);
      }
    return r;
  }

  T determinant() const {
    assert(rows_ == cols_);
    Mat a = *this;
    T det(1);
    for (int col = 0; col < rows_; ++col) {
      int piv = -1;
      double best = 0;
      for (int r = col; r < rows_; ++r) {
        double m = magnitude(a(r, col));
        if (m > best) { best = m; piv = r; }
      }
      if (piv < 0) return T(0);
      if (piv != col) { a.swap_rows(col, piv); det = -det; }
      det = det * a(col, col);
      for (int r = col + 1; r < rows_; ++r) {
        if (ScalarTraits<T>::is_zero(a(r, col))) continue;
        T f = a(r, col) / a(col, col);
        for (int j = col; j < rows_; ++j) a(r, j) = a(r, j) - f * a(col, j);
      }
    }
    return det;
  }

  T trace() const {
    T t{};
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

/// Realification of a complex matrix: the 2n x 2n real matrix of the map
/// z -> A z + B conj(z) acting on (Re, Im) stacked coordinates.
template <class T>
Mat<T> realify(const Mat<Cx<T>>& a, const Mat<Cx<T>>& b) {
  int n = a.rows(), m = a.cols();
  Mat<T> r(2 * n, 2 * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      // linear part: (x+iy) -> (re a x - im a y) + i(im a x + re a y)
      r(i, j) += a(i, j).re;
      r(i, j + m) += -a(i, j).im;
      r(i + n, j) += a(i, j).im;
      r(i + n, j + m) += a(i, j).re;
      // antilinear part acts on conj(z) = x - iy
      r(i, j) += b(i, j).re;
      r(i, j + m) += b(i, j).im;
      r(i + n, j) += b(i, j).im;
      r(i + n, j + m) += -b(i, j).re;
    }
  return r;
}

template <class T>
Mat<T> realify(const Mat<Cx<T>>& a) {
  return realify(a, Mat<Cx<T>>(a.rows(), a.cols()));
}

}  // namespace sugra
