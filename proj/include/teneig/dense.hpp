#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "teneig/error.hpp"

namespace teneig {

using Vector = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionError("dot: length mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline Vector normalized(std::span<const double> a) {
  const double nrm = norm2(a);
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    throw InvalidInput("cannot normalize a zero or non-finite vector");
  }
  Vector out(a.begin(), a.end());
  for (auto& v : out) {
    v /= nrm;
  }
  return out;
}

inline bool all_finite(std::span<const double> a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

/// Dense row-major matrix of arbitrary shape.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      c[i] = (*this)(i, j);
    }
    return c;
  }

  std::span<const double> data() const noexcept { return data_; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Real symmetric n x n matrix. Writes go through set(), which keeps both
/// triangles equal.
class SymMatrix {
public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  /// Row-major values. Asymmetry up to 1e-12 (scaled by the largest entry)
  /// is averaged away; anything larger is rejected.
  SymMatrix(std::size_t n, std::vector<double> values) : n_(n), data_(std::move(values)) {
    if (data_.size() != n_ * n_) {
      throw DimensionError("SymMatrix: expected " + std::to_string(n_ * n_) + " values, got " +
                           std::to_string(data_.size()));
    }
    if (!all_finite(data_)) {
      throw InvalidInput("SymMatrix: non-finite entry");
    }
    double scale = 1.0;
    for (double v : data_) {
      scale = std::max(scale, std::abs(v));
    }
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        const double a = data_[i * n_ + j];
        const double b = data_[j * n_ + i];
        if (std::abs(a - b) > 1e-12 * scale) {
          throw InvalidInput("SymMatrix: entries (" + std::to_string(i) + "," + std::to_string(j) +
                             ") are not symmetric");
        }
        const double avg = 0.5 * (a + b);
        data_[i * n_ + j] = avg;
        data_[j * n_ + i] = avg;
      }
    }
  }

  static SymMatrix identity(std::size_t n) {
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      m.set(i, i, 1.0);
    }
    return m;
  }

  /// a b^T + b a^T
  static SymMatrix sym_outer(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
      throw DimensionError("sym_outer: length mismatch");
    }
    SymMatrix m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = i; j < a.size(); ++j) {
        m.set(i, j, a[i] * b[j] + b[i] * a[j]);
      }
    }
    return m;
  }

  std::size_t dim() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<const double> values() const noexcept { return data_; }

  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  Vector operator*(std::span<const double> x) const {
    if (x.size() != n_) {
      throw DimensionError("SymMatrix * vector: length mismatch");
    }
    Vector y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        s += data_[i * n_ + j] * x[j];
      }
      y[i] = s;
    }
    return y;
  }

  SymMatrix& operator+=(const SymMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) {
      data_[k] += o.data_[k];
    }
    return *this;
  }

  SymMatrix& operator-=(const SymMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) {
      data_[k] -= o.data_[k];
    }
    return *this;
  }

  SymMatrix& operator*=(double c) {
    for (auto& v : data_) {
      v *= c;
    }
    return *this;
  }

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double c, SymMatrix a) { return a *= c; }

  double frobenius_norm() const { return norm2(data_); }

private:
  void check_same(const SymMatrix& o) const {
    if (o.n_ != n_) {
      throw DimensionError("SymMatrix: dimension mismatch");
    }
  }

  std::size_t n_ = 0;
  std::vector<double> data_;
};

} // namespace teneig
