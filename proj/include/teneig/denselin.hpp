#pragma once

// Small dense symmetric eigensolver and tangent-space basis.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "teneig/dense.hpp"
#include "teneig/error.hpp"

namespace teneig {

/// Eigenvalues ascending; column i of `vectors` belongs to values[i].
struct SymEig {
  Vector values;
  Matrix vectors;
};

/// Full eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps until the off-diagonal Frobenius norm drops to 1e-14 * |M|_F,
/// giving up with NumericalFailure after 100 sweeps.
inline SymEig sym_eig(const SymMatrix& m) {
  const std::size_t n = m.dim();
  if (n > 32) {
    throw Unsupported("sym_eig: dimension above 32");
  }
  if (!all_finite(m.values())) {
    throw InvalidInput("sym_eig: non-finite entry");
  }
  Matrix a(n, n);
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    v(i, i) = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = m(i, j);
    }
  }
  const double target = 1e-14 * m.frobenius_norm();
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) {
          s += a(i, j) * a(i, j);
        }
      }
    }
    return std::sqrt(s);
  };

  bool converged = off_norm() <= target;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) {
          continue;
        }
        // Rotation angle zeroing a(p,q) (Golub & Van Loan, Alg. 8.4.1).
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = off_norm() <= target;
  }
  if (!converged) {
    throw NumericalFailure("sym_eig: Jacobi sweeps did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  SymEig out{Vector(n), Matrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) {
      out.vectors(r, c) = v(r, order[c]);
    }
  }
  return out;
}

inline double lambda_min(const SymMatrix& m) { return sym_eig(m).values.front(); }
inline double lambda_max(const SymMatrix& m) { return sym_eig(m).values.back(); }

/// n x (n-1) matrix whose orthonormal columns span the complement of unit x.
///
/// Columns 2..n of the Householder reflector that maps x to a multiple of e_1.
inline Matrix orthonormal_complement(std::span<const double> x) {
  const std::size_t n = x.size();
  const double nrm = norm2(x);
  if (!(nrm > 1e-8)) {
    throw InvalidInput("orthonormal_complement: vector is (near) zero");
  }
  if (std::abs(nrm - 1.0) > 1e-10) {
    throw InvalidInput("orthonormal_complement: vector is not unit length");
  }
  Vector v(x.begin(), x.end());
  v[0] += (x[0] >= 0.0 ? 1.0 : -1.0) * nrm;
  const double vv = dot(v, v);
  Matrix u(n, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 1; j < n; ++j) {
      u(i, j - 1) = (i == j ? 1.0 : 0.0) - 2.0 * v[i] * v[j] / vv;
    }
  }
  return u;
}

/// U^T M U for U with orthonormal columns.
inline SymMatrix project(const SymMatrix& m, const Matrix& u) {
  const std::size_t n = u.rows();
  const std::size_t k = u.cols();
  if (m.dim() != n) {
    throw DimensionError("project: dimension mismatch");
  }
  Matrix mu(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < k; ++c) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        s += m(i, j) * u(j, c);
      }
      mu(i, c) = s;
    }
  }
  SymMatrix out(k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = r; c < k; ++c) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        s += u(i, r) * mu(i, c);
      }
      out.set(r, c, s);
    }
  }
  return out;
}

} // namespace teneig
