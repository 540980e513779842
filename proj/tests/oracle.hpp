#pragma once

// Brute-force reference computations used only by the tests. They work on
// the full n^m array with explicit index loops and share no code with the
// library kernels.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "teneig/dense.hpp"
#include "teneig/random.hpp"
#include "teneig/symtensor.hpp"

namespace oracle {

using teneig::Vector;

inline std::vector<std::size_t> unflatten(std::size_t off, std::size_t m, std::size_t n) {
  std::vector<std::size_t> idx(m);
  for (std::size_t k = m; k-- > 0;) {
    idx[k] = off % n;
    off /= n;
  }
  return idx;
}

inline std::size_t flatten(const std::vector<std::size_t>& idx, std::size_t n) {
  std::size_t off = 0;
  for (std::size_t i : idx) {
    off = off * n + i;
  }
  return off;
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) {
    r *= b;
  }
  return r;
}

/// Average over every permutation of the index positions (m! of them).
inline std::vector<double> symmetrize_by_permutations(const std::vector<double>& raw, std::size_t m, std::size_t n) {
  std::vector<double> out(raw.size(), 0.0);
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t count = 0;
  do {
    ++count;
    for (std::size_t off = 0; off < raw.size(); ++off) {
      const auto idx = unflatten(off, m, n);
      std::vector<std::size_t> p(m);
      for (std::size_t k = 0; k < m; ++k) {
        p[k] = idx[perm[k]];
      }
      out[off] += raw[flatten(p, n)];
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (auto& v : out) {
    v /= static_cast<double>(count);
  }
  return out;
}

/// A x^(m-1) as sum over all n^m entries.
inline Vector axm1(const teneig::SymTensor& a, const Vector& x) {
  const std::size_t m = a.order();
  const std::size_t n = a.dim();
  Vector y(n, 0.0);
  const auto vals = a.values();
  for (std::size_t off = 0; off < vals.size(); ++off) {
    const auto idx = unflatten(off, m, n);
    double prod = vals[off];
    for (std::size_t k = 1; k < m; ++k) {
      prod *= x[idx[k]];
    }
    y[idx[0]] += prod;
  }
  return y;
}

/// A x^(m-2) as an n x n row-major array.
inline std::vector<double> axm2(const teneig::SymTensor& a, const Vector& x) {
  const std::size_t m = a.order();
  const std::size_t n = a.dim();
  std::vector<double> y(n * n, 0.0);
  const auto vals = a.values();
  for (std::size_t off = 0; off < vals.size(); ++off) {
    const auto idx = unflatten(off, m, n);
    double prod = vals[off];
    for (std::size_t k = 2; k < m; ++k) {
      prod *= x[idx[k]];
    }
    y[idx[0] * n + idx[1]] += prod;
  }
  return y;
}

inline double axm(const teneig::SymTensor& a, const Vector& x) {
  const Vector y = axm1(a, x);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += y[i] * x[i];
  }
  return s;
}

inline teneig::SymTensor random_symmetric(std::size_t m, std::size_t n, teneig::Rng& rng) {
  std::vector<double> raw(ipow(n, m));
  for (auto& v : raw) {
    v = rng.normal();
  }
  return teneig::SymTensor(m, n, symmetrize_by_permutations(raw, m, n));
}

inline Vector random_unit(std::size_t n, teneig::Rng& rng) {
  Vector x(n);
  double s = 0.0;
  for (auto& v : x) {
    v = rng.normal();
    s += v * v;
  }
  for (auto& v : x) {
    v /= std::sqrt(s);
  }
  return x;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

/// min(|x - y|, |x + y|)
inline double sign_free_distance(const Vector& x, const Vector& y) {
  double dm = 0.0;
  double dp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dm += (x[i] - y[i]) * (x[i] - y[i]);
    dp += (x[i] + y[i]) * (x[i] + y[i]);
  }
  return std::sqrt(std::min(dm, dp));
}

} // namespace oracle
