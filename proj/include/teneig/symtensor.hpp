#pragma once

// Dense symmetric tensors and the three tensor-vector products.
//
// Storage is the full n^m array in row-major order: the 0-based index tuple
// (i_1, ..., i_m) lives at offset sum_k i_k * n^(m-k). A packed layout holding
// only the n-multichoose-m unique entries would cut the product cost to
// O(n^m / m!), but at the sizes this library targets (n <= 32, m <= 8, and in
// practice n^m of a few thousand) the dense loops are fast enough and much
// easier to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "teneig/dense.hpp"
#include "teneig/error.hpp"
#include "teneig/random.hpp"

namespace teneig {

inline constexpr std::size_t kMaxOrder = 8;
inline constexpr std::size_t kMaxDim = 32;
inline constexpr std::size_t kMaxEntries = std::size_t{1} << 24;

namespace detail {

inline std::size_t checked_size(std::size_t order, std::size_t dim) {
  if (order == 0 || dim == 0) {
    throw DimensionError("tensor order and dimension must be positive");
  }
  if (order > kMaxOrder || dim > kMaxDim) {
    throw Unsupported("tensor order " + std::to_string(order) + " / dimension " + std::to_string(dim) +
                      " exceeds the supported range (order <= 8, dim <= 32)");
  }
  std::size_t size = 1;
  for (std::size_t k = 0; k < order; ++k) {
    size *= dim;
    if (size > kMaxEntries) {
      throw Unsupported("tensor has more than 2^24 entries");
    }
  }
  return size;
}

inline void decode(std::size_t offset, std::size_t dim, std::span<std::size_t> idx) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    idx[k] = offset % dim;
    offset /= dim;
  }
}

inline std::size_t encode(std::span<const std::size_t> idx, std::size_t dim) {
  std::size_t off = 0;
  for (std::size_t i : idx) {
    off = off * dim + i;
  }
  return off;
}

/// For every offset, the offset of its sorted (canonical) index tuple.
inline std::vector<std::size_t> canonical_offsets(std::size_t order, std::size_t dim, std::size_t size) {
  std::vector<std::size_t> canon(size);
  std::vector<std::size_t> idx(order);
  for (std::size_t off = 0; off < size; ++off) {
    decode(off, dim, idx);
    std::sort(idx.begin(), idx.end());
    canon[off] = encode(idx, dim);
  }
  return canon;
}

/// Replaces each entry with the mean over its permutation orbit. Averaging
/// over all m! index permutations weights every orbit member equally, so the
/// two are the same operation.
inline void orbit_average(std::size_t order, std::size_t dim, std::vector<double>& values) {
  const auto canon = canonical_offsets(order, dim, values.size());
  std::vector<double> sum(values.size(), 0.0);
  std::vector<std::uint32_t> count(values.size(), 0);
  for (std::size_t off = 0; off < values.size(); ++off) {
    sum[canon[off]] += values[off];
    ++count[canon[off]];
  }
  for (std::size_t off = 0; off < values.size(); ++off) {
    values[off] = sum[canon[off]] / count[canon[off]];
  }
}

} // namespace detail

/// Dense, real, symmetric tensor of order m and dimension n.
class SymTensor {
public:
  SymTensor() = default;

  /// Validates the entries. Round-off asymmetry (<= 1e-12 relative to the
  /// largest entry) is averaged away; larger asymmetry throws InvalidInput
  /// and must go through symmetrize() explicitly.
  SymTensor(std::size_t order, std::size_t dim, std::vector<double> values)
      : order_(order), dim_(dim), values_(std::move(values)) {
    const std::size_t size = detail::checked_size(order_, dim_);
    if (values_.size() != size) {
      throw DimensionError("SymTensor: expected " + std::to_string(size) + " values, got " +
                           std::to_string(values_.size()));
    }
    if (!all_finite(values_)) {
      throw InvalidInput("SymTensor: non-finite entry");
    }
    const double asym = max_asymmetry();
    double scale = 1.0;
    for (double v : values_) {
      scale = std::max(scale, std::abs(v));
    }
    if (asym > 1e-12 * scale) {
      throw InvalidInput("SymTensor: entries are not symmetric (max deviation " + std::to_string(asym) +
                         "); call symmetrize() first");
    }
    if (asym > 0.0) {
      detail::orbit_average(order_, dim_, values_);
    }
  }

  static SymTensor zeros(std::size_t order, std::size_t dim) {
    return SymTensor(order, dim, std::vector<double>(detail::checked_size(order, dim), 0.0));
  }

  std::size_t order() const noexcept { return order_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

  /// Entry at 0-based indices.
  double operator()(std::span<const std::size_t> idx) const {
    if (idx.size() != order_) {
      throw DimensionError("SymTensor: wrong number of indices");
    }
    for (std::size_t i : idx) {
      if (i >= dim_) {
        throw DimensionError("SymTensor: index out of range");
      }
    }
    return values_[detail::encode(idx, dim_)];
  }

  double operator()(std::initializer_list<std::size_t> idx) const {
    return (*this)(std::span<const std::size_t>(idx.begin(), idx.size()));
  }

  friend bool operator==(const SymTensor&, const SymTensor&) = default;

private:
  double max_asymmetry() const {
    const auto canon = detail::canonical_offsets(order_, dim_, values_.size());
    double worst = 0.0;
    for (std::size_t off = 0; off < values_.size(); ++off) {
      worst = std::max(worst, std::abs(values_[off] - values_[canon[off]]));
    }
    return worst;
  }

  std::size_t order_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

/// Averages a raw order-m array over all index permutations.
inline SymTensor symmetrize(std::size_t order, std::size_t dim, std::span<const double> raw) {
  const std::size_t size = detail::checked_size(order, dim);
  if (raw.size() != size) {
    throw DimensionError("symmetrize: expected " + std::to_string(size) + " values, got " +
                         std::to_string(raw.size()));
  }
  if (!all_finite(raw)) {
    throw InvalidInput("symmetrize: non-finite entry");
  }
  std::vector<double> values(raw.begin(), raw.end());
  detail::orbit_average(order, dim, values);
  return SymTensor(order, dim, std::move(values));
}

/// The three products A x^m, A x^(m-1) and A x^(m-2) evaluated together.
struct Contraction {
  SymMatrix xm2;
  Vector xm1;
  double xm = 0.0;
};

/// A x^(m-2): contracts the trailing m-2 modes with x.
inline SymMatrix ttv_m2(const SymTensor& a, std::span<const double> x) {
  const std::size_t n = a.dim();
  const std::size_t m = a.order();
  if (x.size() != n) {
    throw DimensionError("ttv: vector length " + std::to_string(x.size()) + " does not match tensor dimension " +
                         std::to_string(n));
  }
  if (m < 2) {
    throw Unsupported("ttv: tensor order must be at least 2");
  }
  // weights[j] = x_{j_1} ... x_{j_(m-2)} for the trailing multi-index j.
  std::vector<double> weights{1.0};
  for (std::size_t k = 2; k < m; ++k) {
    std::vector<double> next(weights.size() * n);
    for (std::size_t j = 0; j < weights.size(); ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        next[j * n + i] = weights[j] * x[i];
      }
    }
    weights = std::move(next);
  }
  const std::size_t block = weights.size();
  const auto vals = a.values();
  SymMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double* p = vals.data() + (i * n + j) * block;
      double s = 0.0;
      for (std::size_t t = 0; t < block; ++t) {
        s += p[t] * weights[t];
      }
      out.set(i, j, s);
    }
  }
  return out;
}

inline Contraction contract(const SymTensor& a, std::span<const double> x) {
  Contraction c;
  c.xm2 = ttv_m2(a, x);
  c.xm1 = c.xm2 * x;
  c.xm = dot(c.xm1, x);
  return c;
}

/// A x^(m-1) = (A x^(m-2)) x.
inline Vector ttv_m1(const SymTensor& a, std::span<const double> x) { return ttv_m2(a, x) * x; }

/// A x^m = x^T (A x^(m-1)).
inline double ttv_m(const SymTensor& a, std::span<const double> x) { return contract(a, x).xm; }

/// Identity tensor E with E x^(m-1) = |x|^(m-2) x: the symmetrization of
/// delta(i1,i2) delta(i3,i4) ... delta(i_(m-1),i_m).
inline SymTensor identity_tensor(std::size_t order, std::size_t dim) {
  if (order < 2 || order % 2 != 0) {
    throw Unsupported("identity_tensor: order must be even and at least 2");
  }
  const std::size_t size = detail::checked_size(order, dim);
  std::vector<double> raw(size, 0.0);
  std::vector<std::size_t> idx(order);
  for (std::size_t off = 0; off < size; ++off) {
    detail::decode(off, dim, idx);
    bool paired = true;
    for (std::size_t k = 0; k < order && paired; k += 2) {
      paired = idx[k] == idx[k + 1];
    }
    raw[off] = paired ? 1.0 : 0.0;
  }
  return symmetrize(order, dim, raw);
}

/// Diagonal tensor with ones where all indices coincide.
inline SymTensor delta_tensor(std::size_t order, std::size_t dim) {
  if (order < 2) {
    throw Unsupported("delta_tensor: order must be at least 2");
  }
  const std::size_t size = detail::checked_size(order, dim);
  std::vector<double> values(size, 0.0);
  std::vector<std::size_t> idx(order, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    std::fill(idx.begin(), idx.end(), i);
    values[detail::encode(idx, dim)] = 1.0;
  }
  return SymTensor(order, dim, std::move(values));
}

/// Symmetrized outer product D o D o ... o D (order/2 factors). The default
/// order 4 is the D-eigenpair tensor; order 2 returns D; D = I gives the
/// identity tensor.
inline SymTensor sym_outer_matrix(const SymMatrix& d, std::size_t order = 4) {
  if (order < 2 || order % 2 != 0) {
    throw Unsupported("sym_outer_matrix: order must be even and at least 2");
  }
  const std::size_t n = d.dim();
  const std::size_t size = detail::checked_size(order, n);
  std::vector<double> raw(size);
  std::vector<std::size_t> idx(order);
  for (std::size_t off = 0; off < size; ++off) {
    detail::decode(off, n, idx);
    double v = 1.0;
    for (std::size_t k = 0; k < order; k += 2) {
      v *= d(idx[k], idx[k + 1]);
    }
    raw[off] = v;
  }
  return symmetrize(order, n, raw);
}

/// Multiplies every mode of e by s: b_{i..} = sum_j e_{j..} s_{i1 j1} ... s_{im jm}.
inline SymTensor ttm_all(const SymTensor& e, const SymMatrix& s) {
  const std::size_t n = e.dim();
  const std::size_t m = e.order();
  if (s.dim() != n) {
    throw DimensionError("ttm_all: matrix dimension does not match tensor dimension");
  }
  std::vector<double> cur(e.values().begin(), e.values().end());
  std::vector<double> next(cur.size());
  // Mode k has stride n^(m-1-k).
  std::size_t stride = cur.size();
  for (std::size_t k = 0; k < m; ++k) {
    stride /= n;
    const std::size_t outer = cur.size() / (stride * n);
    for (std::size_t o = 0; o < outer; ++o) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = o * stride * n + inner;
        for (std::size_t i = 0; i < n; ++i) {
          double acc = 0.0;
          for (std::size_t j = 0; j < n; ++j) {
            acc += s(i, j) * cur[base + j * stride];
          }
          next[base + i * stride] = acc;
        }
      }
    }
    std::swap(cur, next);
  }
  return SymTensor(m, n, std::move(cur));
}

/// Random orthonormal n x n matrix: Gram-Schmidt on a standard normal matrix,
/// which is the Q factor of a QR decomposition whose R has positive diagonal.
inline Matrix random_orthonormal(std::size_t n, Rng& rng) {
  Matrix q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      q(i, j) = rng.normal();
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    // Two passes of modified Gram-Schmidt keep the columns orthogonal to
    // working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < j; ++p) {
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          r += q(i, p) * q(i, j);
        }
        for (std::size_t i = 0; i < n; ++i) {
          q(i, j) -= r * q(i, p);
        }
      }
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nrm += q(i, j) * q(i, j);
    }
    nrm = std::sqrt(nrm);
    if (!(nrm > 1e-12)) {
      throw NumericalFailure("random_orthonormal: rank-deficient draw");
    }
    for (std::size_t i = 0; i < n; ++i) {
      q(i, j) /= nrm;
    }
  }
  return q;
}

struct RandomPdTensor {
  SymTensor tensor;
  SymMatrix s;
  Vector mu;  ///< eigenvalues of s
  Matrix u;   ///< column i is the unit eigenvector of s for mu[i]
};

/// Positive definite B = (E, S, ..., S) with S = U diag(mu) U^T. Each mu_i is
/// uniform on [-1, -gamma] U [gamma, 1], so B y^m >= min_i mu_i^m >= gamma^m
/// on the unit sphere.
inline RandomPdTensor random_pd_tensor(std::size_t order, std::size_t dim, double gamma, std::uint64_t seed) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ParameterError("random_pd_tensor: gamma must lie in (0, 1)");
  }
  if (order < 2 || order % 2 != 0) {
    throw Unsupported("random_pd_tensor: order must be even and at least 2");
  }
  Rng rng(seed);
  RandomPdTensor out;
  out.u = random_orthonormal(dim, rng);
  out.mu.resize(dim);
  for (auto& mu : out.mu) {
    const double mag = rng.uniform(gamma, 1.0);
    mu = rng.uniform01() < 0.5 ? -mag : mag;
  }
  SymMatrix s(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        acc += out.u(i, k) * out.mu[k] * out.u(j, k);
      }
      s.set(i, j, acc);
    }
  }
  out.s = s;
  out.tensor = ttm_all(identity_tensor(order, dim), s);
  return out;
}

} // namespace teneig
