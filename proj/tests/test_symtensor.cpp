#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "teneig/denselin.hpp"
#include "teneig/problems.hpp"
#include "teneig/symtensor.hpp"

using namespace teneig;

namespace {

std::vector<double> random_raw(std::size_t m, std::size_t n, Rng& rng) {
  std::vector<double> raw(oracle::ipow(n, m));
  for (auto& v : raw) {
    v = rng.normal();
  }
  return raw;
}

double norm(const Vector& x) { return std::sqrt(dot(x, x)); }

} // namespace

TEST(SymTensor, SymmetrizeMatchesPermutationAverage) {
  Rng rng(1);
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{4, 3}, {3, 4}, {5, 2}, {2, 5}}) {
    const auto raw = random_raw(m, n, rng);
    const SymTensor t = symmetrize(m, n, raw);
    const auto ref = oracle::symmetrize_by_permutations(raw, m, n);
    const std::vector<double> got(t.values().begin(), t.values().end());
    EXPECT_LT(oracle::max_abs_diff(got, ref), 1e-14) << "m=" << m << " n=" << n;
  }
}

TEST(SymTensor, SymmetrizeIsIdempotent) {
  Rng rng(2);
  const SymTensor t = symmetrize(4, 3, random_raw(4, 3, rng));
  const SymTensor u = symmetrize(4, 3, t.values());
  EXPECT_LT(oracle::max_abs_diff({t.values().begin(), t.values().end()}, {u.values().begin(), u.values().end()}),
            1e-15);
}

TEST(SymTensor, ConstructorValidation) {
  EXPECT_THROW(SymTensor(4, 3, std::vector<double>(80)), DimensionError);
  std::vector<double> v(81, 0.0);
  v[1] = 1.0;  // (0,0,0,1) without its permutations
  EXPECT_THROW(SymTensor(4, 3, v), InvalidInput);
  v[1] = std::numeric_limits<double>::infinity();
  EXPECT_THROW(SymTensor(4, 3, v), InvalidInput);
  EXPECT_THROW(SymTensor::zeros(9, 2), Unsupported);
  EXPECT_THROW(SymTensor::zeros(4, 33), Unsupported);
}

TEST(SymTensor, EntryAccess) {
  const SymTensor a = parse_tensor(data::kKore02A);
  EXPECT_DOUBLE_EQ((a({0, 0, 0, 0})), 0.2883);
  EXPECT_DOUBLE_EQ((a({2, 2, 2, 2})), -0.3054);
  EXPECT_EQ((a({0, 1, 2, 2})), (a({2, 1, 2, 0})));
  EXPECT_THROW((a({0, 0, 0})), DimensionError);
  EXPECT_THROW((a({0, 0, 0, 3})), DimensionError);
}

TEST(Ttv, MatchesBruteForce) {
  Rng rng(3);
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{2, 4}, {3, 3}, {4, 3}, {6, 4}, {5, 3}}) {
    const SymTensor a = oracle::random_symmetric(m, n, rng);
    Vector x(n);
    for (auto& v : x) {
      v = rng.uniform(-2.0, 2.0);
    }
    const Contraction c = contract(a, x);
    EXPECT_LT(oracle::max_abs_diff(c.xm1, oracle::axm1(a, x)), 1e-12);
    EXPECT_LT(oracle::max_abs_diff({c.xm2.values().begin(), c.xm2.values().end()}, oracle::axm2(a, x)), 1e-12);
    EXPECT_NEAR(c.xm, oracle::axm(a, x), 1e-11);
    EXPECT_LT(oracle::max_abs_diff(ttv_m1(a, x), c.xm1), 1e-13);
    EXPECT_NEAR(ttv_m(a, x), c.xm, 1e-13);
  }
}

TEST(Ttv, Homogeneity) {
  Rng rng(4);
  const SymTensor a = oracle::random_symmetric(4, 3, rng);
  const Vector x{0.3, -0.7, 1.1};
  const double t = -1.7;
  Vector tx = x;
  for (auto& v : tx) {
    v *= t;
  }
  EXPECT_NEAR(ttv_m(a, tx), std::pow(t, 4) * ttv_m(a, x), 1e-12);
  const Vector y = ttv_m1(a, tx);
  const Vector z = ttv_m1(a, x);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(y[i], std::pow(t, 3) * z[i], 1e-12);
  }
}

TEST(Ttv, Errors) {
  const SymTensor a = SymTensor::zeros(4, 3);
  EXPECT_THROW(ttv_m1(a, Vector{1.0, 2.0}), DimensionError);
  EXPECT_THROW(ttv_m2(SymTensor::zeros(1, 3), Vector{1.0, 2.0, 3.0}), Unsupported);
}

TEST(Ttv, KoRe02Value) {
  const SymTensor a = parse_tensor(data::kKore02A);
  const Vector x{-0.6672, -0.2471, 0.7027};
  EXPECT_NEAR(ttv_m(a, x), 0.8893, 2e-4);
}

TEST(IdentityTensor, Entries) {
  const SymTensor e = identity_tensor(4, 3);
  EXPECT_DOUBLE_EQ((e({0, 0, 0, 0})), 1.0);
  EXPECT_NEAR((e({0, 0, 1, 1})), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR((e({0, 1, 0, 1})), 1.0 / 3.0, 1e-15);
  EXPECT_EQ((e({0, 0, 0, 1})), 0.0);
  EXPECT_EQ((e({0, 1, 2, 2})), 0.0);
  EXPECT_THROW(identity_tensor(3, 3), Unsupported);
}

TEST(IdentityTensor, ActsAsNormPower) {
  Rng rng(5);
  for (auto [m, n] : {std::pair<std::size_t, std::size_t>{2, 3}, {4, 3}, {6, 4}, {8, 2}}) {
    const SymTensor e = identity_tensor(m, n);
    Vector x(n);
    for (auto& v : x) {
      v = rng.uniform(-1.5, 1.5);
    }
    const double r = norm(x);
    const Vector y = ttv_m1(e, x);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(y[i], std::pow(r, m - 2) * x[i], 1e-12);
    }
    EXPECT_NEAR(ttv_m(e, x), std::pow(r, m), 1e-12);
    // (m-1) E x^(m-2) = |x|^(m-4) (|x|^2 I + (m-2) x x^T)
    const SymMatrix h = ttv_m2(e, x);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double expect =
            std::pow(r, static_cast<double>(m) - 4.0) * ((i == j ? r * r : 0.0) + (m - 2.0) * x[i] * x[j]);
        EXPECT_NEAR((m - 1.0) * h(i, j), expect, 1e-12);
      }
    }
  }
}

TEST(DeltaTensor, Diagonal) {
  const SymTensor d = delta_tensor(4, 2);
  const Vector y = ttv_m1(d, Vector{1.0, 2.0});
  EXPECT_DOUBLE_EQ(y[0], 1.0);
  EXPECT_DOUBLE_EQ(y[1], 8.0);
  const Vector z = ttv_m1(delta_tensor(6, 4), Vector{1.0, 2.0, 0.0, -1.0});
  EXPECT_DOUBLE_EQ(z[0], 1.0);
  EXPECT_DOUBLE_EQ(z[1], 32.0);
  EXPECT_DOUBLE_EQ(z[2], 0.0);
  EXPECT_DOUBLE_EQ(z[3], -1.0);
}

TEST(SymOuterMatrix, DeigEntries) {
  const SymTensor b = sym_outer_matrix(data::deig_d());
  const SymMatrix d = data::deig_d();
  EXPECT_NEAR((b({0, 0, 0, 0})), 3.0800, 5e-5);
  EXPECT_NEAR((b({0, 0, 1, 1})), 0.8140, 5e-5);
  EXPECT_NEAR((b({2, 2, 2, 2})), 16.0480, 5e-5);
  // b_1122 = (d11 d22 + 2 d12^2) / 3
  EXPECT_NEAR((b({0, 0, 1, 1})), (d(0, 0) * d(1, 1) + 2.0 * d(0, 1) * d(0, 1)) / 3.0, 1e-14);
}

TEST(SymOuterMatrix, MatchesFixtureB) {
  const SymTensor listed = parse_tensor(data::kDeigB);
  const SymTensor b = sym_outer_matrix(data::deig_d());
  const std::vector<double> x(b.values().begin(), b.values().end());
  const std::vector<double> y(listed.values().begin(), listed.values().end());
  EXPECT_LE(oracle::max_abs_diff(x, y), 5e-5 + 1e-12);
}

TEST(SymOuterMatrix, QuadraticFormPower) {
  Rng rng(6);
  const SymMatrix d(3, {2.0, 0.3, -0.1, 0.3, 1.0, 0.2, -0.1, 0.2, 1.5});
  for (std::size_t m : {2u, 4u, 6u}) {
    const SymTensor b = sym_outer_matrix(d, m);
    const Vector x = oracle::random_unit(3, rng);
    const double q = dot(x, d * x);
    EXPECT_NEAR(ttv_m(b, x), std::pow(q, m / 2), 1e-12);
  }
  const SymTensor i4 = sym_outer_matrix(SymMatrix::identity(3), 4);
  EXPECT_LT(oracle::max_abs_diff({i4.values().begin(), i4.values().end()},
                                 {identity_tensor(4, 3).values().begin(), identity_tensor(4, 3).values().end()}),
            1e-15);
}

TEST(TtmAll, IdentityAndCongruence) {
  Rng rng(7);
  const SymTensor a = oracle::random_symmetric(4, 3, rng);
  const SymTensor same = ttm_all(a, SymMatrix::identity(3));
  EXPECT_LT(oracle::max_abs_diff({a.values().begin(), a.values().end()}, {same.values().begin(), same.values().end()}),
            1e-15);

  // For m = 2, ttm_all(M, S) = S M S^T.
  const SymMatrix mm(3, {1.0, 2.0, 0.5, 2.0, -1.0, 0.0, 0.5, 0.0, 3.0});
  const SymMatrix s(3, {0.7, 0.1, 0.2, 0.1, 1.3, -0.4, 0.2, -0.4, 0.9});
  const SymTensor t = ttm_all(SymTensor(2, 3, {mm.values().begin(), mm.values().end()}), s);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      double e = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t l = 0; l < 3; ++l) {
          e += s(i, k) * mm(k, l) * s(j, l);
        }
      }
      EXPECT_NEAR((t({i, j})), e, 1e-13);
    }
  }
}

TEST(TtmAll, ContractionIdentity) {
  // (A x S ... x S) y^m = A (S y)^m for symmetric S.
  Rng rng(8);
  const SymTensor a = oracle::random_symmetric(4, 3, rng);
  const SymMatrix s(3, {0.7, 0.1, 0.2, 0.1, 1.3, -0.4, 0.2, -0.4, 0.9});
  const SymTensor b = ttm_all(a, s);
  const Vector y{0.4, -0.2, 0.9};
  EXPECT_NEAR(ttv_m(b, y), ttv_m(a, s * y), 1e-12);
}

TEST(RandomPd, EigenvectorsAndDefiniteness) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RandomPdTensor r = random_pd_tensor(6, 4, 0.6, seed);
    const std::size_t m = 6;
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_GE(std::abs(r.mu[i]), 0.6);
      EXPECT_LE(std::abs(r.mu[i]), 1.0);
      const Vector x = r.u.column(i);
      EXPECT_NEAR(norm(x), 1.0, 1e-12);
      const Vector y = ttv_m1(r.tensor, x);
      for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(y[k], std::pow(r.mu[i], m) * x[k], 1e-12);
      }
    }
    Rng rng(100 + seed);
    double lo = 1.0;
    for (double mu : r.mu) {
      lo = std::min(lo, std::pow(mu, 6));
    }
    for (int k = 0; k < 200; ++k) {
      EXPECT_GE(ttv_m(r.tensor, oracle::random_unit(4, rng)), lo - 1e-12);
    }
  }
  EXPECT_THROW(random_pd_tensor(4, 3, 0.0, 1), ParameterError);
  EXPECT_THROW(random_pd_tensor(4, 3, 1.0, 1), ParameterError);
  EXPECT_THROW(random_pd_tensor(3, 3, 0.5, 1), Unsupported);
}

TEST(RandomPd, Reproducible) {
  EXPECT_EQ(random_pd_tensor(4, 3, 0.5, 9).tensor, random_pd_tensor(4, 3, 0.5, 9).tensor);
  EXPECT_NE(random_pd_tensor(4, 3, 0.5, 9).tensor, random_pd_tensor(4, 3, 0.5, 10).tensor);
}

TEST(RandomOrthonormal, Orthonormal) {
  Rng rng(11);
  const Matrix q = random_orthonormal(5, rng);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_NEAR(dot(q.column(i), q.column(j)), i == j ? 1.0 : 0.0, 1e-13);
    }
  }
}
