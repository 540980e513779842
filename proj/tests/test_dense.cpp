#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "teneig/dense.hpp"
#include "teneig/error.hpp"
#include "teneig/random.hpp"

using namespace teneig;

TEST(Vector, DotNormNormalized) {
  const Vector a{3.0, 4.0};
  EXPECT_DOUBLE_EQ(dot(a, a), 25.0);
  EXPECT_DOUBLE_EQ(norm2(a), 5.0);
  const Vector u = normalized(a);
  EXPECT_DOUBLE_EQ(u[0], 0.6);
  EXPECT_DOUBLE_EQ(u[1], 0.8);
  EXPECT_THROW(normalized(Vector{0.0, 0.0}), InvalidInput);
}

TEST(SymMatrix, ConstructionAndSet) {
  SymMatrix m(3);
  m.set(0, 2, 5.0);
  EXPECT_EQ(m(2, 0), 5.0);
  EXPECT_EQ(m(0, 2), 5.0);
  EXPECT_THROW(SymMatrix(2, {1.0, 2.0, 3.0}), DimensionError);
  EXPECT_THROW(SymMatrix(2, {1.0, 2.0, 2.5, 1.0}), InvalidInput);
  EXPECT_THROW(SymMatrix(2, {1.0, std::nan(""), std::nan(""), 1.0}), InvalidInput);
  const SymMatrix r(2, {1.0, 2.0, 2.0 + 1e-14, 1.0});
  EXPECT_EQ(r(0, 1), r(1, 0));
}

TEST(SymMatrix, Arithmetic) {
  const SymMatrix a(2, {2.0, 1.0, 1.0, 3.0});
  const Vector y = a * Vector{1.0, -1.0};
  EXPECT_DOUBLE_EQ(y[0], 1.0);
  EXPECT_DOUBLE_EQ(y[1], -2.0);
  SymMatrix b = a;
  b += SymMatrix::identity(2);
  EXPECT_DOUBLE_EQ(b(1, 1), 4.0);
  b *= 2.0;
  EXPECT_DOUBLE_EQ(b(0, 1), 2.0);
  b -= a;
  EXPECT_DOUBLE_EQ(b(0, 0), 4.0);
  EXPECT_DOUBLE_EQ(SymMatrix::identity(4).frobenius_norm(), 2.0);
  const SymMatrix o = SymMatrix::sym_outer(Vector{1.0, 0.0}, Vector{0.0, 2.0});
  EXPECT_DOUBLE_EQ(o(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(o(0, 0), 0.0);
}

TEST(Random, SplitMixReferenceValue) {
  // First output of the published SplitMix64 generator from state 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(Random, Reproducible) {
  Rng a(42);
  Rng b(42);
  Rng c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double va = a.normal();
    EXPECT_EQ(va, b.normal());
    differs = differs || va != c.normal();
  }
  EXPECT_TRUE(differs);
}

TEST(Random, UniformRangeAndMoments) {
  Rng r(7);
  double s = 0.0;
  double s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform(-1.0, 1.0);
    ASSERT_GE(u, -1.0);
    ASSERT_LT(u, 1.0);
    s += u;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = r.normal();
    s += g;
    s2 += g * g;
  }
  EXPECT_NEAR(s / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.02);
}
