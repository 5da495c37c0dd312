#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ssl/bounds.hpp"
#include "ssl/errors.hpp"

using namespace ssl;

namespace {
const double kPi2 = oracle::kPi * oracle::kPi;
}

TEST(Bounds, BesselConstant) { EXPECT_NEAR(j01(), oracle::j01(), 1e-12); }

TEST(Bounds, PayneWeinbergerAndDiameterUpper) {
  EXPECT_NEAR(payne_weinberger(2.0), kPi2 / 4.0, 1e-14);
  const double top = 2 * oracle::j01() + 2 * oracle::kPi;
  EXPECT_NEAR(diameter_upper(2.0, 3), top * top / 4.0, 1e-10);
  // Square [-1,1]^2: diameter 2 sqrt 2.
  EXPECT_NEAR(payne_weinberger(square_support(1.0)), kPi2 / 8.0, 1e-9);
}

TEST(Bounds, BucurAmatoConstants) {
  EXPECT_GT(c_k(2, 6.0), kPi2);
  EXPECT_GT(c_k(3, 6.0), c_k(2, 6.0));
  EXPECT_DOUBLE_EQ(c_k(4, 6.0), 2 * kPi2);
  EXPECT_DOUBLE_EQ(c_k(9, 6.0), 9 * kPi2 / 2);
  EXPECT_THROW(c_k(1), Error);
}

TEST(Bounds, MkInterval) {
  const MkBounds m1 = m_k_bounds(1);
  EXPECT_NEAR(m1.lower, kPi2 / (4 * oracle::j01() * oracle::j01()), 1e-12);
  for (int k = 2; k <= 6; ++k) {
    const MkBounds b = m_k_bounds(k);
    const double top = 2 * oracle::j01() + (k - 1) * oracle::kPi;
    EXPECT_NEAR(b.upper, k * k * kPi2 / (top * top), 1e-12);
    EXPECT_LE(b.lower, b.upper);
    EXPECT_EQ(b.clamped, b.raw_lower > b.upper);
  }
}

TEST(Bounds, K0OfSquare) {
  // 8 diam / (pi w) with diam = 2 sqrt 2, w = 2.
  EXPECT_NEAR(k0_bound(square_support(1.0)), 8 * std::sqrt(2.0) / oracle::kPi, 1e-9);
}

TEST(Bounds, BuserGridIsALowerBound) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10; ++i) {
    const ConvexPolygon p = oracle::random_polygon(rng);
    const Spectrum s = polygon_spectrum(p, 4);
    for (int k = 1; k <= 4; ++k) EXPECT_LE(buser_grid_lower(p, k), s[k] * (1 + kTolFem));
  }
}

TEST(Bounds, InequalitySuitePassesOnDisk) {
  const SupportFunction d = disk_support(1.0);
  const Spectrum s = shape_spectrum(d, 3);
  const auto checks = inequality_suite(reconstruct_polygon(d), s);
  EXPECT_FALSE(checks.empty());
  for (const auto& c : checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.lhs << " vs " << c.rhs;
}

TEST(Bounds, ExistenceCriterion) {
  // [-1,1]^2, k = 2: threshold 4 pi^2 / 8. The slightly shrunk square has
  // mu_2 close to pi^2 / 4 and qualifies; a small disk does not.
  const SupportFunction box = square_support(1.0);
  const ExistenceReport r = existence_criterion(box, square_support(0.99), 2);
  EXPECT_NEAR(r.threshold, 4 * kPi2 / 8.0, 1e-9);
  EXPECT_EQ(r.status, Existence::Satisfied);
  EXPECT_EQ(existence_criterion(box, disk_support(0.2), 2).status, Existence::NotSatisfied);
  EXPECT_THROW(existence_criterion(box, disk_support(1.2), 2), Error);
}

TEST(Bounds, CuspPoincareFormula) {
  EXPECT_NEAR(cusp_poincare_lower(0.1, 0.2, 0.5, 2.0), 1.0 / (16 * 5 * 0.25), 1e-14);
}
