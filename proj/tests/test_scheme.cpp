#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ssl/errors.hpp"
#include "ssl/scheme.hpp"

using namespace ssl;

namespace {

SchemeOptions small() {
  SchemeOptions o;
  o.strategy = Strategy::piecewise_affine(24);
  o.optimizer.starts = 1;
  o.optimizer.max_iters = 4;
  o.optimizer.threads = 1;
  return o;
}

}  // namespace

TEST(Scheme, OneStepOnTheDisk) {
  // Polygons inscribed in the disk sit above it by about 1 / cos^2(pi / M).
  SchemeOptions o = small();
  o.strategy = Strategy::piecewise_affine(48);
  const SchemeTrace t = run_scheme(disk_support(1.0), 2, 1, o);
  ASSERT_EQ(t.steps.size(), 1u);
  const SchemeStep& s = t.steps[0];
  EXPECT_LE(s.J, 1.0 + kTolFem);
  EXPECT_GT(s.J, 0.0);
  EXPECT_TRUE(s.omega_in_D);
  EXPECT_NEAR(s.diam_D, 2.0, 1e-9);
  const double top = 2 * oracle::j01() + oracle::kPi;
  EXPECT_NEAR(t.conjectured_limit, 4 * oracle::kPi * oracle::kPi / (top * top), 1e-12);
  EXPECT_NEAR(t.diameter_cap, top / std::sqrt(s.mu_D), 1e-12);
}

TEST(Scheme, TwoStepsAreMonotone) {
  const SchemeTrace t = run_scheme(square_support(1.0), 2, 2, small());
  ASSERT_TRUE(t.error.empty()) << t.error;
  ASSERT_GE(t.steps.size(), 1u);
  const MonotonicityCheck m = check_monotonicity(t);
  EXPECT_TRUE(m.mu_D_nondecreasing);
  EXPECT_TRUE(m.mu_omega_nonincreasing);
  EXPECT_TRUE(m.J_nonincreasing);
  EXPECT_TRUE(m.inclusions);
  EXPECT_TRUE(m.diameters_bounded);
}

TEST(Scheme, MonotonicityCheckFlagsViolations) {
  SchemeTrace t;
  t.diameter_cap = 10;
  SchemeStep a, b;
  a.mu_D = 2.0, a.mu_omega = 1.0, a.J = 0.5, a.omega_in_D = true, a.diam_D = 1;
  b = a;
  b.mu_D = 1.9;  // decreased by 5%
  b.J = 0.52;
  t.steps = {a, b};
  const MonotonicityCheck m = check_monotonicity(t, 0.01);
  EXPECT_FALSE(m.mu_D_nondecreasing);
  EXPECT_TRUE(m.mu_omega_nonincreasing);
  EXPECT_FALSE(m.J_nonincreasing);
}

TEST(Scheme, JOfUnitSquareForK1) {
  // pi^2 / (diam^2 mu_1) = pi^2 / (2 pi^2).
  const SupportFunction sq = rectangle_support(Point(0, 0), Point(1, 1));
  EXPECT_NEAR(j_k(sq, 1), 0.5, 2e-3);
  EXPECT_GT(j_k(disk_support(1.0), 1), oracle::kPi * oracle::kPi / (4 * oracle::j01() * oracle::j01()));
}

TEST(Scheme, RejectsBadInput) {
  EXPECT_THROW(run_scheme(disk_support(1.0), 0, 1), Error);
  EXPECT_THROW(run_scheme(disk_support(1.0), 2, 0), Error);
}
