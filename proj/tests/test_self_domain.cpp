#include <gtest/gtest.h>

#include "ssl/errors.hpp"
#include "ssl/self_domain.hpp"

using namespace ssl;

TEST(SelfDomain, InteriorMultiplicity) {
  const auto r = self_domain_check(disk_support(1.0), 3, ProblemKind::Interior);
  EXPECT_EQ(r.verdict, SelfDomainVerdict::No);
  EXPECT_LT(r.relative_gap, 5e-3);
  EXPECT_EQ(r.spectrum.size(), 5u);
}

TEST(SelfDomain, InteriorFirstEigenvalueHasNoMinimizer) {
  EXPECT_EQ(self_domain_check(square_support(1.0), 1, ProblemKind::Interior).verdict, SelfDomainVerdict::NoExistence);
}

TEST(SelfDomain, ExteriorHypotheses) {
  // Disk k = 4: mu_3 = mu_4 and the boundary is strictly convex.
  const auto disk = self_domain_check(disk_support(1.0), 4, ProblemKind::Exterior);
  EXPECT_EQ(disk.verdict, SelfDomainVerdict::No);
  EXPECT_TRUE(disk.strictly_convex);
  // Square k = 2: mu_1 = mu_2.
  EXPECT_EQ(self_domain_check(square_support(1.0), 2, ProblemKind::Exterior).verdict, SelfDomainVerdict::No);
  // Square k = 4: mu_3 < mu_4, nothing to conclude.
  const auto sq4 = self_domain_check(square_support(1.0), 4, ProblemKind::Exterior);
  EXPECT_EQ(sq4.verdict, SelfDomainVerdict::Probably);
  EXPECT_FALSE(sq4.strictly_convex);
  EXPECT_NEAR(sq4.shortest_side, 2.0, 1e-9);
}

TEST(SelfDomain, ExteriorFirstEigenvalue) {
  EXPECT_EQ(self_domain_check(disk_support(1.0), 1, ProblemKind::Exterior).verdict, SelfDomainVerdict::Yes);
  EXPECT_EQ(self_domain_check(square_support(1.0), 1, ProblemKind::Exterior).verdict, SelfDomainVerdict::Yes);
  const auto rect = self_domain_check(rectangle_support(Point(-1, -0.5), Point(1, 0.5)), 1, ProblemKind::Exterior);
  EXPECT_EQ(rect.verdict, SelfDomainVerdict::Probably);
}

TEST(SelfDomain, ProbeStartsFromTheShape) {
  // The probe's first start is the shape itself, so its value never exceeds mu_k.
  SelfDomainOptions o;
  o.probe = true;
  o.probe_strategy = Strategy::piecewise_affine(24);
  o.probe_options.starts = 1;
  o.probe_options.max_iters = 4;
  o.probe_options.threads = 1;
  const auto r = self_domain_check(square_support(1.0), 2, ProblemKind::Interior, o);
  EXPECT_TRUE(r.probed);
  EXPECT_LE(r.probe_mu, r.spectrum[2] * (1 + 1e-9));
}

TEST(SelfDomain, Strings) {
  EXPECT_STREQ(to_string(SelfDomainVerdict::NoExistence), "no existence");
  EXPECT_THROW(self_domain_check(disk_support(1.0), 0, ProblemKind::Interior), Error);
}
