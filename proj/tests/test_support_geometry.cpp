#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ssl/errors.hpp"
#include "ssl/support_geometry.hpp"

using namespace ssl;

TEST(SupportFunction, DiskFunctionals) {
  const SupportFunction d = disk_support(2.0, Point(0.3, -0.1));
  EXPECT_NEAR(diameter(d), 4.0, 1e-9);
  EXPECT_NEAR(min_width(d), 4.0, 1e-9);
  EXPECT_NEAR(area(d, 4096), oracle::kPi * 4.0, 1e-3);
  EXPECT_NEAR(d(0.0), 2.3, 1e-12);
  EXPECT_NEAR(d(oracle::kPi / 2), 1.9, 1e-12);
}

TEST(SupportFunction, SquareMatchesBruteForce) {
  const std::vector<Point> v = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
  const SupportFunction s = square_support(1.0, 512);
  for (int j = 0; j < 512; j += 37) {
    const double t = s.sample_angle(j);
    double best = -1e9;
    for (const auto& p : v) best = std::max(best, p.dot(unit_direction(t)));
    EXPECT_NEAR(s(t), best, 1e-12);
  }
  EXPECT_NEAR(diameter(s), 2.0 * std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(min_width(s), 2.0, 1e-9);
  EXPECT_NEAR(area(s), 4.0, 1e-9);
}

TEST(SupportFunction, FourierConvexityResidual) {
  // f = a0 + a2 cos 2t has f + f'' = a0 - 3 a2 cos 2t.
  Eigen::VectorXd c = Eigen::VectorXd::Zero(5);
  c[0] = 1.0;
  c[2] = 0.2;
  const SupportFunction f = SupportFunction::fourier(c);
  for (double t : {0.0, 0.4, 1.3, 2.9}) EXPECT_NEAR(convexity_residual(f, t), 1.0 - 0.6 * std::cos(2 * t), 1e-12);
  EXPECT_NEAR(min_convexity_residual(f, 720), 0.4, 1e-9);
}

TEST(SupportFunction, TranslationAndScaling) {
  const SupportFunction s = square_support(1.0, 64);
  const SupportFunction t = s.translated(Point(0.5, 0.25)).scaled(2.0);
  for (int j = 0; j < 64; ++j) {
    const double th = s.sample_angle(j);
    EXPECT_NEAR(t(th), 2.0 * (s(th) + Point(0.5, 0.25).dot(unit_direction(th))), 1e-12);
  }
}

TEST(SupportFunction, HausdorffOfConcentricDisks) {
  EXPECT_NEAR(hausdorff_distance(disk_support(1.0), disk_support(1.3)), 0.3, 1e-12);
}

TEST(Strategy, ParseRoundTrip) {
  for (const char* s : {"fourier:8", "pwa:50"}) EXPECT_EQ(Strategy::parse(s).to_string(), s);
  EXPECT_EQ(Strategy::fourier(8).dimension(), 17);
  EXPECT_THROW(Strategy::parse("spline:3"), Error);
  EXPECT_THROW(Strategy::parse("pwa"), Error);
}

TEST(Constraints, ObstacleIsFeasibleForExterior) {
  const Strategy st = Strategy::piecewise_affine(48);
  // Native samples: resampling a finer piecewise-affine body is not exactly
  // discretely convex.
  const SupportFunction sq = square_support(1.0, 48);
  const ConstraintSystem cs = assemble_constraints(ProblemKind::Exterior, st, sq);
  EXPECT_TRUE(cs.feasible(st.encode(sq), 1e-9));
  EXPECT_FALSE(cs.feasible(st.encode(sq.scaled(0.9)), 1e-9));
  EXPECT_TRUE(cs.feasible(st.encode(sq.scaled(1.2)), 1e-9));
}

TEST(Constraints, InteriorRejectsNonconvexAndOutside) {
  const Strategy st = Strategy::fourier(4);
  const ConstraintSystem cs = assemble_constraints(ProblemKind::Interior, st, disk_support(1.0));
  Eigen::VectorXd F = Eigen::VectorXd::Zero(9);
  F[0] = 0.5;
  EXPECT_TRUE(cs.feasible(F));
  F[0] = 1.1;
  EXPECT_FALSE(cs.feasible(F));  // outside the box
  F[0] = 0.5;
  F[2] = 0.3;  // 0.5 - 3 * 0.3 < 0 somewhere
  EXPECT_FALSE(cs.feasible(F));
}

TEST(Reconstruct, PolygonFromSamplesIsTheSquare) {
  const ConvexPolygon p = reconstruct_polygon(square_support(1.0, 48));
  EXPECT_NEAR(oracle::area(p.vertices()), 4.0, 1e-9);
  EXPECT_EQ(p.size(), 4u);
}

TEST(Reconstruct, ThinBodyCollapses) {
  const SupportFunction seg = rectangle_support(Point(-1, -1e-6), Point(1, 1e-6), 64);
  EXPECT_THROW(reconstruct_polygon(seg), Error);
  EXPECT_NO_THROW(reconstruct_polygon(seg, ReconstructOptions{0, true, tol::epsilon_width}));
}

TEST(HullWithPoints, ContainsBodyAndPoints) {
  const std::vector<Point> pts = {{2.0, 0.0}, {-2.0, 0.0}};
  const SupportFunction h = hull_with_points(disk_support(1.0), pts, 256);
  EXPECT_TRUE(contains(h, disk_support(1.0).resampled(256), 0, 1e-9));
  EXPECT_NEAR(diameter(h), 4.0, 1e-9);
}
