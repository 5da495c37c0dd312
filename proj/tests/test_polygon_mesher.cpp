#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ssl/errors.hpp"
#include "ssl/mesher.hpp"
#include "ssl/polygon.hpp"
#include "ssl/projection.hpp"

using namespace ssl;

TEST(Polygon, FunctionalsAgainstBruteForce) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const ConvexPolygon p = oracle::random_polygon(rng);
    EXPECT_NEAR(p.area(), oracle::area(p.vertices()), 1e-12);
    EXPECT_NEAR(p.diameter(), oracle::diameter(p.vertices()), 1e-12);
    EXPECT_NEAR(p.min_width(), oracle::min_width(p.vertices()), 1e-9);
  }
}

TEST(Polygon, HullDropsInteriorAndCollinearPoints) {
  const ConvexPolygon p = convex_hull({{0, 0}, {1, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}});
  EXPECT_EQ(p.size(), 4u);
  EXPECT_NEAR(p.area(), 4.0, 1e-12);
}

TEST(Polygon, HalfplaneIntersectionOfSquare) {
  Halfplanes h;
  for (int i = 0; i < 4; ++i) {
    h.angles.push_back(i * oracle::kPi / 2);
    h.offsets.push_back(1.0);
  }
  const ConvexPolygon p = intersect_halfplanes(h);
  EXPECT_NEAR(p.area(), 4.0, 1e-12);
  h.offsets[0] = -1.5;  // empty
  EXPECT_THROW(intersect_halfplanes(h), Error);
}

TEST(Polygon, ClippingKeepsHalf) {
  const ConvexPolygon sq({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
  const auto half = sq.clipped(Point(1, 0), 0.0);
  ASSERT_TRUE(half.has_value());
  EXPECT_NEAR(half->area(), 2.0, 1e-12);
  EXPECT_FALSE(sq.clipped(Point(1, 0), -2.0).has_value());
}

TEST(Mesher, ConformingWithExactArea) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 10; ++i) {
    const ConvexPolygon p = oracle::random_polygon(rng);
    const TriangleMesh m = triangulate(p, p.diameter() / 30);
    EXPECT_TRUE(is_conforming(m));
    EXPECT_NEAR(m.area(), p.area(), 1e-10 * p.area());
    EXPECT_LE(m.max_edge(), 2.0 * p.diameter() / 30);
    for (std::size_t t = 0; t < m.triangles.size(); ++t) EXPECT_GT(m.triangle_area(t), 0.0);
  }
}

TEST(Mesher, RefinementQuadruplesTriangles) {
  const ConvexPolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const TriangleMesh m = triangulate(sq, 0.1);
  const TriangleMesh r = refine(m);
  EXPECT_EQ(r.triangles.size(), 4 * m.triangles.size());
  EXPECT_TRUE(is_conforming(r));
  EXPECT_NEAR(r.area(), 1.0, 1e-12);
}

TEST(Mesher, ThinBodiesNeedPermission) {
  const ConvexPolygon thin({{0, 0}, {2, 0}, {2, 5e-5}, {0, 5e-5}});
  EXPECT_THROW(triangulate(thin, 0.05), Error);
  const TriangleMesh m = triangulate(thin, 0.05, true);
  EXPECT_TRUE(is_conforming(m));
  EXPECT_NEAR(m.area(), 1e-4, 1e-12);
}

TEST(Projection, OntoBoxMatchesClamp) {
  // { x : -1 <= x_i <= 1 } in R^3.
  Eigen::MatrixXd A(6, 3);
  A << Eigen::Matrix3d::Identity(), -Eigen::Matrix3d::Identity();
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(6);
  const Eigen::Vector3d y(2.0, -0.5, -3.0);
  const ProjectionResult r = project_onto_polyhedron(A, b, y, Eigen::Vector3d::Zero());
  EXPECT_TRUE(r.exact);
  EXPECT_NEAR((r.x - Eigen::Vector3d(1.0, -0.5, -1.0)).norm(), 0.0, 1e-10);
}

TEST(Projection, OntoHalfspaceClosedForm) {
  Eigen::MatrixXd A(1, 2);
  A << 1.0, 1.0;
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(1, 1.0);
  const Eigen::Vector2d y(2.0, 1.0);
  const ProjectionResult r = project_onto_polyhedron(A, b, y, Eigen::Vector2d::Zero());
  // y - ((a.y - b) / |a|^2) a
  EXPECT_NEAR((r.x - Eigen::Vector2d(1.0, 0.0)).norm(), 0.0, 1e-10);
}
