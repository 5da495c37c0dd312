#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "ssl/eigensolver.hpp"

using namespace ssl;

namespace {

ConvexPolygon rect(double a, double b) { return ConvexPolygon({{0, 0}, {a, 0}, {a, b}, {0, b}}); }

}  // namespace

TEST(Eigensolver, RectangleMatchesClosedForm) {
  const auto ref = oracle::rectangle_eigenvalues(2.0, 1.0, 8);
  const Spectrum s = polygon_spectrum(rect(2.0, 1.0), 7);
  EXPECT_EQ(s.size(), 8u);
  EXPECT_NEAR(s[0], 0.0, 1e-8);
  for (int k = 1; k <= 7; ++k) EXPECT_NEAR(s[k] / ref[k], 1.0, 5e-3) << "k = " << k;
}

TEST(Eigensolver, DiskMatchesBesselZeros) {
  const auto ref = oracle::disk_eigenvalues(1.0, 7);
  const Spectrum s = shape_spectrum(disk_support(1.0), 6);
  for (int k = 1; k <= 6; ++k) EXPECT_NEAR(s[k] / ref[k], 1.0, 5e-3) << "k = " << k;
  EXPECT_TRUE(s.is_multiple(1) && s.is_multiple(2));
}

TEST(Eigensolver, ScalingLaw) {
  const double mu1 = mu_k(square_support(1.0), 1);
  const double mu2 = mu_k(square_support(2.0), 1);
  EXPECT_NEAR(mu1 / mu2, 4.0, 4e-3);
}

TEST(Eigensolver, RefinementConverges) {
  const double exact = oracle::kPi * oracle::kPi;
  EvalOptions e;
  e.h_rel = 1.0 / 20.0;
  const double e0 = std::abs(polygon_spectrum(rect(1, 1), 1, e)[1] - exact);
  e.refine = 1;
  const double e1 = std::abs(polygon_spectrum(rect(1, 1), 1, e)[1] - exact);
  EXPECT_GT(e0 / e1, 3.0);
}

TEST(Eigensolver, WarmStartedSolverAgreesWithColdSolve) {
  const TriangleMesh m = triangulate(rect(1.3, 1.0), 0.05);
  NeumannSolver solver;
  const Spectrum a = solver.solve(m, 5);
  const Spectrum b = solver.solve(m, 5);
  const Spectrum c = neumann_spectrum(m, 5);
  for (int k = 0; k <= 5; ++k) {
    EXPECT_NEAR(a[k], c[k], 1e-8 * (1 + c[k]));
    EXPECT_NEAR(b[k], c[k], 1e-8 * (1 + c[k]));
  }
}

TEST(Eigensolver, MassMatrixIntegratesConstants) {
  const TriangleMesh m = triangulate(rect(2.0, 0.5), 0.1);
  Eigen::SparseMatrix<double> K, M;
  assemble_neumann(m, K, M);
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(m.nodes.size()));
  EXPECT_NEAR(one.dot(M * one), 1.0, 1e-12);
  EXPECT_NEAR((K * one).norm(), 0.0, 1e-10);
}

TEST(Eigensolver, CsvHasHeaderAndRows) {
  Spectrum s;
  s.values = {0.0, 1.5};
  std::ostringstream os;
  write_spectrum_csv(os, s);
  EXPECT_EQ(os.str(), "k,mu\n0,0\n1,1.5\n");
}
