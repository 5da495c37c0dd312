#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ssl/errors.hpp"
#include "ssl/optimizer.hpp"

using namespace ssl;

namespace {

OptimizerOptions quick(int starts, int iters) {
  OptimizerOptions o;
  o.starts = starts;
  o.max_iters = iters;
  o.threads = 1;
  return o;
}

}  // namespace

TEST(Optimizer, InteriorDecreasesAndStaysFeasible) {
  const SupportFunction box = disk_support(1.0);
  const Strategy st = Strategy::piecewise_affine(24);
  OptimizerOptions o = quick(1, 8);
  o.initial = {st.encode(disk_support(0.6))};
  const OptimizationResult r = solve_interior(box, 2, st, o);
  EXPECT_LE(r.feasibility_residual, 1e-8);
  EXPECT_LE(r.starts[0].best_mu, r.starts[0].initial_mu);
  EXPECT_TRUE(contains(box, r.shape, 2048, 1e-6));
  ASSERT_FALSE(r.objective_trace.empty());
  for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
    EXPECT_LE(r.objective_trace[i].mu, r.objective_trace[i - 1].mu + 1e-9);
}

TEST(Optimizer, ExteriorIncreasesAndContainsObstacle) {
  const SupportFunction obstacle = disk_support(1.0);
  const Strategy st = Strategy::fourier(4);
  OptimizerOptions o = quick(1, 6);
  std::vector<Point> pts = {{2.0, 0.0}, {-2.0, 0.0}};
  o.initial = {st.encode(hull_with_points(obstacle, pts, 256))};
  const OptimizationResult r = solve_exterior(obstacle, 2, st, o);
  EXPECT_LE(r.feasibility_residual, 1e-8);
  EXPECT_GE(r.starts[0].best_mu, r.starts[0].initial_mu);
  EXPECT_TRUE(contains(r.shape, obstacle, 720, 1e-6));
  EXPECT_EQ(r.kind, ProblemKind::Exterior);
}

TEST(Optimizer, DeterministicAcrossThreadCounts) {
  OptimizerOptions a = quick(3, 3), b = quick(3, 3);
  b.threads = 3;
  const Strategy st = Strategy::piecewise_affine(20);
  const OptimizationResult ra = solve_exterior(square_support(1.0), 1, st, a);
  const OptimizationResult rb = solve_exterior(square_support(1.0), 1, st, b);
  EXPECT_EQ(ra.mu, rb.mu);
  EXPECT_EQ(ra.F_opt, rb.F_opt);
  EXPECT_EQ(ra.best_start, rb.best_start);
}

TEST(Optimizer, ReportsStartsAndSeed) {
  OptimizerOptions o = quick(2, 2);
  o.seed = 42;
  const OptimizationResult r = solve_interior(square_support(1.0), 1, Strategy::piecewise_affine(16), o);
  EXPECT_EQ(r.starts_used, 2);
  EXPECT_EQ(r.starts.size(), 2u);
  EXPECT_EQ(r.seed, 42u);
  EXPECT_EQ(r.spectrum.size(), 3u);
  EXPECT_NEAR(r.mu, r.spectrum[1], 1e-12);
}

TEST(Optimizer, RejectsBadInput) {
  EXPECT_THROW(solve_interior(disk_support(1.0), 0, Strategy::piecewise_affine(16), quick(1, 1)), Error);
  EXPECT_THROW(solve_interior(disk_support(1.0), 1, Strategy::piecewise_affine(2), quick(1, 1)), Error);
}

TEST(Optimizer, WorkerCount) {
  EXPECT_EQ(worker_count(4, 2), 2);
  EXPECT_EQ(worker_count(1, 8), 1);
  EXPECT_GE(worker_count(0, 8), 1);
}
