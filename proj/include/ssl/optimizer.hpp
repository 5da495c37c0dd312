#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "ssl/eigensolver.hpp"
#include "ssl/support_geometry.hpp"

namespace ssl {

struct OptimizerOptions {
  int starts = 8;
  std::uint64_t seed = 1;
  int max_iters = 60;
  /// Relative objective change over `stall_window` iterations that counts as converged.
  double tol_opt = 1e-4;
  int stall_window = 5;
  /// Finite-difference step relative to the coefficient scale max |F|.
  double fd_rel = 1e-4;
  double armijo = 1e-4;
  /// Length l of the Sobolev metric: the descent direction is
  /// (I - l^2 d^2/dtheta^2)^{-1} applied to the gradient. 0 gives plain gradients.
  double sobolev_length = 1.0;
  int max_backtracks = 20;
  /// Mesh size relative to the diameter while optimizing and for the final value.
  double h_rel_coarse = 1.0 / 40.0;
  double h_rel_final = 1.0 / 80.0;
  /// Halfplanes used to realize Fourier bodies (0: default).
  int polygon_samples = 0;
  /// Keep piecewise-affine polygon vertices inside the box (interior problems).
  bool vertex_rows = true;
  /// Interior runs whose result is thinner than this fraction of its
  /// diameter are compressed toward their diameter line while mu_k rises
  /// by at most collapse_slack relative in total (0 disables).
  double collapse_ratio = 0.05;
  double collapse_slack = 1e-4;
  /// Worker threads for the starts; 0 reads SSL_THREADS, else the hardware count.
  int threads = 0;
  /// Parameter vectors (in the caller's coordinates) used as the first
  /// starts; they are projected onto the feasible set.
  std::vector<Eigen::VectorXd> initial;
  /// Called after every accepted step with (start, iteration, mu_k).
  std::function<void(int, int, double)> progress;
};

struct TracePoint {
  int iteration = 0;
  double mu = 0.0;
};

struct StartSummary {
  double initial_mu = 0.0;
  double best_mu = 0.0;
  int iterations = 0;
  /// converged, max_iters, line_search, stationary or remesh_failed.
  std::string stop_reason = "max_iters";
  bool failed = false;
  std::string error;
};

struct OptimizationResult {
  ProblemKind kind = ProblemKind::Interior;
  int k = 1;
  Strategy strategy;
  Eigen::VectorXd F_opt;
  SupportFunction shape;
  /// Final spectrum on the fine mesh (indices 0..k+1).
  Spectrum spectrum;
  double mu = 0.0;
  /// Accepted iterates of the winning start, coarse-mesh values.
  std::vector<TracePoint> objective_trace;
  /// max(A F_opt - B) against the caller's constraint system.
  double feasibility_residual = 0.0;
  int starts_used = 0;
  int best_start = 0;
  std::uint64_t seed = 0;
  std::vector<StartSummary> starts;
  long evaluations = 0;
};

/// Minimizes mu_k over shape(F) inside the box D.
OptimizationResult solve_interior(const SupportFunction& D, int k, const Strategy& strategy,
                                  const OptimizerOptions& opts = {});
/// Maximizes mu_k over shape(F) containing the obstacle omega.
OptimizationResult solve_exterior(const SupportFunction& omega, int k, const Strategy& strategy,
                                  const OptimizerOptions& opts = {});
OptimizationResult optimize(ProblemKind kind, const SupportFunction& reference, int k, const Strategy& strategy,
                            const OptimizerOptions& opts = {});

/// Threads used for `starts` independent runs.
int worker_count(int requested, int starts);

}  // namespace ssl
