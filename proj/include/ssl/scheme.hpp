#pragma once

#include <string>
#include <vector>

#include "ssl/bounds.hpp"
#include "ssl/optimizer.hpp"

namespace ssl {

enum class SchemeStatus { Running, Stationary, Collapsed };

const char* to_string(SchemeStatus s);

struct SchemeOptions {
  Strategy strategy = Strategy::piecewise_affine(48);
  /// Per-stage optimizer settings. Each stage starts from the previous
  /// optimum (D_1 itself for the first interior stage) and adds
  /// `starts - 1` random restarts.
  OptimizerOptions optimizer = [] {
    OptimizerOptions o;
    o.starts = 2;
    o.max_iters = 25;
    return o;
  }();
  /// Stationarity: Hausdorff distance of successive shapes below
  /// stat_rel * diam(D_1) and objective changes below optimizer.tol_opt.
  double stat_rel = 1e-3;
  double collapse_tol = tol::epsilon_width;
  double tol_fem = kTolFem;
  /// Called after each completed iteration.
  std::function<void(int)> progress;
};

struct SchemeStep {
  int n = 0;
  SupportFunction omega;  // interior solution for D_n
  SupportFunction D;      // D_n
  double mu_omega = 0.0;
  double mu_D = 0.0;
  double J = 0.0;
  double min_width_D = 0.0;
  double diam_D = 0.0;
  /// Every vertex of the realized Omega_n lies in the realized D_n.
  bool omega_in_D = false;
};

struct SchemeTrace {
  int k = 2;
  std::vector<SchemeStep> steps;
  SchemeStatus status = SchemeStatus::Running;
  /// (2 j01 + (k - 1) pi) / sqrt(mu_k(D_1)).
  double diameter_cap = 0.0;
  /// k^2 pi^2 / (2 j01 + (k - 1) pi)^2, reported on collapse.
  double conjectured_limit = 0.0;
  /// Set when a stage failed; the trace holds the completed steps.
  std::string error;
};

/// Alternates interior and exterior optimization starting from the box D1:
/// Omega_n minimizes mu_k inside D_n, D_{n+1} maximizes mu_k around Omega_n.
SchemeTrace run_scheme(const SupportFunction& D1, int k, int n_max, const SchemeOptions& opts = {});

/// Per-step checks of the monotonicity of mu_k(D_n), mu_k(Omega_n) and J_k(D_n) within tol.
struct MonotonicityCheck {
  bool mu_D_nondecreasing = true;
  bool mu_omega_nonincreasing = true;
  bool J_nonincreasing = true;
  bool inclusions = true;
  bool diameters_bounded = true;
};
MonotonicityCheck check_monotonicity(const SchemeTrace& trace, double tol = kTolFem);

/// J_k(D) = I_k(D) / mu_k(D). k = 1 uses pi^2 / (diam^2 mu_1); k >= 2 runs
/// an interior optimization for I_k(D).
double j_k(const SupportFunction& D, int k, const OptimizerOptions& opts = {},
           const Strategy& strategy = Strategy::piecewise_affine(48), const EvalOptions& eval = {});

}  // namespace ssl
