#pragma once

#include <string>

#include "ssl/bounds.hpp"
#include "ssl/eigensolver.hpp"
#include "ssl/optimizer.hpp"
#include "ssl/support_geometry.hpp"

namespace ssl {

enum class SelfDomainVerdict { Yes, No, Probably, NoExistence };

const char* to_string(SelfDomainVerdict v);

struct SelfDomainOptions {
  EvalOptions eval{};
  /// Relative gap under which neighboring eigenvalues count as equal.
  double gap = 5e-3;
  /// Also run a short optimization inside (interior) or around (exterior)
  /// the shape and report NO if it beats the shape by more than tol_fem.
  bool probe = false;
  Strategy probe_strategy = Strategy::piecewise_affine(48);
  OptimizerOptions probe_options = [] {
    OptimizerOptions o;
    o.starts = 2;
    o.max_iters = 20;
    return o;
  }();
  double tol_fem = kTolFem;
};

struct SelfDomainReport {
  std::string shape_id;
  int k = 1;
  ProblemKind mode = ProblemKind::Interior;
  Spectrum spectrum;
  SelfDomainVerdict verdict = SelfDomainVerdict::Probably;
  std::string reason;
  /// |mu_{k+1} - mu_k| / mu_k (interior) or |mu_k - mu_{k-1}| / mu_k (exterior).
  double relative_gap = 0.0;
  /// Exterior only: hypotheses under which a multiple mu_k rules out optimality.
  bool strictly_convex = false;
  double shortest_side = 0.0;
  /// 2 j01 / sqrt(mu_k).
  double side_threshold = 0.0;
  bool probed = false;
  double probe_mu = 0.0;
};

/// Multiplicity obstructions for the shape being its own interior
/// (minimize mu_k inside it) or exterior (maximize mu_k around it) optimum.
SelfDomainReport self_domain_check(const SupportFunction& shape, int k, ProblemKind mode,
                                   const SelfDomainOptions& opts = {}, const std::string& shape_id = "shape");

}  // namespace ssl
