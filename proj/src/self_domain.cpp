#include "ssl/self_domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ssl/errors.hpp"

namespace ssl {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

std::vector<double> nodes(const SupportFunction& f) {
  const int M = f.is_fourier() ? 720 : f.sample_count();
  std::vector<double> t(M);
  for (int j = 0; j < M; ++j) t[j] = f.is_fourier() ? kTwoPi * j / M : f.sample_angle(j);
  return t;
}

// Three or more consecutive nodes with curvature radius f + f'' above a
// tenth of the mean support.
bool has_strictly_convex_arc(const SupportFunction& f) {
  const auto t = nodes(f);
  double mean = 0.0;
  for (double x : t) mean += f(x);
  mean /= static_cast<double>(t.size());
  const std::size_t n = t.size();
  std::size_t run = 0, best = 0;
  for (std::size_t j = 0; j < 2 * n; ++j) {
    run = convexity_residual(f, t[j % n]) > 0.1 * mean ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best >= 3;
}

bool is_disk(const SupportFunction& f) {
  const auto t = nodes(f);
  const double n = static_cast<double>(t.size());
  double a0 = 0.0, a1 = 0.0, b1 = 0.0;
  for (double x : t) a0 += f(x), a1 += f(x) * std::cos(x), b1 += f(x) * std::sin(x);
  a0 /= n, a1 *= 2.0 / n, b1 *= 2.0 / n;
  double dev = 0.0;
  for (double x : t) dev = std::max(dev, std::abs(f(x) - a0 - a1 * std::cos(x) - b1 * std::sin(x)));
  return dev <= 1e-6 * std::abs(a0);
}

bool is_square(const ConvexPolygon& p) {
  if (p.size() != 4) return false;
  const auto& v = p.vertices();
  const double s = (v[1] - v[0]).norm();
  for (int i = 0; i < 4; ++i) {
    const Point e = v[(i + 1) % 4] - v[i];
    const Point g = v[(i + 2) % 4] - v[(i + 1) % 4];
    if (std::abs(e.norm() - s) > 1e-6 * s || std::abs(e.dot(g)) > 1e-6 * s * s) return false;
  }
  return true;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(5);
  os << x;
  return os.str();
}

}  // namespace

const char* to_string(SelfDomainVerdict v) {
  switch (v) {
    case SelfDomainVerdict::Yes: return "YES";
    case SelfDomainVerdict::No: return "NO";
    case SelfDomainVerdict::Probably: return "probably";
    case SelfDomainVerdict::NoExistence: return "no existence";
  }
  return "?";
}

SelfDomainReport self_domain_check(const SupportFunction& shape, int k, ProblemKind mode, const SelfDomainOptions& opts,
                                   const std::string& shape_id) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  SelfDomainReport r;
  r.shape_id = shape_id;
  r.k = k;
  r.mode = mode;
  r.spectrum = shape_spectrum(shape, k + 1, opts.eval);
  const auto& mu = r.spectrum.values;
  const std::string K = std::to_string(k);
  const ConvexPolygon poly =
      reconstruct_polygon(shape, ReconstructOptions{opts.eval.polygon_samples, false, tol::epsilon_width});

  if (mode == ProblemKind::Interior) {
    r.relative_gap = (mu[k + 1] - mu[k]) / mu[k];
    if (k == 1) {
      r.verdict = SelfDomainVerdict::NoExistence;
      r.reason = "mu_1 has no minimizer among convex subdomains: minimizing sequences collapse to a diameter";
    } else if (r.relative_gap <= opts.gap) {
      r.verdict = SelfDomainVerdict::No;
      r.reason = "mu_" + K + " = mu_" + std::to_string(k + 1) + " (" + fmt(mu[k]) + ", " + fmt(mu[k + 1]) +
                 "); a minimizer has mu_k < mu_{k+1}";
    } else {
      r.verdict = SelfDomainVerdict::Probably;
      r.reason = "mu_" + K + " < mu_" + std::to_string(k + 1) + ": no multiplicity obstruction";
    }
  } else {
    r.strictly_convex = has_strictly_convex_arc(shape);
    r.shortest_side = poly.min_edge_length();
    r.side_threshold = 2.0 * j01() / std::sqrt(mu[k]);
    r.relative_gap = k >= 2 ? (mu[k] - mu[k - 1]) / mu[k] : 1.0;
    const bool hypotheses = k == 2 || r.strictly_convex || r.shortest_side < r.side_threshold;
    if (k == 1 && (is_disk(shape) || is_square(poly))) {
      r.verdict = SelfDomainVerdict::Yes;
      r.reason = is_disk(shape) ? "disk: any strictly larger convex body has a larger area, and mu_1 |.| is maximal for disks"
                                : "square: mu_1 <= pi^2 w^2 / |.|^2 and |.| >= w for every convex body around it";
    } else if (k >= 2 && r.relative_gap <= opts.gap && hypotheses) {
      r.verdict = SelfDomainVerdict::No;
      r.reason = "mu_" + std::to_string(k - 1) + " = mu_" + K + " (" + fmt(mu[k - 1]) + ", " + fmt(mu[k]) + ") and " +
                 (k == 2 ? std::string("k = 2")
                         : r.strictly_convex ? std::string("the boundary has a strictly convex arc")
                                             : "a side is shorter than 2 j01 / sqrt(mu_k)") +
                 "; a maximizer then has mu_{k-1} < mu_k";
    } else {
      r.verdict = SelfDomainVerdict::Probably;
      r.reason = k >= 2 && r.relative_gap <= opts.gap
                     ? "mu_" + std::to_string(k - 1) + " = mu_" + K + " but neither hypothesis on the boundary holds"
                     : "no multiplicity obstruction";
    }
  }

  if (opts.probe && r.verdict == SelfDomainVerdict::Probably) {
    OptimizerOptions o = opts.probe_options;
    o.initial.insert(o.initial.begin(), opts.probe_strategy.encode(shape));
    const OptimizationResult res = optimize(mode, shape, k, opts.probe_strategy, o);
    r.probed = true;
    r.probe_mu = res.mu;
    const bool better = mode == ProblemKind::Interior ? res.mu < mu[k] * (1.0 - opts.tol_fem)
                                                      : res.mu > mu[k] * (1.0 + opts.tol_fem);
    if (better) {
      r.verdict = SelfDomainVerdict::No;
      r.reason = "probe found a competitor with mu_" + K + " = " + fmt(res.mu) + " against " + fmt(mu[k]);
    } else {
      r.reason += "; probe best mu_" + K + " = " + fmt(res.mu);
    }
  }
  return r;
}

}  // namespace ssl
