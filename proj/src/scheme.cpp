#include "ssl/scheme.hpp"

#include <cmath>

#include "ssl/errors.hpp"

namespace ssl {

namespace {

// Every vertex of the realized inner body lies in the realized outer one.
bool realized_inside(const SupportFunction& outer, const SupportFunction& inner, double tol) {
  const ReconstructOptions ro{0, true, 0.0};
  const ConvexPolygon D = reconstruct_polygon(outer, ro);
  const ConvexPolygon O = reconstruct_polygon(inner, ro);
  for (const Point& v : O.vertices())
    if (!D.contains(v, tol)) return false;
  return true;
}

}  // namespace

const char* to_string(SchemeStatus s) {
  switch (s) {
    case SchemeStatus::Running: return "running";
    case SchemeStatus::Stationary: return "stationary";
    case SchemeStatus::Collapsed: return "collapsed";
  }
  return "?";
}

SchemeTrace run_scheme(const SupportFunction& D1, int k, int n_max, const SchemeOptions& opts) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  if (n_max < 1) throw Error(ErrorKind::InvalidInput, "n_max must be >= 1");
  SchemeTrace trace;
  trace.k = k;
  const double top = 2.0 * j01() + (k - 1) * M_PI;
  trace.conjectured_limit = k * k * M_PI * M_PI / (top * top);

  EvalOptions fine;
  fine.h_rel = opts.optimizer.h_rel_final;
  fine.polygon_samples = opts.optimizer.polygon_samples;
  const Strategy& st = opts.strategy;
  SupportFunction D = D1;
  double mu_D = shape_spectrum(D1, k, fine)[k];
  trace.diameter_cap = top / std::sqrt(mu_D);
  const double stat_tol = opts.stat_rel * diameter(D1);

  try {
    for (int n = 1; n <= n_max; ++n) {
      OptimizerOptions oi = opts.optimizer;
      oi.seed = opts.optimizer.seed + 2 * static_cast<std::uint64_t>(n);
      // D_1 is feasible for its own interior problem, so J_k(D_1) <= 1 holds.
      oi.initial.insert(oi.initial.begin(), st.encode(trace.steps.empty() ? D : trace.steps.back().omega));
      const OptimizationResult inner = solve_interior(D, k, st, oi);

      SchemeStep step;
      step.n = n;
      step.omega = inner.shape;
      step.D = D;
      step.mu_omega = inner.mu;
      step.mu_D = mu_D;
      step.J = inner.mu / mu_D;
      step.min_width_D = min_width(D);
      step.diam_D = diameter(D);
      step.omega_in_D = realized_inside(D, inner.shape, 1e-7 * std::max(1.0, step.diam_D));
      trace.steps.push_back(step);
      if (opts.progress) opts.progress(n);

      if (step.min_width_D < opts.collapse_tol) {
        trace.status = SchemeStatus::Collapsed;
        break;
      }
      if (trace.steps.size() >= 2) {
        const SchemeStep& prev = trace.steps[trace.steps.size() - 2];
        const double tol = opts.optimizer.tol_opt;
        if (hausdorff_distance(prev.omega, step.omega) < stat_tol && hausdorff_distance(prev.D, step.D) < stat_tol &&
            std::abs(step.mu_omega - prev.mu_omega) <= tol * step.mu_omega &&
            std::abs(step.mu_D - prev.mu_D) <= tol * step.mu_D) {
          trace.status = SchemeStatus::Stationary;
          break;
        }
      }
      if (n == n_max) break;

      OptimizerOptions oe = opts.optimizer;
      oe.seed = opts.optimizer.seed + 2 * static_cast<std::uint64_t>(n) + 1;
      oe.initial.insert(oe.initial.begin(), st.encode(D));
      const OptimizationResult outer = solve_exterior(inner.shape, k, st, oe);
      D = outer.shape;
      mu_D = outer.mu;
    }
  } catch (const Error& e) {
    trace.status = SchemeStatus::Running;
    trace.error = e.what();
  }
  return trace;
}

MonotonicityCheck check_monotonicity(const SchemeTrace& trace, double tol) {
  MonotonicityCheck c;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const SchemeStep& s = trace.steps[i];
    c.inclusions = c.inclusions && s.omega_in_D;
    c.diameters_bounded = c.diameters_bounded && s.diam_D <= trace.diameter_cap * (1.0 + tol);
    if (i == 0) continue;
    const SchemeStep& p = trace.steps[i - 1];
    c.mu_D_nondecreasing = c.mu_D_nondecreasing && s.mu_D >= p.mu_D * (1.0 - tol);
    c.mu_omega_nonincreasing = c.mu_omega_nonincreasing && s.mu_omega <= p.mu_omega * (1.0 + tol);
    c.J_nonincreasing = c.J_nonincreasing && s.J <= p.J * (1.0 + tol);
  }
  return c;
}

double j_k(const SupportFunction& D, int k, const OptimizerOptions& opts, const Strategy& strategy,
           const EvalOptions& eval) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  const ConvexPolygon poly = reconstruct_polygon(D, ReconstructOptions{eval.polygon_samples, false, tol::epsilon_width});
  const double mu = polygon_spectrum(poly, k, eval)[k];
  if (k == 1) return M_PI * M_PI / (poly.diameter() * poly.diameter() * mu);
  const OptimizationResult r = solve_interior(D, k, strategy, opts);
  return std::min(r.mu, mu) / mu;
}

}  // namespace ssl
