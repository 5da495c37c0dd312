#include "ssl/optimizer.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <random>
#include <thread>

#include "ssl/errors.hpp"
#include "ssl/projection.hpp"
#include "ssl/shape_objective.hpp"

namespace ssl {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

struct Problem {
  ProblemKind kind;
  int k;
  Strategy strategy;
  SupportFunction reference;  // centered at the origin
  ConstraintSystem sys;       // against the centered reference
  Point center;               // centroid of the caller's reference
  double sign;                // +1 minimize, -1 maximize
  double scale;               // size of the reference
  Eigen::VectorXd seed;       // a feasible disk
};

// Smallest box offset (interior) or largest obstacle offset (exterior)
// over the inclusion rows.
double inclusion_extreme(const ConstraintSystem& sys, bool interior) {
  const int M = sys.strategy.sample_count();
  const Eigen::VectorXd b = sys.B.tail(sys.B.size() - M);
  return interior ? b.minCoeff() : -b.minCoeff();
}

Eigen::VectorXd disk_params(const Strategy& s, double r) {
  Eigen::VectorXd F = Eigen::VectorXd::Zero(s.dimension());
  if (s.repr == Representation::Fourier)
    F[0] = r;
  else
    F.setConstant(r);
  return F;
}

Problem make_problem(ProblemKind kind, const SupportFunction& reference, int k, const Strategy& strategy,
                     bool vertex_rows) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  Problem p{kind, k, strategy, reference, {}, Point::Zero(), kind == ProblemKind::Interior ? 1.0 : -1.0, 1.0, {}};
  const ConvexPolygon poly = reconstruct_polygon(reference, ReconstructOptions{reference.is_fourier() ? 512 : 0, false});
  p.center = poly.centroid();
  p.scale = poly.diameter();
  p.reference = reference.translated(-p.center);
  p.sys = assemble_constraints(kind, strategy, p.reference, vertex_rows);
  const double r = inclusion_extreme(p.sys, kind == ProblemKind::Interior);
  if (kind == ProblemKind::Interior) {
    if (!(r > 0.0)) throw Error(ErrorKind::NoFeasibleStart, "box does not contain its centroid at the constraint angles");
    p.seed = disk_params(strategy, 0.5 * r);
  } else {
    p.seed = disk_params(strategy, r + 1e-9 * p.scale);
  }
  return p;
}

// Parameters of `f` (already centered) in the strategy, projected feasible.
std::optional<Eigen::VectorXd> feasible_from(const Problem& p, const SupportFunction& f) {
  const Eigen::VectorXd y = p.strategy.encode(f);
  const ProjectionResult pr = project_onto_polyhedron(p.sys.A, p.sys.B, y, p.seed);
  if (!pr.x.allFinite() || !p.sys.feasible(pr.x, tol::feas * std::max(1.0, p.scale))) return std::nullopt;
  return pr.x;
}

SupportFunction random_interior_start(const Problem& p, std::mt19937_64& rng) {
  const ConvexPolygon box = reconstruct_polygon(p.reference, ReconstructOptions{p.reference.is_fourier() ? 512 : 0, false});
  Point lo = box.vertices()[0], hi = lo;
  for (const auto& v : box.vertices()) lo = lo.cwiseMin(v), hi = hi.cwiseMax(v);
  std::uniform_int_distribution<int> count(3, 8);
  std::uniform_real_distribution<double> ux(lo.x(), hi.x()), uy(lo.y(), hi.y());
  for (int attempt = 0; attempt < 100; ++attempt) {
    const int n = count(rng);
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < n) {
      const Point q(ux(rng), uy(rng));
      if (box.contains(q)) pts.push_back(0.9 * q);
    }
    try {
      const ConvexPolygon hull = convex_hull(pts);
      if (hull.min_width() < 0.05 * p.scale) continue;
      const int M = p.strategy.repr == Representation::Fourier ? 1024 : p.strategy.size;
      return polygon_support(hull.vertices(), M);
    } catch (const Error&) {
    }
  }
  return p.strategy.shape(p.seed);
}

// Either the obstacle dilated with a smooth perturbation, or the hull of
// the obstacle and 1-4 random points outside it.
SupportFunction random_exterior_start(const Problem& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dil(1.05, 1.8), amp(-1.0, 1.0), unit(0.0, 1.0);
  const double R = inclusion_extreme(p.sys, false);
  const int M = p.strategy.repr == Representation::Fourier ? 1024 : p.strategy.size;
  if (unit(rng) < 0.5) {
    const ConvexPolygon obstacle =
        reconstruct_polygon(p.reference, ReconstructOptions{p.reference.is_fourier() ? 512 : 0, false});
    std::vector<Point> pts = obstacle.vertices();
    const int n = std::uniform_int_distribution<int>(1, 4)(rng);
    const double phi0 = kTwoPi * unit(rng);
    for (int i = 0; i < n; ++i) {
      const double phi = phi0 + kTwoPi * i / n + 0.3 * amp(rng);
      pts.push_back(R * (1.2 + 1.2 * unit(rng)) * Point(std::cos(phi), std::sin(phi)));
    }
    return polygon_support(convex_hull(pts).vertices(), M);
  }
  const double s = dil(rng);
  std::vector<double> ca(6), sa(6);
  for (int m = 2; m < 6; ++m) ca[m] = 0.05 * R * amp(rng) / (m * m), sa[m] = 0.05 * R * amp(rng) / (m * m);
  auto perturbation = [&](double t) {
    double v = 0.0;
    for (int m = 2; m < 6; ++m) v += ca[m] * std::cos(m * t) + sa[m] * std::sin(m * t);
    return v;
  };
  Eigen::VectorXd samples(M);
  for (int j = 0; j < M; ++j) {
    const double t = kTwoPi * j / M;
    samples[j] = s * p.reference(t) + perturbation(t);
  }
  return SupportFunction::piecewise_affine(samples);
}

// Smoothing operator (I - l^2 d^2/dtheta^2)^{-1} in the strategy's coordinates.
Eigen::MatrixXd sobolev_smoother(const Strategy& s, double length) {
  const int d = s.dimension();
  if (length <= 0.0) return Eigen::MatrixXd::Identity(d, d);
  const double l2 = length * length;
  if (s.repr == Representation::Fourier) {
    Eigen::VectorXd w(d);
    w[0] = 1.0;
    for (int k = 1; k <= s.size; ++k) w[k] = w[s.size + k] = 1.0 / (1.0 + l2 * k * k);
    return w.asDiagonal();
  }
  const int M = s.size;
  const double tau = kTwoPi / M;
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(M, M) * (1.0 + 2.0 * l2 / (tau * tau));
  for (int j = 0; j < M; ++j) {
    A(j, (j + 1) % M) -= l2 / (tau * tau);
    A(j, (j + M - 1) % M) -= l2 / (tau * tau);
  }
  return A.inverse();
}

struct StartRun {
  Eigen::VectorXd F;
  double best = 0.0;  // sign * mu on the coarse mesh
  std::vector<TracePoint> trace;
  StartSummary summary;
  long evaluations = 0;
};

// Thin minimizers approach a segment, where mu_k depends on the profile
// but hardly on the thickness, so descent stalls well above the collapse
// threshold. Halve the width about the mid-line of the thinnest slab while
// mu_k stays within FEM noise of its value before the first compression.
// Fresh meshes are used: compressing the current mesh degrades its angles.
void collapse(const Problem& p, ShapeEvaluator& ev, const OptimizerOptions& opts, StartRun& run, int start_index) {
  const int M = p.strategy.repr == Representation::Fourier ? 1024 : p.strategy.size;
  Eigen::VectorXd F = run.F;
  int it = run.trace.back().iteration;
  double v0;
  try {
    v0 = ev.rebase(F)[p.k];
  } catch (const Error&) {
    return;
  }
  for (;;) {
    ConvexPolygon poly;
    try {
      poly = reconstruct_polygon(p.strategy.shape(F), ReconstructOptions{opts.polygon_samples, true, 0.0});
    } catch (const Error&) {
      return;
    }
    const double w = poly.min_width();
    if (w > opts.collapse_ratio * poly.diameter() || 0.5 * w < 2.0 * tol::epsilon_width) return;
    const double phi = poly.min_width_angle();
    const Point n(std::cos(phi), std::sin(phi));
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& v : poly.vertices()) lo = std::min(lo, v.dot(n)), hi = std::max(hi, v.dot(n));
    const Eigen::Matrix2d L = Eigen::Matrix2d::Identity() - 0.5 * n * n.transpose();
    const ConvexPolygon q = poly.transformed(L, 0.25 * (lo + hi) * n);
    const auto Ft = feasible_from(p, polygon_support(q.vertices(), M));
    if (!Ft) return;
    double v;
    try {
      v = ev.rebase(*Ft)[p.k];
    } catch (const Error& e) {
      if (!e.is_geometry() && e.kind() != ErrorKind::SolverDivergence && e.kind() != ErrorKind::DegenerateMass) throw;
      return;
    }
    if (v > v0 + opts.collapse_slack * std::abs(v0)) return;
    F = *Ft;
    run.F = F;
    run.best = v;
    run.trace.push_back({++it, v});
    if (opts.progress) opts.progress(start_index, it, v);
  }
}

StartRun run_start(const Problem& p, const Eigen::VectorXd& F0, const OptimizerOptions& opts, int start_index) {
  ShapeEvaluator ev(p.strategy, p.k + 1, opts.h_rel_coarse, opts.polygon_samples);
  StartRun run;
  Eigen::VectorXd F = F0;
  double v = p.sign * ev.rebase(F)[p.k];
  run.F = F;
  run.best = v;
  run.trace.push_back({0, p.sign * v});
  run.summary.initial_mu = p.sign * v;

  const double scale = std::max(F.cwiseAbs().maxCoeff(), 1e-12);
  // Steps are taken in z = S^{-1/2} F, where the Euclidean projection is the
  // projection in the metric of the smoother S. A run that stalls in the
  // Sobolev metric continues in the plain one.
  Eigen::MatrixXd R, Rinv, AR;
  auto set_metric = [&](double length) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sobolev_smoother(p.strategy, length));
    const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    R = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
    Rinv = es.eigenvectors() * root.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
    AR = p.sys.A * R;
  };
  set_metric(opts.sobolev_length);
  bool smoothed = opts.sobolev_length > 0.0;
  double alpha = 0.0;
  std::vector<double> history{v};
  // Returns true when the run is over.
  auto stop = [&](const char* reason) {
    if (smoothed) {
      smoothed = false;
      set_metric(0.0);
      alpha = 0.0;
      history.assign(1, v);
      return false;
    }
    run.summary.stop_reason = reason;
    return true;
  };
  auto value = [&](const Eigen::VectorXd& G, bool exact) -> std::optional<double> {
    try {
      return p.sign * ev.evaluate(G, exact)[p.k];
    } catch (const Error& e) {
      if (e.is_geometry() || e.kind() == ErrorKind::DegenerateMass || e.kind() == ErrorKind::SolverDivergence)
        return std::nullopt;
      throw;
    }
  };

  for (int it = 1; it <= opts.max_iters; ++it) {
    const Spectrum& base = ev.base_spectrum();
    const bool multiple = base.is_multiple(p.k);
    const double h = opts.fd_rel * scale * (multiple ? 0.5 : 1.0);
    const double shrink = multiple ? 0.25 : 0.5;

    Eigen::VectorXd g(F.size());
    for (int i = 0; i < F.size(); ++i) {
      Eigen::VectorXd Fp = F, Fm = F;
      Fp[i] += h;
      Fm[i] -= h;
      const auto vp = value(Fp, false);
      const auto vm = value(Fm, false);
      if (vp && vm) {
        // One-sided slopes of opposite sign mark a kink: follow the side
        // that descends, or stay put along this coordinate.
        const double up = (*vp - v) / h, down = (v - *vm) / h;
        if ((up < 0.0) == (down < 0.0))
          g[i] = 0.5 * (up + down);
        else if (up < 0.0)
          g[i] = -up > down ? up : down;
        else
          g[i] = 0.0;
      } else if (vp)
        g[i] = (*vp - v) / h;
      else if (vm)
        g[i] = (v - *vm) / h;
      else
        g[i] = 0.0;
    }
    const Eigen::VectorXd gz = R * g;
    const Eigen::VectorXd z = Rinv * F;
    const double gmax = (R * gz).cwiseAbs().maxCoeff();
    if (!(gmax > 0.0)) {
      if (stop("stationary")) break;
      continue;
    }
    if (alpha == 0.0) alpha = 0.05 * scale / gmax;

    bool accepted = false;
    bool stationary = false;
    Eigen::VectorXd Ft;
    for (int bt = 0; bt < opts.max_backtracks; ++bt, alpha *= shrink) {
      const auto prj = project_onto_polyhedron(AR, p.sys.B, z - alpha * gz, z);
      Ft = R * prj.x;
      const Eigen::VectorXd step = Ft - F;
      if (step.cwiseAbs().maxCoeff() <= 1e-12 * scale) {
        // The projected gradient vanishes unless alpha is simply too small.
        if (bt == 0) stationary = true;
        break;
      }
      if (!p.sys.feasible(Ft, tol::feas * std::max(1.0, p.scale))) continue;
      const auto vt = value(Ft, true);
      if (vt && *vt <= v + opts.armijo * g.dot(step)) {
        accepted = true;
        break;
      }
    }
    if (stationary || !accepted) {
      if (stop(stationary ? "stationary" : "line_search")) break;
      continue;
    }
    try {
      v = p.sign * ev.rebase(Ft)[p.k];
    } catch (const Error& e) {
      if (!e.is_geometry() && e.kind() != ErrorKind::SolverDivergence && e.kind() != ErrorKind::DegenerateMass) throw;
      run.summary.stop_reason = "remesh_failed";
      break;
    }
    F = Ft;
    alpha *= 2.0;
    run.trace.push_back({it, p.sign * v});
    run.summary.iterations = it;
    if (opts.progress) opts.progress(start_index, it, p.sign * v);
    if (v < run.best) run.best = v, run.F = F;
    history.push_back(v);
    const std::size_t w = static_cast<std::size_t>(opts.stall_window);
    if (history.size() > w) {
      const double old = history[history.size() - 1 - w];
      if (std::abs(old - v) <= opts.tol_opt * std::max(std::abs(v), 1e-12) && stop("converged")) break;
    }
  }
  if (p.kind == ProblemKind::Interior && opts.collapse_ratio > 0.0) collapse(p, ev, opts, run, start_index);
  run.summary.best_mu = p.sign * run.best;
  run.evaluations = ev.evaluations();
  return run;
}

}  // namespace

int worker_count(int requested, int starts) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("SSL_THREADS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return std::clamp(n, 1, std::max(1, starts));
}

OptimizationResult optimize(ProblemKind kind, const SupportFunction& reference, int k, const Strategy& strategy,
                            const OptimizerOptions& opts) {
  const Problem p = make_problem(kind, reference, k, strategy, opts.vertex_rows);
  const int n_starts = std::max(1, opts.starts);

  // Feasible starting points, generated sequentially for determinism.
  std::vector<Eigen::VectorXd> starts;
  for (int i = 0; i < n_starts; ++i) {
    std::optional<Eigen::VectorXd> F0;
    if (i < static_cast<int>(opts.initial.size())) {
      F0 = feasible_from(p, strategy.shape(opts.initial[i]).translated(-p.center));
    } else {
      std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                        static_cast<std::uint32_t>(i)};
      std::mt19937_64 rng(seq);
      for (int attempt = 0; attempt < 10 && !F0; ++attempt) {
        const SupportFunction f =
            kind == ProblemKind::Interior ? random_interior_start(p, rng) : random_exterior_start(p, rng);
        F0 = feasible_from(p, f);
      }
    }
    if (F0) starts.push_back(*F0);
  }
  if (starts.empty()) throw Error(ErrorKind::NoFeasibleStart, "no starting point could be projected onto the feasible set");

  std::vector<StartRun> runs(starts.size());
  std::vector<std::exception_ptr> errors(starts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < starts.size();) {
      try {
        runs[i] = run_start(p, starts[i], opts, static_cast<int>(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads = worker_count(opts.threads, static_cast<int>(starts.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  OptimizationResult res;
  res.kind = kind;
  res.k = k;
  res.strategy = strategy;
  res.seed = opts.seed;
  res.starts_used = static_cast<int>(starts.size());
  int best = -1;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    StartSummary s = runs[i].summary;
    if (errors[i]) {
      s.failed = true;
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        s.error = e.what();
      }
    } else {
      res.evaluations += runs[i].evaluations;
      if (best < 0 || runs[i].best < runs[best].best) best = static_cast<int>(i);
    }
    res.starts.push_back(s);
  }
  if (best < 0) std::rethrow_exception(errors[0]);

  res.best_start = best;
  res.objective_trace = runs[best].trace;
  const SupportFunction centered = strategy.shape(runs[best].F);
  res.shape = centered.translated(p.center);
  res.F_opt = res.shape.params();
  if (strategy.repr == Representation::Fourier && res.F_opt.size() != strategy.dimension())
    res.F_opt = strategy.encode(res.shape);
  res.shape = strategy.shape(res.F_opt);
  res.feasibility_residual = assemble_constraints(kind, strategy, reference, opts.vertex_rows).max_violation(res.F_opt);
  EvalOptions fine;
  fine.polygon_samples = opts.polygon_samples;
  fine.h_rel = opts.h_rel_final;
  res.spectrum = shape_spectrum(centered, k + 1, fine);
  res.mu = res.spectrum[k];
  return res;
}

OptimizationResult solve_interior(const SupportFunction& D, int k, const Strategy& strategy, const OptimizerOptions& opts) {
  return optimize(ProblemKind::Interior, D, k, strategy, opts);
}

OptimizationResult solve_exterior(const SupportFunction& omega, int k, const Strategy& strategy,
                                  const OptimizerOptions& opts) {
  return optimize(ProblemKind::Exterior, omega, k, strategy, opts);
}

}  // namespace ssl
