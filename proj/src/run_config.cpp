#include "ssl/run_config.hpp"

#include <iomanip>
#include <sstream>

#include "ssl/errors.hpp"

namespace ssl {

namespace {

ProblemKind parse_mode(const std::string& m) {
  if (m == "interior") return ProblemKind::Interior;
  if (m == "exterior") return ProblemKind::Exterior;
  throw Error(ErrorKind::InvalidInput, "mode must be interior or exterior, got '" + m + "'");
}

EvalOptions eval_options(const RunConfig& c) {
  if (!(c.h_rel > 0.0 && c.h_rel <= 0.5)) throw Error(ErrorKind::InvalidDiscretization, "h must lie in (0, 0.5]");
  if (c.refine < 0) throw Error(ErrorKind::InvalidDiscretization, "refine must be >= 0");
  EvalOptions e;
  e.h_rel = c.h_rel;
  e.refine = c.refine;
  return e;
}

OptimizerOptions optimizer_options(const RunConfig& c, const std::function<void(const std::string&)>& progress) {
  if (c.starts < 1) throw Error(ErrorKind::InvalidInput, "starts must be >= 1");
  if (c.max_iters < 0) throw Error(ErrorKind::InvalidInput, "max-iters must be >= 0");
  OptimizerOptions o;
  o.starts = c.starts;
  o.seed = c.seed;
  o.max_iters = c.max_iters;
  if (progress)
    o.progress = [progress](int start, int it, double mu) {
      std::ostringstream os;
      os << "start " << start << " iter " << it << " mu " << std::setprecision(8) << mu;
      progress(os.str());
    };
  return o;
}

std::string fmt(double x, int digits = 8) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

RunOutput run_eig(const RunConfig& c) {
  const ShapeSpec spec = parse_shape(c.shape);
  if (c.k < 0) throw Error(ErrorKind::InvalidInput, "k must be >= 0");
  const EvalOptions e = eval_options(c);
  const Spectrum s = spec.spectrum(c.k, e);
  RunOutput out;
  out.report["result"] = {{"shape", spec.id}, {"spectrum", to_json(s)}};
  std::ostringstream t, csv, mesh;
  t << "k  mu_k   (" << spec.id << ", " << s.n_dof << " dofs, h = " << fmt(s.mesh_h, 4) << ")\n";
  for (std::size_t i = 0; i < s.size(); ++i)
    t << std::setw(2) << i << "  " << fmt(s[i], 10) << (s.is_multiple(i) ? "  *" : "") << '\n';
  write_spectrum_csv(csv, s);
  TriangleMesh m = spec.polygon ? triangulate(*spec.polygon, e.h_rel * spec.polygon->diameter()) : mesh_shape(spec.support, e);
  if (spec.polygon)
    for (int r = 0; r < e.refine; ++r) m = refine(m);
  write_mesh(mesh, m);
  out.table = t.str();
  out.csv = csv.str();
  out.mesh = mesh.str();
  return out;
}

RunOutput run_bounds(const RunConfig& c) {
  const ShapeSpec spec = parse_shape(c.shape);
  if (c.k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  const BoundsReport b = bounds_report(spec.support, c.k, spec.id, eval_options(c), c.C);
  RunOutput out;
  out.report["result"] = to_json(b);
  std::ostringstream t;
  t << spec.id << ", k = " << c.k << ": diam " << fmt(b.diameter, 6) << ", min width " << fmt(b.min_width, 6)
    << ", area " << fmt(b.area, 6) << '\n';
  t << "  Payne-Weinberger lower  " << fmt(b.pw_lower) << '\n';
  t << "  Buser grid lower        " << fmt(b.buser_lower) << '\n';
  t << "  c_k / diam^2            " << fmt(b.c_k_lower) << '\n';
  if (b.has_mu) t << "  mu_k (FEM)              " << fmt(b.mu_fem) << '\n';
  t << "  diameter upper          " << fmt(b.diam_upper) << '\n';
  t << "  k0                      " << fmt(b.k0, 6) << '\n';
  if (c.k >= 2) {
    const MkBounds mk = m_k_bounds(c.k, c.C);
    out.report["result"]["m_k"] = to_json(mk);
    t << "  M_k in [" << fmt(mk.lower, 6) << ", " << fmt(mk.upper, 6) << "]" << (mk.clamped ? " (clamped)" : "") << '\n';
  }
  for (const auto& ch : b.inequality_checks)
    t << "  " << (ch.pass ? "ok   " : "FAIL ") << ch.name << ": " << fmt(ch.lhs) << " <= " << fmt(ch.rhs)
      << (ch.pass && ch.lhs > ch.rhs ? "  (within FEM tolerance)" : "") << '\n';
  out.table = t.str();
  return out;
}

RunOutput run_optimize(const RunConfig& c, const std::function<void(const std::string&)>& progress) {
  const ShapeSpec spec = parse_shape(c.shape);
  const ProblemKind kind = parse_mode(c.mode);
  const OptimizationResult r =
      optimize(kind, spec.support, c.k, Strategy::parse(c.strategy), optimizer_options(c, progress));
  RunOutput out;
  out.report["result"] = to_json(r);
  out.report["result"]["reference"] = spec.id;
  std::ostringstream t, csv;
  t << to_string(kind) << " mu_" << c.k << " for " << spec.id << " with " << c.strategy << ": " << fmt(r.mu, 10)
    << '\n';
  t << "  best start " << r.best_start << " of " << r.starts_used << ", feasibility residual "
    << fmt(r.feasibility_residual, 3) << ", diam " << fmt(diameter(r.shape), 6) << ", min width "
    << fmt(min_width(r.shape), 6) << '\n';
  for (std::size_t i = 0; i < r.starts.size(); ++i) {
    const auto& s = r.starts[i];
    t << "  start " << i << ": " << fmt(s.initial_mu, 6) << " -> " << fmt(s.best_mu, 8) << " in " << s.iterations
      << " iterations (" << (s.failed ? "failed: " + s.error : s.stop_reason) << ")\n";
  }
  write_trace_csv(csv, r);
  out.table = t.str();
  out.csv = csv.str();
  out.svgs.emplace_back("", overlay_svg(spec.support, r.shape));
  return out;
}

RunOutput run_scan(const RunConfig& c) {
  if (c.shape.size() != 1) throw Error(ErrorKind::InvalidInput, "scan takes one family name");
  if (c.grid < 2) throw Error(ErrorKind::InvalidInput, "grid must be >= 2");
  if (c.k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  const ParametricFamily fam = ParametricFamily::parse(c.shape[0]);
  const auto [lo, hi] = fam.domain();
  const ScanResult r = scan_family(fam, c.k, uniform_grid(lo, hi, c.grid), eval_options(c));
  RunOutput out;
  out.report["result"] = to_json(r);
  std::ostringstream t, csv, svg;
  t << fam.name() << ", k = " << c.k << ": " << (r.maximize ? "max" : "min") << " mu_" << c.k << " = "
    << fmt(r.best_value) << " at t = " << fmt(r.best_param, 6) << '\n';
  write_scan_csv(csv, r);
  const ConvexPolygon best = fam.polygon(r.best_param);
  const ConvexPolygon ref = reconstruct_polygon(fam.reference(), 0);
  write_svg(svg, {{ref, false, "#000000"}, {best, true, "#1f4e99"}});
  out.table = t.str();
  out.csv = csv.str();
  out.svgs.emplace_back("", svg.str());
  return out;
}

RunOutput run_iterate(const RunConfig& c, const std::function<void(const std::string&)>& progress) {
  const ShapeSpec spec = parse_shape(c.shape);
  if (c.iterations < 1) throw Error(ErrorKind::InvalidInput, "n must be >= 1");
  SchemeOptions so;
  so.strategy = Strategy::parse(c.strategy);
  so.optimizer = optimizer_options(c, {});
  if (progress) so.progress = [progress](int n) { progress("iteration " + std::to_string(n) + " done"); };
  const SchemeTrace tr = run_scheme(spec.support, c.k, c.iterations, so);
  const MonotonicityCheck mc = check_monotonicity(tr);
  RunOutput out;
  out.report["result"] = to_json(tr, mc);
  out.report["result"]["box"] = spec.id;
  out.error = tr.error;
  std::ostringstream t, csv;
  t << "n  mu_k(Omega_n)  mu_k(D_n)  J_k(D_n)  min_width(D_n)\n";
  for (const auto& s : tr.steps)
    t << s.n << "  " << fmt(s.mu_omega) << "  " << fmt(s.mu_D) << "  " << fmt(s.J) << "  " << fmt(s.min_width_D, 5)
      << '\n';
  t << "status " << to_string(tr.status) << "; monotone mu(D) " << mc.mu_D_nondecreasing << ", mu(Omega) "
    << mc.mu_omega_nonincreasing << ", J " << mc.J_nonincreasing << ", inclusions " << mc.inclusions << '\n';
  if (tr.status == SchemeStatus::Collapsed)
    t << "collapsed: J = " << fmt(tr.steps.back().J) << " against the conjectured limit " << fmt(tr.conjectured_limit)
      << '\n';
  if (!tr.error.empty()) t << "stopped early: " << tr.error << '\n';
  write_scheme_csv(csv, tr);
  for (const auto& s : tr.steps) out.svgs.emplace_back("_" + std::to_string(s.n), overlay_svg(s.D, s.omega));
  out.table = t.str();
  out.csv = csv.str();
  return out;
}

RunOutput run_self_domain(const RunConfig& c) {
  const ShapeSpec spec = parse_shape(c.shape);
  SelfDomainOptions so;
  so.eval = eval_options(c);
  so.probe = c.probe;
  so.probe_strategy = Strategy::parse(c.strategy);
  so.probe_options.seed = c.seed;
  const SelfDomainReport r = self_domain_check(spec.support, c.k, parse_mode(c.mode), so, spec.id);
  RunOutput out;
  out.report["result"] = to_json(r);
  out.table = std::string(to_string(r.verdict)) + "  (" + spec.id + ", k = " + std::to_string(c.k) + ", " +
              c.mode + "): " + r.reason + '\n';
  return out;
}

}  // namespace

Json to_json(const RunConfig& c) {
  return {{"version", c.version}, {"command", c.command}, {"shape", c.shape},         {"mode", c.mode},
          {"k", c.k},             {"strategy", c.strategy}, {"h_rel", c.h_rel},       {"refine", c.refine},
          {"starts", c.starts},   {"seed", c.seed},       {"max_iters", c.max_iters}, {"grid", c.grid},
          {"iterations", c.iterations}, {"probe", c.probe}, {"C", c.C}};
}

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  try {
    c.version = j.at("version").get<int>();
    if (c.version != kConfigVersion)
      throw Error(ErrorKind::InvalidInput, "unsupported config version " + std::to_string(c.version));
    c.command = j.at("command").get<std::string>();
    c.shape = j.value("shape", c.shape);
    c.mode = j.value("mode", c.mode);
    c.k = j.value("k", c.k);
    c.strategy = j.value("strategy", c.strategy);
    c.h_rel = j.value("h_rel", c.h_rel);
    c.refine = j.value("refine", c.refine);
    c.starts = j.value("starts", c.starts);
    c.seed = j.value("seed", c.seed);
    c.max_iters = j.value("max_iters", c.max_iters);
    c.grid = j.value("grid", c.grid);
    c.iterations = j.value("iterations", c.iterations);
    c.probe = j.value("probe", c.probe);
    c.C = j.value("C", c.C);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("bad config: ") + e.what());
  }
  return c;
}

RunOutput execute(const RunConfig& c, const std::function<void(const std::string&)>& progress) {
  RunOutput out;
  if (c.command == "eig") out = run_eig(c);
  else if (c.command == "bounds") out = run_bounds(c);
  else if (c.command == "optimize") out = run_optimize(c, progress);
  else if (c.command == "scan") out = run_scan(c);
  else if (c.command == "iterate") out = run_iterate(c, progress);
  else if (c.command == "self-domain") out = run_self_domain(c);
  else throw Error(ErrorKind::InvalidInput, "unknown command '" + c.command + "'");
  out.report["version"] = kConfigVersion;
  out.report["config"] = to_json(c);
  return out;
}

}  // namespace ssl
