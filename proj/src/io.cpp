#include "ssl/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "ssl/errors.hpp"

namespace ssl {

namespace {

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

double number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidInput, "bad " + what + " '" + s + "'");
}

ShapeSpec from_polygon(std::string id, ConvexPolygon poly, int M) {
  SupportFunction f = polygon_support(poly.vertices(), M);
  return {std::move(id), std::move(f), std::move(poly)};
}

std::string join(const std::vector<std::string>& tokens) {
  std::string s;
  for (const auto& t : tokens) s += (s.empty() ? "" : " ") + t;
  return s;
}

Json geometry(const SupportFunction& f) {
  return {{"diameter", diameter(f)}, {"min_width", min_width(f)}, {"area", area(f)}};
}

}  // namespace

Spectrum ShapeSpec::spectrum(int kmax, const EvalOptions& opts) const {
  return polygon ? polygon_spectrum(*polygon, kmax, opts) : shape_spectrum(support, kmax, opts);
}

ShapeSpec parse_shape(const std::vector<std::string>& tokens, int M) {
  if (tokens.empty()) throw Error(ErrorKind::InvalidInput, "missing shape");
  const std::string& name = tokens[0];
  const std::size_t extra = tokens.size() - 1;
  auto arg = [&](std::size_t i, double fallback) { return i <= extra ? number(tokens[i], name + " size") : fallback; };
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (extra < lo || extra > hi) throw Error(ErrorKind::InvalidInput, "wrong number of arguments for '" + name + "'");
  };

  if (name == "disk") {
    arity(0, 1);
    const double r = arg(1, 1.0);
    if (!(r > 0.0)) throw Error(ErrorKind::InvalidInput, "disk radius must be positive");
    return {join(tokens), disk_support(r), std::nullopt};
  }
  if (name == "square" || name == "unit-square") {
    arity(0, name == "square" ? 1 : 0);
    const double h = arg(1, 1.0);
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidInput, "square half side must be positive");
    const Point lo = name == "square" ? Point(-h, -h) : Point(0, 0);
    const Point hi = name == "square" ? Point(h, h) : Point(1, 1);
    return from_polygon(join(tokens), ConvexPolygon({lo, {hi.x(), lo.y()}, hi, {lo.x(), hi.y()}}), M);
  }
  if (name == "rectangle") {
    arity(2, 2);
    const double a = arg(1, 0.0), b = arg(2, 0.0);
    if (!(a > 0.0 && b > 0.0)) throw Error(ErrorKind::InvalidInput, "rectangle sides must be positive");
    return from_polygon(join(tokens), ConvexPolygon({{-a / 2, -b / 2}, {a / 2, -b / 2}, {a / 2, b / 2}, {-a / 2, b / 2}}),
                        M);
  }
  if (name == "reuleaux") {
    arity(0, 1);
    const double w = arg(1, 2.0);
    if (!(w > 0.0)) throw Error(ErrorKind::InvalidInput, "reuleaux width must be positive");
    return {join(tokens), reuleaux_support(w, std::max(M, 720)), std::nullopt};
  }
  const std::size_t colon = name.rfind(':');
  if (colon != std::string::npos && extra == 0) {
    bool family = true;
    ParametricFamily fam;
    try {
      fam = ParametricFamily::parse(name.substr(0, colon));
    } catch (const Error&) {
      family = false;
    }
    if (family) return from_polygon(name, fam.polygon(number(name.substr(colon + 1), "family parameter")), M);
  }
  if (extra != 0) throw Error(ErrorKind::InvalidInput, "unknown shape '" + name + "'");
  return load_shape_file(name, M);
}

ShapeSpec load_shape_file(const std::string& path, int M) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open shape file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
    }
    if (j.contains("result") && j["result"].contains("shape")) j = j["result"]["shape"];
    else if (j.contains("shape")) j = j["shape"];
    return {path, support_from_json(j), std::nullopt};
  }
  std::vector<Point> pts;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double x = 0.0, y = 0.0;
    if (!(ls >> x)) continue;
    if (!(ls >> y)) throw Error(ErrorKind::InvalidInput, path + ": expected 'x y' per line");
    pts.emplace_back(x, y);
  }
  if (pts.size() < 3) throw Error(ErrorKind::DegenerateShape, path + ": need at least three vertices");
  ConvexPolygon hull = convex_hull(pts);
  if (hull.size() < pts.size()) throw Error(ErrorKind::DegenerateShape, path + ": vertices are not in convex position");
  return from_polygon(path, std::move(hull), M);
}

Json to_json(const SupportFunction& f) {
  return {{"repr", f.is_fourier() ? "fourier" : "pwa"}, {"params", to_vector(f.params())}};
}

SupportFunction support_from_json(const Json& j) {
  try {
    const std::string repr = j.at("repr").get<std::string>();
    const auto p = j.at("params").get<std::vector<double>>();
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
    if (repr == "fourier") {
      if (v.size() % 2 == 0) throw Error(ErrorKind::InvalidInput, "Fourier coefficients must have odd length");
      return SupportFunction::fourier(std::move(v));
    }
    if (repr == "pwa") {
      if (v.size() < 3) throw Error(ErrorKind::InvalidDiscretization, "need at least three samples");
      return SupportFunction::piecewise_affine(std::move(v));
    }
    throw Error(ErrorKind::InvalidInput, "unknown representation '" + repr + "'");
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("bad support function: ") + e.what());
  }
}

Json to_json(const ConvexPolygon& p) {
  Json v = Json::array();
  for (const auto& q : p.vertices()) v.push_back({q.x(), q.y()});
  return v;
}

Json to_json(const Spectrum& s) {
  return {{"values", s.values}, {"multiple", s.multiple}, {"mesh_h", s.mesh_h}, {"n_dof", s.n_dof}};
}

Json to_json(const OptimizationResult& r) {
  Json starts = Json::array();
  for (const auto& s : r.starts) {
    Json e = {{"initial_mu", s.initial_mu}, {"best_mu", s.best_mu}, {"iterations", s.iterations},
              {"stop_reason", s.stop_reason}, {"failed", s.failed}};
    if (s.failed) e["error"] = s.error;
    starts.push_back(std::move(e));
  }
  Json trace = Json::array();
  for (const auto& t : r.objective_trace) trace.push_back({t.iteration, t.mu});
  return {{"kind", to_string(r.kind)},
          {"k", r.k},
          {"strategy", r.strategy.to_string()},
          {"mu", r.mu},
          {"F_opt", to_vector(r.F_opt)},
          {"shape", to_json(r.shape)},
          {"geometry", geometry(r.shape)},
          {"spectrum", to_json(r.spectrum)},
          {"feasibility_residual", r.feasibility_residual},
          {"starts_used", r.starts_used},
          {"best_start", r.best_start},
          {"seed", r.seed},
          {"evaluations", r.evaluations},
          {"starts", std::move(starts)},
          {"objective_trace", std::move(trace)}};
}

Json to_json(const ScanResult& r) {
  Json grid = Json::array();
  for (const auto& g : r.grid) grid.push_back({g.param, g.mu});
  return {{"family", r.family.name()}, {"k", r.k},         {"maximize", r.maximize}, {"best_param", r.best_param},
          {"best_value", r.best_value}, {"grid", std::move(grid)}};
}

Json to_json(const SchemeTrace& t, const MonotonicityCheck& check) {
  Json steps = Json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"n", s.n},
                     {"mu_omega", s.mu_omega},
                     {"mu_D", s.mu_D},
                     {"J", s.J},
                     {"min_width_D", s.min_width_D},
                     {"diam_D", s.diam_D},
                     {"omega_in_D", s.omega_in_D},
                     {"omega", to_json(s.omega)},
                     {"D", to_json(s.D)}});
  Json j = {{"k", t.k},
            {"status", to_string(t.status)},
            {"diameter_cap", t.diameter_cap},
            {"conjectured_limit", t.conjectured_limit},
            {"steps", std::move(steps)},
            {"monotonicity",
             {{"mu_D_nondecreasing", check.mu_D_nondecreasing},
              {"mu_omega_nonincreasing", check.mu_omega_nonincreasing},
              {"J_nonincreasing", check.J_nonincreasing},
              {"inclusions", check.inclusions},
              {"diameters_bounded", check.diameters_bounded}}}};
  if (t.status == SchemeStatus::Collapsed && !t.steps.empty())
    j["J_minus_conjectured_limit"] = t.steps.back().J - t.conjectured_limit;
  if (!t.error.empty()) j["error"] = t.error;
  return j;
}

Json to_json(const SelfDomainReport& r) {
  Json j = {{"shape", r.shape_id},
            {"k", r.k},
            {"mode", to_string(r.mode)},
            {"verdict", to_string(r.verdict)},
            {"reason", r.reason},
            {"relative_gap", r.relative_gap},
            {"spectrum", to_json(r.spectrum)}};
  if (r.mode == ProblemKind::Exterior) {
    j["strictly_convex_arc"] = r.strictly_convex;
    j["shortest_side"] = r.shortest_side;
    j["side_threshold"] = r.side_threshold;
  }
  if (r.probed) j["probe_mu"] = r.probe_mu;
  return j;
}

Json to_json(const BoundsReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.inequality_checks)
    checks.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
  Json j = {{"shape", r.shape_id},
            {"k", r.k},
            {"diameter", r.diameter},
            {"min_width", r.min_width},
            {"area", r.area},
            {"payne_weinberger_lower", r.pw_lower},
            {"diameter_upper", r.diam_upper},
            {"buser_lower", r.buser_lower},
            {"c_k_lower", r.c_k_lower},
            {"C", r.C},
            {"k0", r.k0},
            {"inequalities", std::move(checks)}};
  if (r.has_mu) j["mu_fem"] = r.mu_fem;
  return j;
}

Json to_json(const MkBounds& b) {
  return {{"lower", b.lower}, {"upper", b.upper}, {"raw_lower", b.raw_lower}, {"clamped", b.clamped}, {"C", b.C}};
}

void write_svg(std::ostream& os, const std::vector<SvgLayer>& layers, int pixels) {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  for (const auto& l : layers)
    for (const auto& p : l.polygon.vertices()) {
      x0 = std::min(x0, p.x()), x1 = std::max(x1, p.x());
      y0 = std::min(y0, p.y()), y1 = std::max(y1, p.y());
    }
  if (!(x1 > x0)) x0 = -1, x1 = 1;
  if (!(y1 > y0)) y0 = -1, y1 = 1;
  const double span = std::max(x1 - x0, y1 - y0);
  const double pad = 0.05 * span;
  const double scale = pixels / (span + 2 * pad);
  auto X = [&](double x) { return (x - x0 + pad) * scale; };
  auto Y = [&](double y) { return (y1 - y + pad) * scale; };  // flip to keep y up
  const int w = static_cast<int>(std::ceil(X(x1) + pad * scale)), h = static_cast<int>(std::ceil(Y(y0) + pad * scale));

  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
     << ' ' << h << "\">\n";
  for (const auto& l : layers) {
    os << "  <polygon points=\"";
    for (const auto& p : l.polygon.vertices()) os << X(p.x()) << ',' << Y(p.y()) << ' ';
    if (l.filled)
      os << "\" fill=\"" << l.color << "\" fill-opacity=\"0.5\" stroke=\"" << l.color << "\" stroke-width=\"1\"/>\n";
    else
      os << "\" fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"1.5\"/>\n";
  }
  os << "</svg>\n";
}

std::string overlay_svg(const SupportFunction& reference, const SupportFunction& candidate) {
  const ReconstructOptions ro{0, true, 0.0};
  std::ostringstream os;
  write_svg(os, {{reconstruct_polygon(reference, ro), false, "#000000"},
                 {reconstruct_polygon(candidate, ro), true, "#1f4e99"}});
  return os.str();
}

void write_trace_csv(std::ostream& os, const OptimizationResult& r) {
  os << "iteration,mu\n" << std::setprecision(12);
  for (const auto& t : r.objective_trace) os << t.iteration << ',' << t.mu << '\n';
}

void write_scheme_csv(std::ostream& os, const SchemeTrace& t) {
  os << "n,mu_omega,mu_D,J,min_width_D,diam_D\n" << std::setprecision(12);
  for (const auto& s : t.steps)
    os << s.n << ',' << s.mu_omega << ',' << s.mu_D << ',' << s.J << ',' << s.min_width_D << ',' << s.diam_D << '\n';
}

void write_scan_csv(std::ostream& os, const ScanResult& r) {
  os << "param,mu\n" << std::setprecision(12);
  for (const auto& g : r.grid) os << g.param << ',' << g.mu << '\n';
}

void write_mesh(std::ostream& os, const TriangleMesh& mesh) {
  os << std::setprecision(17) << "nodes " << mesh.nodes.size() << '\n';
  for (const auto& p : mesh.nodes) os << p.x() << ' ' << p.y() << '\n';
  os << "triangles " << mesh.triangles.size() << '\n';
  for (const auto& t : mesh.triangles) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  os << "boundary " << mesh.boundary_edges.size() << '\n';
  for (const auto& e : mesh.boundary_edges) os << e[0] << ' ' << e[1] << '\n';
}

}  // namespace ssl
