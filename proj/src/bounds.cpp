#include "ssl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssl/errors.hpp"
#include "ssl/reference_spectra.hpp"

namespace ssl {

namespace {

constexpr double kPi2 = M_PI * M_PI;

double cheng_numerator(int k) {
  const double s = 2.0 * j01() + (k - 1) * M_PI;
  return s * s;
}

// Largest piece diameter of the polygon cut by an N x N grid over the
// smallest axis-aligned square (in the frame rotated by -phi) containing it.
double grid_piece_diameter(const ConvexPolygon& poly, int N, double phi) {
  Eigen::Matrix2d R;
  R << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
  const ConvexPolygon q = poly.transformed(R, Point::Zero());
  Point lo = q.vertices()[0], hi = lo;
  for (const auto& p : q.vertices()) lo = lo.cwiseMin(p), hi = hi.cwiseMax(p);
  const double side = (hi - lo).maxCoeff();
  const double cell = side / N;
  double worst = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      std::optional<ConvexPolygon> piece = q;
      const double x0 = lo.x() + i * cell, y0 = lo.y() + j * cell;
      if (i > 0) piece = piece ? piece->clipped({-1, 0}, -x0) : piece;
      if (i + 1 < N) piece = piece ? piece->clipped({1, 0}, x0 + cell) : piece;
      if (j > 0) piece = piece ? piece->clipped({0, -1}, -y0) : piece;
      if (j + 1 < N) piece = piece ? piece->clipped({0, 1}, y0 + cell) : piece;
      if (piece) worst = std::max(worst, piece->diameter());
    }
  return worst;
}

}  // namespace

double j01() {
  static const double value = bessel_root(0, 1, BesselKind::ZeroOfJ);
  return value;
}

double payne_weinberger(double diam) { return kPi2 / (diam * diam); }
double payne_weinberger(const SupportFunction& f) { return payne_weinberger(diameter(f)); }

double diameter_upper(double diam, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  return cheng_numerator(k) / (diam * diam);
}
double diameter_upper(const SupportFunction& f, int k) { return diameter_upper(diameter(f), k); }

double buser_grid_lower(const ConvexPolygon& poly, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  const int N = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k)) + 1e-12));
  if (N == 1) return kPi2 / std::pow(poly.diameter(), 2);
  std::vector<double> angles;
  const auto [a, b] = poly.diameter_endpoints();
  angles.push_back(std::atan2(b.y() - a.y(), b.x() - a.x()));
  angles.push_back(poly.min_width_angle());
  for (int i = 0; i < 16; ++i) angles.push_back(0.5 * M_PI * i / 16);
  double best = std::numeric_limits<double>::infinity();
  for (double phi : angles) best = std::min(best, grid_piece_diameter(poly, N, phi));
  return kPi2 / (best * best);
}

double buser_grid_lower(const SupportFunction& f, int k) {
  return buser_grid_lower(reconstruct_polygon(f, ReconstructOptions{0, true, tol::epsilon_width}), k);
}

double c_k(int k, double C) {
  if (k < 2) throw Error(ErrorKind::Unsupported, "c_k is defined for k >= 2; use payne_weinberger for k = 1");
  if (k == 2)
    return 0.5 * kPi2 * (1.0 + std::sqrt(1.0 + 7.0 * C / (2.0 * kPi2) + C * C / (16.0 * kPi2 * kPi2))) - C / 8.0;
  if (k == 3)
    return 0.5 * kPi2 * (1.0 + std::sqrt(1.0 + 34.0 * C / (9.0 * kPi2) + C * C / (81.0 * kPi2 * kPi2))) - C / 18.0;
  const int N = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k)) + 1e-12));
  return N * N * kPi2 / 2.0;
}

MkBounds m_k_bounds(int k, double C) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  MkBounds b;
  b.C = C;
  if (k == 1) {
    b.lower = b.upper = b.raw_lower = kPi2 / (4.0 * j01() * j01());
    return b;
  }
  const double den = cheng_numerator(k);
  b.upper = k * k * kPi2 / den;
  b.raw_lower = c_k(k, C) * kPi2 / den;
  b.clamped = b.raw_lower > b.upper;
  b.lower = std::min(b.raw_lower, b.upper);
  return b;
}

ExistenceReport existence_criterion(const SupportFunction& D, const SupportFunction& candidate, int k,
                                    const EvalOptions& opts, double tol_fem) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  const double scale = std::max(1.0, std::abs(D(0.0)) + std::abs(D(M_PI)));
  if (!contains(D, candidate, 0, 1e-9 * scale)) throw Error(ErrorKind::NotContained, "candidate is not inside D");
  ExistenceReport r;
  const double d = diameter(D);
  r.threshold = k * k * kPi2 / (d * d);
  r.mu_k = mu_k(candidate, k, opts);
  r.status = (k >= 2 && r.mu_k <= r.threshold * (1.0 + tol_fem)) ? Existence::Satisfied : Existence::NotSatisfied;
  return r;
}

double k0_bound(const ConvexPolygon& D) { return 8.0 * D.diameter() / (M_PI * D.min_width()); }
double k0_bound(const SupportFunction& D) { return 8.0 * diameter(D) / (M_PI * min_width(D)); }

double cusp_poincare_lower(double a, double b, double c, double L) {
  if (!(a > 0 && b > 0 && c > 0 && L >= 0)) throw Error(ErrorKind::InvalidInput, "need a, b, c > 0 and L >= 0");
  return 1.0 / (16.0 * (L * L + 1.0) * std::max((a + b) * (a + b), c * c));
}

CuspConfiguration cusp_configuration(const ConvexPolygon& D, const Point& P, const Point& Q) {
  if (D.contains(Q, 1e-12)) throw Error(ErrorKind::InvalidInput, "Q must lie outside D");
  const Point ey = (Q - P).normalized();
  const Point ex(ey.y(), -ey.x());
  auto local = [&](const Point& p) { return Point((p - P).dot(ex), (p - P).dot(ey)); };
  const double q = (Q - P).norm();
  const auto& V = D.vertices();
  const std::size_t n = V.size();
  // Angle of each vertex seen from Q, measured from the downward vertical.
  std::size_t iplus = 0, iminus = 0;
  double amax = -std::numeric_limits<double>::infinity(), amin = -amax;
  for (std::size_t i = 0; i < n; ++i) {
    const Point d = local(V[i]) - Point(0.0, q);
    const double ang = std::atan2(d.x(), -d.y());
    if (ang > amax) amax = ang, iplus = i;
    if (ang < amin) amin = ang, iminus = i;
  }
  CuspConfiguration cfg;
  cfg.tangent_plus = V[iplus];
  cfg.tangent_minus = V[iminus];
  const Point tp = local(V[iplus]), tm = local(V[iminus]);
  cfg.a = -tm.x();
  cfg.b = tp.x();
  if (!(cfg.a > 0.0 && cfg.b > 0.0)) throw Error(ErrorKind::InvalidInput, "tangent points do not straddle the axis");
  auto g = [&](double x) {
    const Point& t = x <= 0.0 ? tm : tp;
    return q + (t.y() - q) * (x / t.x());
  };
  // Boundary chain facing Q runs counterclockwise from T+ to T-.
  std::vector<Point> chain;
  for (std::size_t i = iplus;; i = (i + 1) % n) {
    chain.push_back(local(V[i]));
    if (i == iminus) break;
  }
  auto f = [&](double x) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const Point& u = chain[i];
      const Point& w = chain[i + 1];
      const double lo = std::min(u.x(), w.x()), hi = std::max(u.x(), w.x());
      if (x >= lo && x <= hi) return hi - lo > 0.0 ? u.y() + (w.y() - u.y()) * (x - u.x()) / (w.x() - u.x()) : std::max(u.y(), w.y());
    }
    return 0.0;
  };
  cfg.c = g(0.0) - f(0.0);
  for (const auto& p : chain) cfg.c = std::max(cfg.c, g(p.x()) - p.y());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    const double dx = chain[i + 1].x() - chain[i].x();
    if (std::abs(dx) > 1e-14) cfg.L = std::max(cfg.L, std::abs((chain[i + 1].y() - chain[i].y()) / dx));
  }
  return cfg;
}

std::vector<InequalityCheck> inequality_suite(const ConvexPolygon& poly, const Spectrum& s, double tol) {
  std::vector<InequalityCheck> out;
  auto add = [&](std::string name, double lhs, double rhs) {
    out.push_back({std::move(name), lhs, rhs, lhs <= rhs * (1.0 + tol)});
  };
  const double diam = poly.diameter();
  const double area = poly.area();
  const double w = poly.min_width();
  const int kmax = static_cast<int>(s.size()) - 1;
  if (kmax < 1) return out;
  const double mu1 = s[1];
  add("payne_weinberger", payne_weinberger(diam), mu1);
  for (int k = 1; k <= kmax; ++k) add("cheng_kroger_k" + std::to_string(k), s[k], diameter_upper(diam, k));
  const double jp11 = bessel_root(1, 1, BesselKind::ZeroOfJPrime);
  add("szego_weinberger", area * mu1, M_PI * jp11 * jp11);
  add("width_area", mu1, kPi2 * w * w / (area * area));
  for (int k = 1; k <= kmax; ++k) add("buser_grid_k" + std::to_string(k), buser_grid_lower(poly, k), s[k]);
  return out;
}

BoundsReport bounds_report(const SupportFunction& f, int k, const std::string& shape_id, const EvalOptions& opts,
                           double C, bool with_fem) {
  const ConvexPolygon poly = reconstruct_polygon(f, ReconstructOptions{opts.polygon_samples, true, tol::epsilon_width});
  BoundsReport r;
  r.shape_id = shape_id;
  r.k = k;
  r.C = C;
  r.diameter = poly.diameter();
  r.min_width = poly.min_width();
  r.area = poly.area();
  r.pw_lower = payne_weinberger(r.diameter);
  r.diam_upper = diameter_upper(r.diameter, k);
  r.buser_lower = buser_grid_lower(poly, k);
  r.c_k_lower = k >= 2 ? c_k(k, C) / (r.diameter * r.diameter) : r.pw_lower;
  r.k0 = k0_bound(poly);
  if (with_fem) {
    const Spectrum s = polygon_spectrum(poly, std::max(k, 1), opts);
    r.has_mu = true;
    r.mu_fem = s[k];
    r.inequality_checks = inequality_suite(poly, s);
  }
  return r;
}

}  // namespace ssl
