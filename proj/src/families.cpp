#include "ssl/families.hpp"

#include <algorithm>
#include <cmath>

#include "ssl/errors.hpp"

namespace ssl {

namespace {

constexpr int kCirclePoints = 256;

std::vector<Point> circle_points(double radius) {
  std::vector<Point> pts;
  for (int i = 0; i < kCirclePoints; ++i) pts.push_back(radius * unit_direction(2.0 * M_PI * i / kCirclePoints));
  return pts;
}

// Circumscribed so that hulls contain the unit disk.
double circumradius() { return 1.0 / std::cos(M_PI / kCirclePoints); }

}  // namespace

ParametricFamily ParametricFamily::parse(const std::string& text) {
  ParametricFamily f;
  if (text == "disk-square-intersection") {
    f.kind = FamilyKind::DiskSquareIntersection;
  } else if (text == "hull-disk-points" || text == "hull-disk-points:2") {
    f.kind = FamilyKind::HullDiskPoints;
  } else if (text == "hull-disk-points:4") {
    f.kind = FamilyKind::HullDiskPoints;
    f.n_points = 4;
  } else if (text == "hull-square-points") {
    f.kind = FamilyKind::HullSquarePoints;
  } else if (text == "octagon") {
    f.kind = FamilyKind::Octagon;
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown family '" + text + "'");
  }
  return f;
}

std::string ParametricFamily::name() const {
  switch (kind) {
    case FamilyKind::DiskSquareIntersection: return "disk-square-intersection";
    case FamilyKind::HullDiskPoints: return "hull-disk-points:" + std::to_string(n_points);
    case FamilyKind::HullSquarePoints: return "hull-square-points";
    case FamilyKind::Octagon: return "octagon";
  }
  return "?";
}

std::pair<double, double> ParametricFamily::domain() const {
  switch (kind) {
    case FamilyKind::DiskSquareIntersection: return {0.0, M_PI / 4};
    case FamilyKind::HullDiskPoints: return {1.0, 3.0};
    case FamilyKind::HullSquarePoints: return {1.0, 3.5};
    case FamilyKind::Octagon: return {0.0, 1.0};
  }
  return {0.0, 1.0};
}

ProblemKind ParametricFamily::problem() const {
  return kind == FamilyKind::DiskSquareIntersection || kind == FamilyKind::Octagon ? ProblemKind::Interior
                                                                                   : ProblemKind::Exterior;
}

SupportFunction ParametricFamily::reference(int M) const {
  switch (kind) {
    case FamilyKind::DiskSquareIntersection:
    case FamilyKind::HullDiskPoints: return disk_support(1.0);
    case FamilyKind::HullSquarePoints:
    case FamilyKind::Octagon: return square_support(1.0, M);
  }
  return disk_support(1.0);
}

ConvexPolygon ParametricFamily::polygon(double t) const {
  std::vector<Point> pts;
  switch (kind) {
    case FamilyKind::DiskSquareIntersection: {
      if (t < 0.0 || t > M_PI / 4 + 1e-12) throw Error(ErrorKind::InvalidInput, "theta must lie in [0, pi/4]");
      const int per_arc = std::max(1, static_cast<int>(std::ceil(2.0 * t / (2.0 * M_PI / kCirclePoints))));
      for (int side = 0; side < 4; ++side) {
        const double mid = M_PI / 4 + side * M_PI / 2;
        for (int i = 0; i <= per_arc; ++i) pts.push_back(unit_direction(mid - t + 2.0 * t * i / per_arc));
      }
      break;
    }
    case FamilyKind::HullDiskPoints: {
      if (n_points != 2 && n_points != 4) throw Error(ErrorKind::InvalidInput, "hull-disk-points takes 2 or 4 points");
      pts = circle_points(circumradius());
      for (int i = 0; i < n_points; ++i) pts.push_back(t * unit_direction(2.0 * M_PI * i / n_points));
      break;
    }
    case FamilyKind::HullSquarePoints:
      pts = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}, {t, 0}, {-t, 0}};
      break;
    case FamilyKind::Octagon:
      if (t < 0.0 || t > 1.0) throw Error(ErrorKind::InvalidInput, "octagon parameter must lie in [0, 1]");
      for (double sx : {-1.0, 1.0})
        for (double sy : {-1.0, 1.0}) {
          pts.emplace_back(sx, sy * t);
          pts.emplace_back(sx * t, sy);
        }
      break;
  }
  return convex_hull(std::move(pts));
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
  if (count < 2) return {lo};
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = lo + (hi - lo) * i / (count - 1);
  return g;
}

ScanResult scan_family(const ParametricFamily& family, int k, const std::vector<double>& grid, const EvalOptions& opts,
                       double refine_tol) {
  if (grid.empty()) throw Error(ErrorKind::InvalidInput, "empty grid");
  ScanResult r;
  r.family = family;
  r.k = k;
  r.maximize = family.problem() == ProblemKind::Exterior;
  const double sign = r.maximize ? -1.0 : 1.0;
  auto value = [&](double t) { return polygon_spectrum(family.polygon(t), k, opts)[k]; };
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.grid.push_back({grid[i], value(grid[i])});
    if (sign * r.grid[i].mu < sign * r.grid[best].mu) best = i;
  }
  r.best_param = r.grid[best].param;
  r.best_value = r.grid[best].mu;
  if (grid.size() < 3) return r;

  double a = grid[best > 0 ? best - 1 : best];
  double b = grid[best + 1 < grid.size() ? best + 1 : best];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = sign * value(x1), f2 = sign * value(x2);
  while (b - a > refine_tol) {
    if (f1 < f2) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - g * (b - a);
      f1 = sign * value(x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + g * (b - a);
      f2 = sign * value(x2);
    }
  }
  const double xm = f1 < f2 ? x1 : x2;
  const double fm = std::min(f1, f2);
  if (fm < sign * r.best_value) {
    r.best_param = xm;
    r.best_value = sign * fm;
  }
  return r;
}

}  // namespace ssl
