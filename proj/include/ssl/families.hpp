#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ssl/eigensolver.hpp"
#include "ssl/polygon.hpp"
#include "ssl/support_geometry.hpp"

namespace ssl {

enum class FamilyKind {
  /// Unit disk cut by the concentric square whose arcs have half-angle t in [0, pi/4].
  DiskSquareIntersection,
  /// Hull of the unit disk and n_points points at distance t from the origin
  /// (on the x axis for 2 points, on both axes for 4).
  HullDiskPoints,
  /// Hull of the square [-1,1]^2 and the points (+-t, 0).
  HullSquarePoints,
  /// Octagon in [-1,1]^2 with vertices (+-1, +-t) and (+-t, +-1).
  Octagon,
};

struct ParametricFamily {
  FamilyKind kind = FamilyKind::DiskSquareIntersection;
  int n_points = 2;

  /// "disk-square-intersection", "hull-disk-points:2", "hull-disk-points:4",
  /// "hull-square-points", "octagon".
  static ParametricFamily parse(const std::string& text);
  std::string name() const;
  /// Natural parameter range.
  std::pair<double, double> domain() const;
  /// Interior families are minimized, exterior (hull) families maximized.
  ProblemKind problem() const;
  /// The box (interior) or obstacle (exterior) shared by the family.
  SupportFunction reference(int M = 512) const;
  ConvexPolygon polygon(double t) const;
};

struct ScanPoint {
  double param = 0.0;
  double mu = 0.0;
};

struct ScanResult {
  ParametricFamily family;
  int k = 1;
  bool maximize = false;
  std::vector<ScanPoint> grid;
  /// Best grid point refined by golden-section search.
  double best_param = 0.0;
  double best_value = 0.0;
};

std::vector<double> uniform_grid(double lo, double hi, int count);

/// mu_k along the grid, then golden-section refinement of the best grid
/// point within its neighboring grid cells.
ScanResult scan_family(const ParametricFamily& family, int k, const std::vector<double>& grid,
                       const EvalOptions& opts = {}, double refine_tol = 1e-3);

}  // namespace ssl
