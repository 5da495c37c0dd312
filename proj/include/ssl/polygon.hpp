#pragma once

#include <Eigen/Core>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

namespace ssl {

using Point = Eigen::Vector2d;

inline Point unit_direction(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

namespace tol {
inline constexpr double geom = 1e-9;
inline constexpr double convex = 1e-9;
inline constexpr double feas = 1e-9;
/// Bodies thinner than this are reported as collapsed.
inline constexpr double epsilon_width = 1e-4;
}  // namespace tol

/// The set { x : x . (cos angle_m, sin angle_m) <= offset_m }.
struct Halfplanes {
  std::vector<double> angles;
  std::vector<double> offsets;

  std::size_t size() const { return angles.size(); }
};

/// Counterclockwise convex polygon with at least three vertices.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  /// Accepts vertices in either orientation; collinear and duplicate vertices are dropped.
  explicit ConvexPolygon(std::vector<Point> vertices, double tol_geom = tol::geom);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }

  double area() const;
  double perimeter() const;
  Point centroid() const;

  double support(double theta) const;
  double width(double theta) const { return support(theta) + support(theta + M_PI); }

  double diameter() const;
  std::pair<Point, Point> diameter_endpoints() const;
  /// Minimal width; attained with one edge flush against a supporting line.
  double min_width() const;
  /// Outer normal angle of the edge realizing the minimal width.
  double min_width_angle() const;
  /// Distance between the two supporting lines parallel to a diameter.
  double perpendicular_width() const;
  double min_edge_length() const;

  bool contains(const Point& p, double tol = 0.0) const;
  /// Signed distance to the boundary, positive inside.
  double inner_distance(const Point& p) const;

  /// Image under x -> L x + t.
  ConvexPolygon transformed(const Eigen::Matrix2d& L, const Point& t) const;
  ConvexPolygon translated(const Point& t) const { return transformed(Eigen::Matrix2d::Identity(), t); }

  /// Intersection with { x : normal . x <= offset }, or nothing when empty or degenerate.
  std::optional<ConvexPolygon> clipped(const Point& normal, double offset) const;

 private:
  std::vector<Point> vertices_;
};

/// Polygon realized by a halfplane set. Throws DegenerateShape when the
/// intersection is empty or has zero area, CollapsedShape when its width is
/// below min_width (pass 0 to accept any nondegenerate polygon).
ConvexPolygon intersect_halfplanes(const Halfplanes& planes, double min_width = 0.0,
                                   double tol_geom = tol::geom);

/// Convex hull of a point cloud (Andrew's monotone chain).
ConvexPolygon convex_hull(std::vector<Point> points, double tol_geom = tol::geom);

/// Hausdorff distance of two convex polygons, computed as the sup-distance of
/// their support functions over a dense angular grid.
double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b, int samples = 4096);

}  // namespace ssl
