#pragma once

#include <array>
#include <vector>

#include "ssl/polygon.hpp"

namespace ssl {

struct MeshOptions {
  /// Target edge length; <= 0 selects diameter / 60.
  double h_target = 0.0;
  /// Mesh bodies thinner than the collapse threshold instead of throwing.
  bool allow_thin = false;
  /// Boundary vertices closer than this are merged; <= 0 selects 0.01 * h_target.
  double h_min_quality = 0.0;
};

struct TriangleMesh {
  std::vector<Point> nodes;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<std::array<int, 2>> boundary_edges;
  double h_target = 0.0;
  double h_min_quality = 0.0;

  double area() const;
  double triangle_area(std::size_t t) const;
  double min_altitude() const;
  double max_edge() const;
};

TriangleMesh triangulate(const ConvexPolygon& poly, const MeshOptions& opts = {});
inline TriangleMesh triangulate(const ConvexPolygon& poly, double h_target, bool allow_thin = false) {
  return triangulate(poly, MeshOptions{h_target, allow_thin, 0.0});
}

/// Splits every triangle into four through its edge midpoints.
TriangleMesh refine(const TriangleMesh& mesh);

/// Every interior edge is shared by exactly two oppositely oriented triangles
/// and the remaining edges are exactly the listed boundary edges.
bool is_conforming(const TriangleMesh& mesh);

}  // namespace ssl
