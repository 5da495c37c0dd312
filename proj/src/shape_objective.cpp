#include "ssl/shape_objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssl/errors.hpp"

namespace ssl {

namespace {

Point line_meet(const Halfplanes& h, int a, int b) {
  const double ta = h.angles[a], tb = h.angles[b];
  const double det = std::sin(tb - ta);
  // Solve u_a . x = o_a, u_b . x = o_b.
  const double oa = h.offsets[a], ob = h.offsets[b];
  return {(oa * std::sin(tb) - ob * std::sin(ta)) / det, (ob * std::cos(ta) - oa * std::cos(tb)) / det};
}

double angle_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * M_PI);
  return std::min(d, 2.0 * M_PI - d);
}

}  // namespace

ShapeEvaluator::ShapeEvaluator(Strategy strategy, int kmax, double h_rel, int polygon_samples)
    : strategy_(std::move(strategy)), kmax_(kmax), h_rel_(h_rel), polygon_samples_(polygon_samples) {
  if (kmax < 1) throw Error(ErrorKind::InvalidInput, "kmax must be >= 1");
}

Halfplanes ShapeEvaluator::halfplanes(const Eigen::VectorXd& F) const {
  return realize_halfplanes(strategy_.shape(F), polygon_samples_);
}

const Spectrum& ShapeEvaluator::rebase(const Eigen::VectorXd& F) {
  const Halfplanes planes = halfplanes(F);
  const ConvexPolygon poly = intersect_halfplanes(planes, tol::epsilon_width);
  const double h = h_rel_ * poly.diameter();

  // Support line of every edge.
  const auto& W = poly.vertices();
  const std::size_t n = W.size();
  std::vector<int> lines;
  for (std::size_t i = 0; i < n; ++i) {
    const Point e = W[(i + 1) % n] - W[i];
    const double normal = std::atan2(e.y(), e.x()) - M_PI / 2;
    int best = 0;
    for (std::size_t m = 1; m < planes.size(); ++m)
      if (angle_gap(planes.angles[m], normal) < angle_gap(planes.angles[best], normal)) best = static_cast<int>(m);
    lines.push_back(best);
  }
  // Drop edges too short to survive a finite-difference step; their
  // neighbors are extended to meet.
  const double min_edge = 0.05 * h;
  for (bool changed = true; changed && lines.size() > 3;) {
    changed = false;
    const std::size_t L = lines.size();
    for (std::size_t i = 0; i < L && lines.size() > 3; ++i) {
      const int prev = lines[(i + L - 1) % L], cur = lines[i], next = lines[(i + 1) % L];
      const double turn = std::fmod(planes.angles[next] - planes.angles[prev] + 4.0 * M_PI, 2.0 * M_PI);
      if (turn >= M_PI - 1e-6) continue;
      const double len = (line_meet(planes, cur, next) - line_meet(planes, prev, cur)).norm();
      if (len < min_edge) {
        lines.erase(lines.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  std::vector<Point> V;
  for (std::size_t i = 0; i < lines.size(); ++i) V.push_back(line_meet(planes, lines[i], lines[(i + 1) % lines.size()]));
  const ConvexPolygon tracked(V, 0.0);
  if (tracked.size() != V.size()) throw Error(ErrorKind::DegenerateShape, "support lines do not form a convex polygon");
  if (tracked.min_width() < tol::epsilon_width) throw Error(ErrorKind::CollapsedShape, "body is thinner than epsilon_width");

  TriangleMesh mesh = triangulate(tracked, MeshOptions{h, false, 1e-3 * h});
  Spectrum s = solver_.solve(mesh, kmax_);
  ++evaluations_;

  center_ = tracked.centroid();
  scale_ = tracked.diameter();
  fan_area_.resize(V.size());
  for (std::size_t k = 0; k < V.size(); ++k) fan_area_[k] = cross(V[k] - center_, V[(k + 1) % V.size()] - center_);
  weights_.resize(mesh.nodes.size());
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    const Point x = mesh.nodes[i] - center_;
    NodeWeight best{0, 0.0, 0.0};
    double best_min = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < V.size(); ++k) {
      const Point a = V[k] - center_, b = V[(k + 1) % V.size()] - center_;
      const double b1 = cross(x, b) / fan_area_[k];
      const double b2 = cross(a, x) / fan_area_[k];
      const double lo = std::min({b1, b2, 1.0 - b1 - b2});
      if (lo > best_min) best_min = lo, best = {static_cast<int>(k), b1, b2};
    }
    weights_[i] = best;
  }
  edge_planes_ = lines;
  inactive_planes_.clear();
  for (std::size_t m = 0; m < planes.size(); ++m) {
    bool on_edge = false;
    for (int l : lines) on_edge |= l == static_cast<int>(m);
    if (on_edge) continue;
    // Lines dropped as short edges still cut the tracked polygon slightly.
    double excess = -std::numeric_limits<double>::infinity();
    const Point u = unit_direction(planes.angles[m]);
    for (const auto& v : V) excess = std::max(excess, v.dot(u) - planes.offsets[m]);
    if (excess <= 0.0) inactive_planes_.push_back(static_cast<int>(m));
  }
  base_F_ = F;
  base_mesh_ = std::move(mesh);
  base_spectrum_ = std::move(s);
  return base_spectrum_;
}

std::optional<ShapeEvaluator::Transported> ShapeEvaluator::track(const Halfplanes& planes) const {
  Transported t;
  const std::size_t L = edge_planes_.size();
  for (std::size_t i = 0; i < L; ++i) t.vertices.push_back(line_meet(planes, edge_planes_[i], edge_planes_[(i + 1) % L]));
  for (std::size_t k = 0; k < L; ++k)
    if (!(cross(t.vertices[k] - center_, t.vertices[(k + 1) % L] - center_) > 0.02 * fan_area_[k])) return std::nullopt;
  for (std::size_t i = 0; i < L; ++i) {
    const Point e0 = t.vertices[i] - t.vertices[(i + L - 1) % L];
    const Point e1 = t.vertices[(i + 1) % L] - t.vertices[i];
    if (cross(e0, e1) <= 0.0) t.same_type = false;
  }
  const double tol = 1e-12 * scale_;
  for (int m : inactive_planes_) {
    const Point u = unit_direction(planes.angles[m]);
    for (const auto& v : t.vertices)
      if (v.dot(u) > planes.offsets[m] + tol) {
        t.same_type = false;
        break;
      }
    if (!t.same_type) break;
  }
  return t;
}

Spectrum ShapeEvaluator::fresh(const Halfplanes& planes) {
  ++fallbacks_;
  const ConvexPolygon poly = intersect_halfplanes(planes, tol::epsilon_width);
  NeumannSolver solver;
  return solver.solve(triangulate(poly, MeshOptions{h_rel_ * poly.diameter(), false, 0.0}), kmax_);
}

Spectrum ShapeEvaluator::evaluate(const Eigen::VectorXd& F, bool exact) {
  if (!base_mesh_) throw Error(ErrorKind::InvalidInput, "evaluate called before rebase");
  const Halfplanes planes = halfplanes(F);
  ++evaluations_;
  const auto t = track(planes);
  if (!t || (exact && !t->same_type)) return fresh(planes);
  const ConvexPolygon shape(t->vertices, 0.0);
  if (shape.min_width() < tol::epsilon_width) throw Error(ErrorKind::CollapsedShape, "body is thinner than epsilon_width");

  TriangleMesh mesh = *base_mesh_;
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    const NodeWeight& w = weights_[i];
    const Point& a = t->vertices[w.fan];
    const Point& b = t->vertices[(w.fan + 1) % t->vertices.size()];
    mesh.nodes[i] = center_ + w.b1 * (a - center_) + w.b2 * (b - center_);
  }
  for (std::size_t k = 0; k < mesh.triangles.size(); ++k)
    if (!(mesh.triangle_area(k) > 0.0)) return fresh(planes);
  return solver_.solve(mesh, kmax_);
}

}  // namespace ssl
