#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "ssl/eigensolver.hpp"
#include "ssl/mesher.hpp"
#include "ssl/support_geometry.hpp"

namespace ssl {

/// Evaluates F -> spectrum(shape(F)) for nearby parameter vectors on one
/// shared mesh. Every vertex of the base polygon is the meeting point of two
/// support lines; for a new F those two lines are intersected again and the
/// base mesh is carried along by the piecewise-affine map of the fan
/// (centroid, V_k, V_k+1). Node positions are then linear in F, which keeps
/// finite differences free of remeshing noise.
class ShapeEvaluator {
 public:
  /// Computes eigenvalues up to index kmax; h_rel is the mesh size relative
  /// to the base diameter.
  ShapeEvaluator(Strategy strategy, int kmax, double h_rel, int polygon_samples = 0);

  /// Meshes shape(F) and makes it the base. Throws geometry errors.
  const Spectrum& rebase(const Eigen::VectorXd& F);
  /// Spectrum of shape(F) on the transported base mesh. When the support
  /// lines of shape(F) no longer form the base combinatorial type and
  /// `exact` is set, or when the transport folds, a fresh mesh is used.
  Spectrum evaluate(const Eigen::VectorXd& F, bool exact = false);

  bool has_base() const { return base_mesh_.has_value(); }
  const Eigen::VectorXd& base() const { return base_F_; }
  const Spectrum& base_spectrum() const { return base_spectrum_; }
  const TriangleMesh& base_mesh() const { return *base_mesh_; }
  /// Evaluations that needed a fresh mesh.
  int fallbacks() const { return fallbacks_; }
  int evaluations() const { return evaluations_; }

 private:
  struct Transported {
    std::vector<Point> vertices;
    bool same_type = true;
  };
  Halfplanes halfplanes(const Eigen::VectorXd& F) const;
  std::optional<Transported> track(const Halfplanes& planes) const;
  Spectrum fresh(const Halfplanes& planes);

  Strategy strategy_;
  int kmax_;
  double h_rel_;
  int polygon_samples_;
  NeumannSolver solver_;

  Eigen::VectorXd base_F_;
  std::optional<TriangleMesh> base_mesh_;
  Spectrum base_spectrum_;
  double scale_ = 1.0;
  Point center_ = Point::Zero();
  std::vector<int> edge_planes_;     // support line of each polygon edge, ccw
  std::vector<int> inactive_planes_; // lines not touching the base polygon
  std::vector<double> fan_area_;     // base area of each fan triangle
  struct NodeWeight {
    int fan;
    double b1, b2;  // weights of V_fan and V_fan+1
  };
  std::vector<NodeWeight> weights_;
  int fallbacks_ = 0;
  int evaluations_ = 0;
};

}  // namespace ssl
