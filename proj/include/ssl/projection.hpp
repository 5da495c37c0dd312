#pragma once

#include <Eigen/Core>

namespace ssl {

struct ProjectionResult {
  Eigen::VectorXd x;
  int iterations = 0;
  /// False when the iteration cap stopped the active-set loop early; x is
  /// then feasible but not the exact projection.
  bool exact = true;
};

/// Euclidean projection of y onto { x : A x <= b } by a primal active-set
/// method started from the feasible point x0.
ProjectionResult project_onto_polyhedron(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& y,
                                         const Eigen::VectorXd& x0, double tol = 1e-10, int max_iter = 0);

}  // namespace ssl
