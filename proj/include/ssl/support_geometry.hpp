#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "ssl/polygon.hpp"

namespace ssl {

enum class Representation { Fourier, PiecewiseAffine };

/// A planar convex body described by its support function
///   f(theta) = sup_{x in body} x . (cos theta, sin theta).
///
/// Fourier: coefficients (a0, a1..aN, b1..bN) of the truncated series
///   a0 + sum_k a_k cos(k theta) + b_k sin(k theta).
/// PiecewiseAffine: samples f_j = f(j tau), tau = 2 pi / M, j = 0..M-1,
///   linearly interpolated (periodically) in between.
class SupportFunction {
 public:
  SupportFunction() = default;

  static SupportFunction fourier(Eigen::VectorXd coeffs);
  static SupportFunction piecewise_affine(Eigen::VectorXd samples);

  Representation repr() const { return repr_; }
  bool is_fourier() const { return repr_ == Representation::Fourier; }
  /// Fourier order N (0 for piecewise-affine).
  int order() const { return is_fourier() ? static_cast<int>((data_.size() - 1) / 2) : 0; }
  /// Sample count M (0 for Fourier).
  int sample_count() const { return is_fourier() ? 0 : static_cast<int>(data_.size()); }
  /// The raw parameter vector: coefficients or samples.
  const Eigen::VectorXd& params() const { return data_; }

  double operator()(double theta) const;
  /// Angle of sample j of a piecewise-affine body.
  double sample_angle(int j) const;

  /// Support of the body translated by t.
  SupportFunction translated(const Point& t) const;
  /// Support of the body dilated about the origin by s > 0.
  SupportFunction scaled(double s) const;
  /// Piecewise-affine resampling at M equispaced angles.
  SupportFunction resampled(int M) const;
  /// Least-squares Fourier fit of order N against `fit_samples` equispaced values.
  SupportFunction fitted_fourier(int N, int fit_samples = 0) const;

 private:
  SupportFunction(Representation repr, Eigen::VectorXd data) : repr_(repr), data_(std::move(data)) {}

  Representation repr_ = Representation::Fourier;
  Eigen::VectorXd data_ = Eigen::VectorXd::Zero(1);
};

inline double eval_support(const SupportFunction& f, double theta) { return f(theta); }

/// Discretized f + f''. For Fourier bodies any theta is accepted; for
/// piecewise-affine bodies theta must be one of the sample angles.
double convexity_residual(const SupportFunction& f, double theta);
/// Smallest residual over the M equispaced angles (native samples when M = 0).
double min_convexity_residual(const SupportFunction& f, int M = 0);

// Constructors for the builtin shapes. Piecewise-affine ones use M samples.
SupportFunction disk_support(double radius = 1.0, const Point& center = Point::Zero());
SupportFunction polygon_support(std::span<const Point> vertices, int M);
SupportFunction square_support(double half_side = 1.0, int M = 512);
SupportFunction rectangle_support(const Point& lo, const Point& hi, int M = 512);
/// Reuleaux triangle of the given width, centered at its incenter.
SupportFunction reuleaux_support(double width = 1.0, int M = 720);
/// Convex hull of the body and the points: pointwise maximum of supports,
/// resampled into the body's representation (piecewise-affine with M samples
/// when the body is Fourier and M > 0).
SupportFunction hull_with_points(const SupportFunction& f, std::span<const Point> points, int M = 0);

// ---------------------------------------------------------------------------
// Linear constraint systems A F <= B for the discretized problems.

enum class ProblemKind { Interior, Exterior };

const char* to_string(ProblemKind kind);

/// Parametrization of the unknown shape.
struct Strategy {
  Representation repr = Representation::PiecewiseAffine;
  /// Fourier order N, or number of samples M.
  int size = 50;
  /// Angles where constraints are imposed (Fourier only; 0 picks a default).
  int constraint_samples = 0;

  static Strategy fourier(int order, int constraint_samples = 0);
  static Strategy piecewise_affine(int samples);
  /// "fourier:N" or "pwa:M".
  static Strategy parse(const std::string& text);

  int dimension() const { return repr == Representation::Fourier ? 2 * size + 1 : size; }
  int sample_count() const;
  std::string to_string() const;
  SupportFunction shape(const Eigen::VectorXd& F) const;
  /// Parameter vector representing `f` in this strategy (resampled or fitted).
  Eigen::VectorXd encode(const SupportFunction& f) const;
};

struct ConstraintSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
  ProblemKind kind = ProblemKind::Interior;
  Strategy strategy;

  /// max_i (A F - B)_i; feasible means <= tol.
  double max_violation(const Eigen::VectorXd& F) const;
  bool feasible(const Eigen::VectorXd& F, double tol = tol::feas) const { return max_violation(F) <= tol; }
};

/// Convexity rows (B = 0) stacked over inclusion rows against `reference`
/// (the box for interior problems, the obstacle for exterior ones).
/// With vertex_rows, interior piecewise-affine systems get M more rows that
/// keep each polygon vertex (the meeting point of neighboring sample
/// halfplanes) inside the box along the bisecting normal.
ConstraintSystem assemble_constraints(ProblemKind kind, const Strategy& strategy, const SupportFunction& reference,
                                      bool vertex_rows = false);

// ---------------------------------------------------------------------------
// Realization and geometric functionals.

/// Halfplanes at the native samples (piecewise-affine) or at M_out
/// equispaced angles (Fourier, or whenever M_out > 0).
Halfplanes realize_halfplanes(const SupportFunction& f, int M_out = 0);

struct ReconstructOptions {
  int samples = 0;  // M_out; 0 = native samples, 256 for Fourier bodies
  bool allow_thin = false;
  double epsilon_width = tol::epsilon_width;
};

/// Boundary of the intersection of the sampled support halfplanes.
ConvexPolygon reconstruct_polygon(const SupportFunction& f, const ReconstructOptions& opts = {});
inline ConvexPolygon reconstruct_polygon(const SupportFunction& f, int M_out) {
  return reconstruct_polygon(f, ReconstructOptions{M_out, false, tol::epsilon_width});
}

double width(const SupportFunction& f, double theta);
/// Angle of the direction in which the width is maximal.
double diameter_direction(const SupportFunction& f);
double diameter(const SupportFunction& f);
double min_width(const SupportFunction& f);
/// Width orthogonal to the diameter direction.
double perpendicular_width(const SupportFunction& f);
double area(const SupportFunction& f, int M_out = 512);
/// f_inner <= f_outer + tol at M equispaced angles (native samples when M = 0).
bool contains(const SupportFunction& outer, const SupportFunction& inner, int M = 0, double tol = tol::feas);
/// sup_theta |f - g| over a dense grid.
double hausdorff_distance(const SupportFunction& f, const SupportFunction& g, int samples = 2048);

}  // namespace ssl
