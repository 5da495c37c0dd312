#pragma once

#include <string>
#include <vector>

#include "ssl/eigensolver.hpp"
#include "ssl/polygon.hpp"
#include "ssl/support_geometry.hpp"

namespace ssl {

/// Relative slack for comparing FEM eigenvalues against bounds.
inline constexpr double kTolFem = 0.01;
/// Default constant in the quantitative Payne-Weinberger inequality.
inline constexpr double kDefaultBucurAmato = 6.0;

double j01();

/// pi^2 / diam^2 (strict lower bound for mu_1 of a convex body).
double payne_weinberger(double diam);
double payne_weinberger(const SupportFunction& f);

/// (2 j01 + (k-1) pi)^2 / diam^2 (upper bound for mu_k of a convex body).
double diameter_upper(double diam, int k);
double diameter_upper(const SupportFunction& f, int k);

/// pi^2 / max_j diam^2(poly ∩ Q_j) for an N x N grid (N = floor(sqrt k))
/// over a square containing the polygon; the best of several grid
/// orientations is returned.
double buser_grid_lower(const ConvexPolygon& poly, int k);
double buser_grid_lower(const SupportFunction& f, int k);

/// Diameter-normalized lower constant: diam^2 mu_k >= c_k(k, C). Throws Unsupported for k < 2.
double c_k(int k, double C = kDefaultBucurAmato);

struct MkBounds {
  double lower = 0.0;
  double upper = 0.0;
  /// C_k pi^2 / (2 j01 + (k-1) pi)^2 before clamping.
  double raw_lower = 0.0;
  /// raw_lower exceeded upper and was clamped.
  bool clamped = false;
  double C = kDefaultBucurAmato;
};

/// Bounds for the infimum over convex bodies of J_k.
MkBounds m_k_bounds(int k, double C = kDefaultBucurAmato);

enum class Existence { Satisfied, NotSatisfied };

struct ExistenceReport {
  Existence status = Existence::NotSatisfied;
  double mu_k = 0.0;
  /// k^2 pi^2 / diam^2(D).
  double threshold = 0.0;
};

/// Sufficient test for existence of an interior minimizer in D: some
/// candidate inside D with mu_k <= k^2 pi^2 / diam^2(D). Throws NotContained.
ExistenceReport existence_criterion(const SupportFunction& D, const SupportFunction& candidate, int k,
                                    const EvalOptions& opts = {}, double tol_fem = kTolFem);

/// 8 diam(D) / (pi w), w the minimal width of D.
double k0_bound(const SupportFunction& D);
double k0_bound(const ConvexPolygon& D);

/// 1 / (16 (L^2 + 1) max((a+b)^2, c^2)).
double cusp_poincare_lower(double a, double b, double c, double L);

struct CuspConfiguration {
  double a = 0.0, b = 0.0, c = 0.0, L = 0.0;
  Point tangent_minus, tangent_plus;
};

/// Builds the cap between D and the two tangent lines from Q, measured in
/// the frame with origin P and y axis along Q - P. Q must lie outside D.
CuspConfiguration cusp_configuration(const ConvexPolygon& D, const Point& P, const Point& Q);

struct InequalityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

/// Checks lhs <= rhs (1 + tol) for: Payne-Weinberger, Cheng/Kroger for
/// k = 1..kmax, Szego-Weinberger, the width inequality
/// mu_1 <= pi^2 w^2 / |Omega|^2, and the Buser grid bound for k = 1..kmax.
std::vector<InequalityCheck> inequality_suite(const ConvexPolygon& poly, const Spectrum& spectrum,
                                              double tol = kTolFem);

struct BoundsReport {
  std::string shape_id;
  int k = 1;
  double diameter = 0.0;
  double min_width = 0.0;
  double area = 0.0;
  double pw_lower = 0.0;
  double diam_upper = 0.0;
  double buser_lower = 0.0;
  /// c_k / diam^2 for k >= 2, the Payne-Weinberger value for k = 1.
  double c_k_lower = 0.0;
  double C = kDefaultBucurAmato;
  double k0 = 0.0;
  bool has_mu = false;
  double mu_fem = 0.0;
  std::vector<InequalityCheck> inequality_checks;
};

BoundsReport bounds_report(const SupportFunction& f, int k, const std::string& shape_id = "shape",
                           const EvalOptions& opts = {}, double C = kDefaultBucurAmato, bool with_fem = true);

}  // namespace ssl
