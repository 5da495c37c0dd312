#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <array>
#include <iosfwd>
#include <memory>
#include <vector>

#include "ssl/mesher.hpp"
#include "ssl/support_geometry.hpp"

namespace ssl {

/// Ordered Neumann eigenvalues mu_0 <= mu_1 <= ... of one discretized body.
struct Spectrum {
  std::vector<double> values;
  double mesh_h = 0.0;
  int n_dof = 0;
  /// multiple[k]: mu_k lies within the multiplicity gap of a neighbor.
  std::vector<bool> multiple;

  double operator[](std::size_t k) const { return values.at(k); }
  std::size_t size() const { return values.size(); }
  bool is_multiple(std::size_t k) const { return k < multiple.size() && multiple[k]; }
};

/// Relative gap below which two eigenvalues count as numerically equal.
inline constexpr double kMultiplicityGap = 1e-3;

/// Marks neighbors closer than kMultiplicityGap (relative).
void flag_multiplicities(Spectrum& s, double gap = kMultiplicityGap);

/// P1 stiffness and consistent mass matrices.
void assemble_neumann(const TriangleMesh& mesh, Eigen::SparseMatrix<double>& K, Eigen::SparseMatrix<double>& M);

/// Lowest kmax+1 eigenpairs of K u = mu M u through shift-invert block
/// Krylov iterations. Keeps the symbolic factorization between calls on
/// meshes with identical connectivity.
class NeumannSolver {
 public:
  NeumannSolver();
  ~NeumannSolver();
  NeumannSolver(NeumannSolver&&) noexcept;
  NeumannSolver& operator=(NeumannSolver&&) noexcept;

  Spectrum solve(const TriangleMesh& mesh, int kmax);

  /// Restart cap of the Krylov iteration.
  int max_restarts = 60;
  /// Start the Krylov block from the previous Ritz vectors when the size matches.
  bool warm_start = true;
  /// Restarts used by the last sparse solve.
  int last_restarts = 0;

 private:
  struct Cache;
  std::unique_ptr<Cache> cache_;
};

Spectrum neumann_spectrum(const TriangleMesh& mesh, int kmax);

struct EvalOptions {
  /// Halfplane count for realizing the body (0: native samples, 256 for Fourier).
  int polygon_samples = 0;
  /// Mesh size relative to the diameter.
  double h_rel = 1.0 / 60.0;
  /// Absolute mesh size; overrides h_rel when > 0.
  double h_abs = 0.0;
  int refine = 0;
  bool allow_thin = false;
};

TriangleMesh mesh_shape(const SupportFunction& f, const EvalOptions& opts = {});
Spectrum shape_spectrum(const SupportFunction& f, int kmax, const EvalOptions& opts = {});
double mu_k(const SupportFunction& f, int k, const EvalOptions& opts = {});
Spectrum polygon_spectrum(const ConvexPolygon& poly, int kmax, const EvalOptions& opts = {});

void write_spectrum_csv(std::ostream& os, const Spectrum& s);

}  // namespace ssl
