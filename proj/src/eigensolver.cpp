#include "ssl/eigensolver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "ssl/errors.hpp"

namespace ssl {

using SpMat = Eigen::SparseMatrix<double>;

void flag_multiplicities(Spectrum& s, double gap) {
  const std::size_t n = s.values.size();
  s.multiple.assign(n, false);
  for (std::size_t k = 2; k < n; ++k) {
    const double a = s.values[k - 1], b = s.values[k];
    if (b - a <= gap * std::max(std::abs(a), std::abs(b))) s.multiple[k - 1] = s.multiple[k] = true;
  }
}

void assemble_neumann(const TriangleMesh& mesh, SpMat& K, SpMat& M) {
  const int n = static_cast<int>(mesh.nodes.size());
  std::vector<Eigen::Triplet<double>> tk, tm;
  tk.reserve(9 * mesh.triangles.size());
  tm.reserve(9 * mesh.triangles.size());
  double total = 0.0;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) total += std::abs(mesh.triangle_area(t));
  const double tiny = 1e-14 * total;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Point& p0 = mesh.nodes[tri[0]];
    const Point& p1 = mesh.nodes[tri[1]];
    const Point& p2 = mesh.nodes[tri[2]];
    const double A = 0.5 * cross(p1 - p0, p2 - p0);
    if (!(A > tiny)) throw Error(ErrorKind::DegenerateMass, "triangle " + std::to_string(t) + " has nonpositive area");
    const double b[3] = {p1.y() - p2.y(), p2.y() - p0.y(), p0.y() - p1.y()};
    const double c[3] = {p2.x() - p1.x(), p0.x() - p2.x(), p1.x() - p0.x()};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        tk.emplace_back(tri[i], tri[j], (b[i] * b[j] + c[i] * c[j]) / (4.0 * A));
        tm.emplace_back(tri[i], tri[j], A / 12.0 * (i == j ? 2.0 : 1.0));
      }
  }
  K.resize(n, n);
  M.resize(n, n);
  K.setFromTriplets(tk.begin(), tk.end());
  M.setFromTriplets(tm.begin(), tm.end());
}

struct NeumannSolver::Cache {
  std::vector<std::array<int, 3>> triangles;
  Eigen::SimplicialLDLT<SpMat> ldlt;
  bool analyzed = false;
  // Ritz vectors of the previous solve, reused as the next start block.
  Eigen::MatrixXd ritz;
};

NeumannSolver::NeumannSolver() : cache_(std::make_unique<Cache>()) {}
NeumannSolver::~NeumannSolver() = default;
NeumannSolver::NeumannSolver(NeumannSolver&&) noexcept = default;
NeumannSolver& NeumannSolver::operator=(NeumannSolver&&) noexcept = default;

namespace {

Spectrum dense_solve(const SpMat& K, const SpMat& M, int nev) {
  const Eigen::MatrixXd Kd(K), Md(M);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Kd, Md, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::SolverDivergence, "dense generalized eigensolver failed");
  Spectrum s;
  for (int i = 0; i < std::min<int>(nev, static_cast<int>(es.eigenvalues().size())); ++i) s.values.push_back(es.eigenvalues()[i]);
  return s;
}

// M-orthonormalizes the columns of W against V (first `used` columns) and
// among themselves with two passes of classical Gram-Schmidt. Returns the
// number of columns kept, compacted to the front of W.
int m_orthonormalize(const Eigen::MatrixXd& V, int used, Eigen::MatrixXd& W, const SpMat& M) {
  int kept = 0;
  for (int c = 0; c < W.cols(); ++c) {
    Eigen::VectorXd w = W.col(c);
    const double norm0 = std::sqrt(std::max(0.0, w.dot(M * w)));
    if (norm0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd Mw = M * w;
      if (used > 0) w -= V.leftCols(used) * (V.leftCols(used).transpose() * Mw);
      if (kept > 0) w -= W.leftCols(kept) * (W.leftCols(kept).transpose() * Mw);
    }
    const double norm = std::sqrt(std::max(0.0, w.dot(M * w)));
    if (norm <= 1e-10 * norm0) continue;
    W.col(kept++) = w / norm;
  }
  return kept;
}

}  // namespace

Spectrum NeumannSolver::solve(const TriangleMesh& mesh, int kmax) {
  if (kmax < 1) throw Error(ErrorKind::InvalidInput, "kmax must be >= 1");
  SpMat K, M;
  assemble_neumann(mesh, K, M);
  const int n = static_cast<int>(K.rows());
  const int nev = kmax + 1;
  Spectrum out;
  if (n <= 200 || n <= 3 * nev + 10) {
    out = dense_solve(K, M, nev);
  } else {
    double diam2 = 0.0;
    {
      Point lo = mesh.nodes[0], hi = mesh.nodes[0];
      for (const auto& p : mesh.nodes) lo = lo.cwiseMin(p), hi = hi.cwiseMax(p);
      diam2 = (hi - lo).squaredNorm();
    }
    const double sigma = -1e-6 / diam2;
    const SpMat S = K - sigma * M;
    if (!cache_->analyzed || cache_->triangles != mesh.triangles) {
      cache_->ldlt.analyzePattern(S);
      cache_->triangles = mesh.triangles;
      cache_->analyzed = true;
    }
    cache_->ldlt.factorize(S);
    if (cache_->ldlt.info() != Eigen::Success) throw Error(ErrorKind::SolverDivergence, "factorization of K - sigma M failed");

    // Round-off floor of the residual: eps times a bound on lambda_max(K, M).
    double kmax_row = 0.0, mmin_diag = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      double row = 0.0;
      for (SpMat::InnerIterator it(K, j); it; ++it) row += std::abs(it.value());
      kmax_row = std::max(kmax_row, row);
      mmin_diag = std::min(mmin_diag, M.coeff(j, j));
    }
    const double floor_rel = 1e3 * std::numeric_limits<double>::epsilon() * kmax_row / mmin_diag;

    const int guard = nev + 4;
    const int m = std::min(n, guard + std::max(24, 2 * guard));
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd X;
    if (warm_start && cache_->ritz.rows() == n) {
      X = cache_->ritz;
    } else {
      X.resize(n, 4);
      for (int j = 0; j < X.cols(); ++j)
        for (int i = 0; i < n; ++i) X(i, j) = gauss(rng);
      X.col(0).setOnes();
    }

    Eigen::MatrixXd V(n, m);
    bool converged = false;
    last_restarts = 0;
    for (int restart = 0; restart < max_restarts && !converged; ++restart) {
      last_restarts = restart + 1;
      int used = 0;
      Eigen::MatrixXd W = X;
      int fresh = m_orthonormalize(V, used, W, M);
      while (fresh > 0 && used < m) {
        const int take = std::min(fresh, m - used);
        V.middleCols(used, take) = W.leftCols(take);
        const int start = used;
        used += take;
        if (used >= m) break;
        W.resize(n, take);
        for (int j = 0; j < take; ++j) W.col(j) = cache_->ldlt.solve(M * V.col(start + j));
        fresh = m_orthonormalize(V, used, W, M);
      }
      const Eigen::MatrixXd KV = K * V.leftCols(used);
      Eigen::MatrixXd H = V.leftCols(used).transpose() * KV;
      H = 0.5 * (H + H.transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
      const int keep = std::min(guard, used);
      const Eigen::MatrixXd Y = V.leftCols(used) * es.eigenvectors().leftCols(keep);
      const Eigen::MatrixXd KY = KV * es.eigenvectors().leftCols(keep);
      converged = keep >= nev;
      for (int i = 0; i < nev && converged; ++i) {
        const double mu = es.eigenvalues()[i];
        const Eigen::VectorXd My = M * Y.col(i);
        const double res = (KY.col(i) - mu * My).norm();
        if (res > std::max(1e-8 * std::max(1.0, std::abs(mu)), floor_rel) * My.norm()) converged = false;
      }
      if (converged) {
        for (int i = 0; i < nev; ++i) out.values.push_back(es.eigenvalues()[i]);
        cache_->ritz = Y;
      } else {
        X = Y;
      }
    }
    if (!converged) throw Error(ErrorKind::SolverDivergence, "shift-invert iteration did not converge");
  }
  std::sort(out.values.begin(), out.values.end());
  const double mu1 = out.values.size() > 1 ? out.values[1] : 1.0;
  if (std::abs(out.values[0]) <= 1e-8 * std::max(1.0, mu1)) out.values[0] = 0.0;
  out.mesh_h = mesh.h_target;
  out.n_dof = n;
  flag_multiplicities(out);
  return out;
}

Spectrum neumann_spectrum(const TriangleMesh& mesh, int kmax) {
  NeumannSolver solver;
  return solver.solve(mesh, kmax);
}

TriangleMesh mesh_shape(const SupportFunction& f, const EvalOptions& opts) {
  const ConvexPolygon poly =
      reconstruct_polygon(f, ReconstructOptions{opts.polygon_samples, opts.allow_thin, tol::epsilon_width});
  const double h = opts.h_abs > 0.0 ? opts.h_abs : opts.h_rel * poly.diameter();
  TriangleMesh mesh = triangulate(poly, MeshOptions{h, opts.allow_thin, 0.0});
  for (int r = 0; r < opts.refine; ++r) mesh = refine(mesh);
  return mesh;
}

Spectrum shape_spectrum(const SupportFunction& f, int kmax, const EvalOptions& opts) {
  return neumann_spectrum(mesh_shape(f, opts), kmax);
}

Spectrum polygon_spectrum(const ConvexPolygon& poly, int kmax, const EvalOptions& opts) {
  const double h = opts.h_abs > 0.0 ? opts.h_abs : opts.h_rel * poly.diameter();
  TriangleMesh mesh = triangulate(poly, MeshOptions{h, opts.allow_thin, 0.0});
  for (int r = 0; r < opts.refine; ++r) mesh = refine(mesh);
  return neumann_spectrum(mesh, kmax);
}

double mu_k(const SupportFunction& f, int k, const EvalOptions& opts) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  return shape_spectrum(f, k, opts)[k];
}

void write_spectrum_csv(std::ostream& os, const Spectrum& s) {
  os << "k,mu\n";
  os.precision(12);
  for (std::size_t k = 0; k < s.values.size(); ++k) os << k << ',' << s.values[k] << '\n';
}

}  // namespace ssl
