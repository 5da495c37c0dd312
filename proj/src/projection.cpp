#include "ssl/projection.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "ssl/errors.hpp"

namespace ssl {

ProjectionResult project_onto_polyhedron(const Eigen::MatrixXd& A_in, const Eigen::VectorXd& b_in,
                                         const Eigen::VectorXd& y, const Eigen::VectorXd& x0, double tol,
                                         int max_iter) {
  const int m = static_cast<int>(A_in.rows());
  const int d = static_cast<int>(A_in.cols());
  if (max_iter <= 0) max_iter = 4 * (m + d) + 50;

  // Unit-norm rows keep the working-set factorizations well conditioned.
  Eigen::MatrixXd A = A_in;
  Eigen::VectorXd b = b_in;
  for (int i = 0; i < m; ++i) {
    const double n = A.row(i).norm();
    if (n > 0.0) A.row(i) /= n, b[i] /= n;
  }
  const double scale = std::max({1.0, y.cwiseAbs().maxCoeff(), x0.cwiseAbs().maxCoeff()});
  const double slack = tol * scale;

  ProjectionResult res;
  Eigen::VectorXd x = x0;
  if ((A * x - b).maxCoeff() > 1e3 * slack)
    throw Error(ErrorKind::NoFeasibleStart, "projection started from an infeasible point");

  std::vector<int> work;
  std::vector<char> in_work(m, 0);
  auto independent_of_work = [&](int i) {
    if (static_cast<int>(work.size()) >= d) return false;
    Eigen::MatrixXd N(d, work.size() + 1);
    for (std::size_t j = 0; j < work.size(); ++j) N.col(j) = A.row(work[j]).transpose();
    N.col(work.size()) = A.row(i).transpose();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(N);
    qr.setThreshold(1e-9);
    return qr.rank() == static_cast<int>(work.size()) + 1;
  };
  {
    const Eigen::VectorXd r = A * x - b;
    for (int i = 0; i < m; ++i)
      if (r[i] >= -slack && independent_of_work(i)) work.push_back(i), in_work[i] = 1;
  }

  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    const int w = static_cast<int>(work.size());
    const Eigen::VectorXd g = y - x;
    Eigen::VectorXd p = g;
    Eigen::VectorXd lambda;
    if (w > 0) {
      Eigen::MatrixXd N(d, w);
      for (int j = 0; j < w; ++j) N.col(j) = A.row(work[j]).transpose();
      const Eigen::HouseholderQR<Eigen::MatrixXd> qr(N);
      const Eigen::MatrixXd Q1 = qr.householderQ() * Eigen::MatrixXd::Identity(d, w);
      const Eigen::VectorXd qg = Q1.transpose() * g;
      lambda = qr.matrixQR().topLeftCorner(w, w).triangularView<Eigen::Upper>().solve(qg);
      p = w == d ? Eigen::VectorXd::Zero(d) : Eigen::VectorXd(g - Q1 * qg);
    }
    const double pn = p.norm();
    if (pn <= 1e-12 * scale) {
      if (w == 0) break;
      // Bland-type rule: release the lowest-index constraint with a negative multiplier.
      int drop = -1;
      for (int j = 0; j < w; ++j)
        if (lambda[j] < -1e-12 * scale && (drop < 0 || work[j] < work[drop])) drop = j;
      if (drop < 0) break;
      in_work[work[drop]] = 0;
      work.erase(work.begin() + drop);
      continue;
    }
    double alpha = 1.0;
    int block = -1;
    for (int i = 0; i < m; ++i) {
      if (in_work[i]) continue;
      const double ap = A.row(i).dot(p);
      if (ap <= 1e-12 * pn) continue;
      const double step = std::max(0.0, (b[i] - A.row(i).dot(x)) / ap);
      if (step < alpha || (step == alpha && block >= 0 && i < block)) alpha = step, block = i;
    }
    x += alpha * p;
    if (block < 0) continue;
    if (static_cast<int>(work.size()) >= d) {
      res.exact = false;
      break;
    }
    work.push_back(block);
    in_work[block] = 1;
    if (it + 1 == max_iter) res.exact = false;
  }
  // Remove round-off violations by pulling back toward the feasible start.
  const Eigen::VectorXd r = A * x - b;
  if (r.maxCoeff() > slack) {
    const Eigen::VectorXd r0 = A * x0 - b;
    double t = 1.0;
    for (int i = 0; i < m; ++i)
      if (r[i] > 0.0 && r[i] > r0[i]) t = std::min(t, std::max(0.0, -r0[i]) / (r[i] - r0[i]));
    x = x0 + t * (x - x0);
  }
  res.x = x;
  return res;
}

}  // namespace ssl
