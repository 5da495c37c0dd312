// Acceptance criteria 1-12. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails. Pass criterion numbers to run a subset.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "ssl/bounds.hpp"
#include "ssl/eigensolver.hpp"
#include "ssl/families.hpp"
#include "ssl/optimizer.hpp"
#include "ssl/scheme.hpp"
#include "ssl/self_domain.hpp"

using namespace ssl;

namespace {

constexpr double kTol = kTolFem;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

ConvexPolygon square_polygon(double lo, double hi) { return ConvexPolygon({{lo, lo}, {hi, lo}, {hi, hi}, {lo, hi}}); }

ConvexPolygon disk_polygon(int n = 256) {
  // Circumscribed n-gon so the inscribed disk is the unit disk.
  std::vector<Point> v;
  const double R = 1.0 / std::cos(oracle::kPi / n);
  for (int i = 0; i < n; ++i) v.push_back(R * unit_direction(2 * oracle::kPi * (i + 0.5) / n));
  return ConvexPolygon(v);
}

// Largest relative error of mu_1..mu_n against the reference.
double spectrum_error(const Spectrum& s, const std::vector<double>& ref, int n) {
  double e = 0.0;
  for (int k = 1; k <= n; ++k) e = std::max(e, rel(s[k], ref[k]));
  return e;
}

void ac1(Outcome& o) {
  const auto sq_ref = oracle::rectangle_eigenvalues(1.0, 1.0, 6);
  const auto disk_ref = oracle::disk_eigenvalues(1.0, 5);
  EvalOptions e;
  e.h_rel = 1.0 / 60.0;
  const ConvexPolygon sq = square_polygon(0.0, 1.0);
  const Spectrum s0 = polygon_spectrum(sq, 5, e);
  const SupportFunction disk = disk_support(1.0);
  const Spectrum d0 = shape_spectrum(disk, 4, e);
  e.refine = 1;
  const Spectrum s1 = polygon_spectrum(sq, 5, e);
  const Spectrum d1 = shape_spectrum(disk, 4, e);

  const double es0 = spectrum_error(s0, sq_ref, 5), es1 = spectrum_error(s1, sq_ref, 5);
  const double ed0 = spectrum_error(d0, disk_ref, 4), ed1 = spectrum_error(d1, disk_ref, 4);
  o.detail << "square err " << es0 << " -> " << es1 << " (x" << es0 / es1 << "), disk err " << ed0 << " -> " << ed1
           << " (x" << ed0 / ed1 << ") ";
  o.check(es0 <= 0.005, "square within 0.5%");
  o.check(ed0 <= 0.01, "disk within 1%");
  o.check(es0 / es1 >= 3.0, "square refinement ratio");
  o.check(ed0 / ed1 >= 3.0, "disk refinement ratio");
}

void ac2(Outcome& o) {
  const double L = 0.9 * std::sqrt(2.0), w = 0.05;
  const Point c(0.5, 0.5), a = Point(1, 1).normalized(), b(-a.y(), a.x());
  const ConvexPolygon thin({c - 0.5 * L * a - 0.5 * w * b, c + 0.5 * L * a - 0.5 * w * b, c + 0.5 * L * a + 0.5 * w * b,
                            c - 0.5 * L * a + 0.5 * w * b});
  const ConvexPolygon sq = square_polygon(0.0, 1.0);
  bool inside = true;
  for (const auto& v : thin.vertices()) inside = inside && sq.contains(v, 1e-12);
  const double mu = polygon_spectrum(thin, 1)[1];
  const double exact = oracle::rectangle_eigenvalues(L, w, 2)[1];
  const double mu_sq = polygon_spectrum(sq, 1)[1];
  o.detail << "mu_1(thin) " << mu << " (closed form " << exact << "), mu_1(square) " << mu_sq << " ";
  o.check(inside, "rectangle inside square");
  o.check(rel(mu, exact) <= kTol, "FEM matches closed form");
  o.check(mu < oracle::kPi * oracle::kPi * (1.0 - 0.01), "mu_1 below pi^2 (1 - 1%)");
}

void ac3(Outcome& o) {
  OptimizerOptions opts;
  opts.starts = 2;
  opts.max_iters = 60;
  const OptimizationResult r = solve_interior(disk_support(1.0), 1, Strategy::piecewise_affine(50), opts);
  const double w = min_width(r.shape);
  o.detail << "mu_1 " << r.mu << ", width " << w << ", infimum " << oracle::kPi * oracle::kPi / 4 << " ";
  o.check(r.mu <= 2.55, "mu_1 <= 2.55");
  o.check(w <= 5.0 * tol::epsilon_width, "width <= 5 eps_width");
  o.check(r.feasibility_residual <= 1e-8, "feasible");
}

void ac4(Outcome& o) {
  const auto fam = ParametricFamily::parse("disk-square-intersection");
  const auto [lo, hi] = fam.domain();
  const ScanResult s = scan_family(fam, 3, uniform_grid(lo, hi, 50));
  OptimizerOptions opts;
  opts.starts = 3;
  opts.max_iters = 60;
  const OptimizationResult r = solve_interior(disk_support(1.0), 3, Strategy::fourier(8), opts);
  const double mu_disk = shape_spectrum(disk_support(1.0), 3)[3];
  o.detail << "scan theta " << s.best_param << ", mu_3 " << s.best_value << "; free mu_3 " << r.mu << " vs disk "
           << mu_disk << " ";
  o.check(std::abs(s.best_param - 0.21) <= 0.03, "theta = 0.21 +- 0.03");
  o.check(rel(s.best_value, 8.47) <= 0.02, "mu_3 = 8.47 +- 2%");
  o.check(r.mu <= 8.95 && r.mu < mu_disk, "free mu_3 <= 8.95 < mu_3(disk)");
}

void ac5(Outcome& o) {
  OptimizerOptions opts;
  opts.starts = 4;
  opts.max_iters = 60;
  const OptimizationResult r = solve_interior(square_support(1.0), 4, Strategy::piecewise_affine(80), opts);
  const auto fam = ParametricFamily::parse("octagon");
  const auto [lo, hi] = fam.domain();
  const ScanResult s = scan_family(fam, 4, uniform_grid(lo, hi, 41));
  o.detail << "free mu_4 " << r.mu << "; octagon t " << s.best_param << ", mu_4 " << s.best_value << " ";
  o.check(r.mu <= 9.2, "free mu_4 <= 9.2");
  o.check(s.best_value <= 8.95, "octagon mu_4 <= 8.95");
  o.check(s.best_param > lo && s.best_param < hi, "octagon minimizer interior to the family");
}

void ac6(Outcome& o) {
  struct Case {
    const char* family;
    int k;
    double d, mu, d_tol;
  };
  for (const Case c : {Case{"hull-disk-points:2", 2, 1.93, 3.61, 0.05}, Case{"hull-disk-points:4", 4, 1.31, 9.94, 0.05},
                       Case{"hull-square-points", 2, 2.22, 2.88, 0.06}}) {
    const auto fam = ParametricFamily::parse(c.family);
    const auto [lo, hi] = fam.domain();
    const ScanResult s = scan_family(fam, c.k, uniform_grid(lo, hi, 41));
    o.detail << c.family << " k=" << c.k << ": d " << s.best_param << ", mu " << s.best_value << "; ";
    o.check(s.maximize, std::string(c.family) + " maximized");
    o.check(std::abs(s.best_param - c.d) <= c.d_tol, std::string(c.family) + " argmax");
    o.check(rel(s.best_value, c.mu) <= 0.02, std::string(c.family) + " max value");
  }
}

void ac7(Outcome& o) {
  struct Case {
    const char* name;
    SupportFunction obstacle;
    Strategy strategy;
  };
  for (const Case& c : {Case{"square", square_support(1.0), Strategy::piecewise_affine(48)},
                        Case{"disk", disk_support(1.0), Strategy::fourier(10)}}) {
    OptimizerOptions opts;
    opts.starts = 5;
    opts.max_iters = 40;
    opts.seed = 7;
    const OptimizationResult r = solve_exterior(c.obstacle, 1, c.strategy, opts);
    const double mu0 = shape_spectrum(c.obstacle, 1, EvalOptions{0, opts.h_rel_final})[1];
    const double hd = hausdorff_distance(r.shape, c.obstacle);
    o.detail << c.name << ": mu_1 " << r.mu << " vs obstacle " << mu0 << ", Hausdorff " << hd << "; ";
    o.check(r.mu <= mu0 * (1.0 + kTol), std::string(c.name) + " mu_1 not above the obstacle's");
    o.check(hd <= 0.05, std::string(c.name) + " returns the obstacle");
  }
}

void ac8(Outcome& o) {
  std::mt19937_64 rng(2024);
  const double j01 = oracle::j01(), j11p = oracle::jprime_zero(1, 1);
  const double pi2 = oracle::kPi * oracle::kPi;
  int violations = 0, checks = 0;
  EvalOptions e;
  e.h_rel = 1.0 / 40.0;
  for (int i = 0; i < 100; ++i) {
    const ConvexPolygon p = oracle::random_polygon(rng);
    const Spectrum s = polygon_spectrum(p, 4, e);
    const double d = oracle::diameter(p.vertices()), A = oracle::area(p.vertices()), w = oracle::min_width(p.vertices());
    auto le = [&](double a, double b) {
      ++checks;
      if (a > b * (1.0 + kTol)) ++violations;
    };
    le(pi2 / (d * d), s[1]);
    le(payne_weinberger(d), s[1]);
    le(s[1] * A, oracle::kPi * j11p * j11p);  // Szego-Weinberger
    le(s[1], pi2 * w * w / (A * A));          // width inequality
    for (int k = 1; k <= 4; ++k) {
      const double top = 2 * j01 + (k - 1) * oracle::kPi;
      le(s[k], top * top / (d * d));
      le(s[k], diameter_upper(d, k));
      le(buser_grid_lower(p, k), s[k]);
    }
  }
  o.detail << checks << " checks on 100 polygons, " << violations << " violations ";
  o.check(violations == 0, "no violations");
}

void ac9(Outcome& o) {
  const double j01 = oracle::j01();
  const double M1 = oracle::kPi * oracle::kPi / (4 * j01 * j01);
  const double lib = m_k_bounds(1).lower;
  const double pi2 = oracle::kPi * oracle::kPi;
  const double k0 = k0_bound(square_support(1.0));
  o.detail << "M_1 " << lib << " (oracle " << M1 << "), C_2 " << c_k(2, 6.0) << ", C_3 " << c_k(3, 6.0) << ", C_4 "
           << c_k(4, 6.0) << ", k0(square) " << k0 << " ";
  // 0.426649 as quoted is 1.8e-6 below the true value 0.4266508; the
  // bisection oracle and the five-digit value 0.42665 are checked instead.
  o.detail << "(|M_1 - 0.426649| = " << std::abs(lib - 0.426649) << ") ";
  o.check(std::abs(lib - M1) <= 1e-9 && std::abs(lib - 0.42665) <= 1e-6, "M_1");
  o.check(std::abs(j01 - ssl::j01()) <= 1e-10, "j01");
  o.check(c_k(2, 6.0) > pi2, "C_2 > pi^2");
  o.check(c_k(3, 6.0) > c_k(2, 6.0), "C_3 > C_2");
  o.check(c_k(4, 6.0) == 2 * pi2, "C_4 = 2 pi^2");
  o.check(k0 >= 3.59 && k0 <= 3.61, "k0(square)");
}

void ac10(Outcome& o) {
  std::vector<ConvexPolygon> shapes = {square_polygon(-1, 1), disk_polygon()};
  std::mt19937_64 rng(10);
  for (int i = 0; i < 3; ++i) shapes.push_back(oracle::random_polygon(rng));
  int violations = 0, checks = 0;
  double worst = 0.0;
  for (const auto& p : shapes) {
    const Spectrum s0 = polygon_spectrum(p, 3);
    for (double t : {1.2, 1.5, 2.0}) {
      Eigen::Matrix2d L = Eigen::Matrix2d::Identity();
      L(0, 0) = t;
      const Spectrum s = polygon_spectrum(p.transformed(L, Point::Zero()), 3);
      for (int k = 1; k <= 3; ++k) {
        ++checks;
        worst = std::max(worst, s[k] / s0[k] - 1.0);
        if (s[k] > s0[k] * (1.0 + kTol)) ++violations;
      }
    }
  }
  o.detail << checks << " checks, " << violations << " violations, largest relative rise " << worst << " ";
  o.check(violations == 0, "stretching never raises mu_k beyond tol");
}

void ac11(Outcome& o) {
  SchemeOptions opts;
  const SchemeTrace t = run_scheme(square_support(1.0), 2, 5, opts);
  const MonotonicityCheck m = check_monotonicity(t, kTol);
  // Geometric inclusion: every vertex of Omega_n lies in D_n.
  bool inside = !t.steps.empty();
  for (const auto& s : t.steps) {
    const ConvexPolygon D = reconstruct_polygon(s.D, ReconstructOptions{0, true, 0.0});
    const ConvexPolygon W = reconstruct_polygon(s.omega, ReconstructOptions{0, true, 0.0});
    for (const auto& v : W.vertices()) inside = inside && D.contains(v, 1e-7);
  }
  o.detail << "steps " << t.steps.size() << ", status " << to_string(t.status) << "; ";
  for (const auto& s : t.steps)
    o.detail << "n=" << s.n << " mu(O)=" << s.mu_omega << " mu(D)=" << s.mu_D << " J=" << s.J << "; ";
  o.check(t.error.empty(), "no stage failed: " + t.error);
  o.check(t.steps.size() == 5 || t.status != SchemeStatus::Running, "ran to n_max or a terminal status");
  o.check(m.mu_D_nondecreasing, "mu_k(D_n) nondecreasing");
  o.check(m.mu_omega_nonincreasing, "mu_k(Omega_n) nonincreasing");
  o.check(m.J_nonincreasing, "J_k(D_n) nonincreasing");
  o.check(m.inclusions && inside, "Omega_n inside D_n");
}

void ac12(Outcome& o) {
  struct Cell {
    const char* shape;
    int k;
    ProblemKind mode;
    SelfDomainVerdict expected;
  };
  using V = SelfDomainVerdict;
  const auto I = ProblemKind::Interior, E = ProblemKind::Exterior;
  const Cell cells[] = {
      {"disk", 1, I, V::NoExistence},  {"disk", 2, I, V::Probably},   {"disk", 3, I, V::No},
      {"disk", 4, I, V::Probably},     {"square", 1, I, V::NoExistence}, {"square", 2, I, V::Probably},
      {"square", 3, I, V::Probably},   {"square", 4, I, V::No},       {"disk", 1, E, V::Yes},
      {"disk", 2, E, V::No},           {"disk", 3, E, V::Probably},   {"disk", 4, E, V::No},
      {"square", 1, E, V::Yes},        {"square", 2, E, V::No},       {"square", 3, E, V::Probably},
      {"square", 4, E, V::Probably},
  };
  int wrong = 0;
  for (const auto& c : cells) {
    const SupportFunction f = std::string(c.shape) == "disk" ? disk_support(1.0) : square_support(1.0);
    const SelfDomainReport r = self_domain_check(f, c.k, c.mode, {}, c.shape);
    if (r.verdict != c.expected) {
      ++wrong;
      o.detail << c.shape << " k=" << c.k << " " << to_string(c.mode) << ": got " << to_string(r.verdict)
               << " expected " << to_string(c.expected) << "; ";
    }
  }
  o.detail << (sizeof(cells) / sizeof(cells[0])) << " cells, " << wrong << " mismatches ";
  o.check(wrong == 0, "all table cells reproduced");
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<void(Outcome&)>> criteria = {ac1, ac2, ac3, ac4,  ac5,  ac6,
                                                               ac7, ac8, ac9, ac10, ac11, ac12};
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(n)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("AC%-2d %s (%.1fs) %s\n", n, o.pass ? "PASS" : "FAIL", secs, o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
