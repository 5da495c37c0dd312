#include "ssl/support_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "ssl/errors.hpp"

namespace ssl {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

int default_fourier_samples(int order) { return std::max(100, 4 * order + 4); }

// Golden-section search for the maximum of g on [a, b].
template <class G>
double golden_max(G&& g, double a, double b, int iters = 60) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double gc = g(c), gd = g(d);
  for (int i = 0; i < iters; ++i) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - r * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + r * (b - a);
      gd = g(d);
    }
  }
  return gc >= gd ? c : d;
}

double extreme_width_angle(const SupportFunction& f, bool maximize) {
  constexpr int kScan = 1024;
  const double sign = maximize ? 1.0 : -1.0;
  double best_t = 0.0, best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < kScan; ++i) {
    const double t = M_PI * i / kScan;
    const double w = sign * width(f, t);
    if (w > best) {
      best = w;
      best_t = t;
    }
  }
  const double step = M_PI / kScan;
  const double refined = golden_max([&](double t) { return sign * width(f, t); }, best_t - step, best_t + step);
  return sign * width(f, refined) >= best ? refined : best_t;
}

}  // namespace

// ---------------------------------------------------------------------------

SupportFunction SupportFunction::fourier(Eigen::VectorXd coeffs) {
  if (coeffs.size() < 1 || coeffs.size() % 2 == 0)
    throw Error(ErrorKind::InvalidInput, "Fourier coefficient vector must have length 2N+1");
  return SupportFunction(Representation::Fourier, std::move(coeffs));
}

SupportFunction SupportFunction::piecewise_affine(Eigen::VectorXd samples) {
  if (samples.size() < 8) throw Error(ErrorKind::InvalidDiscretization, "piecewise-affine support needs M >= 8");
  return SupportFunction(Representation::PiecewiseAffine, std::move(samples));
}

double SupportFunction::operator()(double theta) const {
  if (is_fourier()) {
    const int N = order();
    double v = data_[0];
    for (int k = 1; k <= N; ++k) v += data_[k] * std::cos(k * theta) + data_[N + k] * std::sin(k * theta);
    return v;
  }
  const int M = sample_count();
  const double t = wrap_angle(theta) / (kTwoPi / M);
  int j = static_cast<int>(std::floor(t));
  double frac = t - j;
  j %= M;
  return data_[j] * (1.0 - frac) + data_[(j + 1) % M] * frac;
}

double SupportFunction::sample_angle(int j) const { return kTwoPi * j / sample_count(); }

SupportFunction SupportFunction::translated(const Point& t) const {
  Eigen::VectorXd d = data_;
  if (is_fourier()) {
    if (order() < 1) {
      d.resize(3);
      d << data_[0], 0.0, 0.0;
    }
    const int N = static_cast<int>((d.size() - 1) / 2);
    d[1] += t.x();
    d[N + 1] += t.y();
    return SupportFunction(Representation::Fourier, std::move(d));
  }
  for (int j = 0; j < d.size(); ++j) d[j] += t.dot(unit_direction(sample_angle(j)));
  return SupportFunction(Representation::PiecewiseAffine, std::move(d));
}

SupportFunction SupportFunction::scaled(double s) const { return SupportFunction(repr_, s * data_); }

SupportFunction SupportFunction::resampled(int M) const {
  Eigen::VectorXd s(M);
  for (int j = 0; j < M; ++j) s[j] = (*this)(kTwoPi * j / M);
  return piecewise_affine(std::move(s));
}

SupportFunction SupportFunction::fitted_fourier(int N, int fit_samples) const {
  if (is_fourier() && order() <= N) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * N + 1);
    const int n0 = order();
    c[0] = data_[0];
    for (int k = 1; k <= n0; ++k) {
      c[k] = data_[k];
      c[N + k] = data_[n0 + k];
    }
    return fourier(std::move(c));
  }
  const int S = fit_samples > 0 ? fit_samples : std::max(8 * N + 8, 512);
  if (S <= 2 * N) throw Error(ErrorKind::InvalidDiscretization, "too few samples for Fourier fit");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * N + 1);
  for (int j = 0; j < S; ++j) {
    const double t = kTwoPi * j / S;
    const double v = (*this)(t);
    c[0] += v / S;
    for (int k = 1; k <= N; ++k) {
      c[k] += 2.0 * v * std::cos(k * t) / S;
      c[N + k] += 2.0 * v * std::sin(k * t) / S;
    }
  }
  return fourier(std::move(c));
}

// ---------------------------------------------------------------------------

double convexity_residual(const SupportFunction& f, double theta) {
  if (f.is_fourier()) {
    const auto& c = f.params();
    const int N = f.order();
    double v = c[0];
    for (int k = 1; k <= N; ++k)
      v += (1.0 - double(k) * k) * (c[k] * std::cos(k * theta) + c[N + k] * std::sin(k * theta));
    return v;
  }
  const int M = f.sample_count();
  const double tau = kTwoPi / M;
  const double t = wrap_angle(theta) / tau;
  const int j = static_cast<int>(std::lround(t)) % M;
  if (std::abs(t - std::lround(t)) > 1e-6) throw Error(ErrorKind::InvalidInput, "theta is not a sample angle");
  const auto& s = f.params();
  return s[j] + (s[(j + 1) % M] - 2.0 * s[j] + s[(j + M - 1) % M]) / (tau * tau);
}

double min_convexity_residual(const SupportFunction& f, int M) {
  if (!f.is_fourier()) M = f.sample_count();
  if (M <= 0) M = default_fourier_samples(f.order());
  double r = std::numeric_limits<double>::infinity();
  for (int m = 0; m < M; ++m) r = std::min(r, convexity_residual(f, kTwoPi * m / M));
  return r;
}

// ---------------------------------------------------------------------------

SupportFunction disk_support(double radius, const Point& center) {
  Eigen::VectorXd c(3);
  c << radius, center.x(), center.y();
  return SupportFunction::fourier(std::move(c));
}

SupportFunction polygon_support(std::span<const Point> vertices, int M) {
  if (vertices.empty()) throw Error(ErrorKind::InvalidInput, "no vertices");
  Eigen::VectorXd s(M);
  for (int j = 0; j < M; ++j) {
    const Point u = unit_direction(kTwoPi * j / M);
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& p : vertices) v = std::max(v, p.dot(u));
    s[j] = v;
  }
  return SupportFunction::piecewise_affine(std::move(s));
}

SupportFunction square_support(double half_side, int M) {
  return rectangle_support({-half_side, -half_side}, {half_side, half_side}, M);
}

SupportFunction rectangle_support(const Point& lo, const Point& hi, int M) {
  const std::vector<Point> v{{lo.x(), lo.y()}, {hi.x(), lo.y()}, {hi.x(), hi.y()}, {lo.x(), hi.y()}};
  return polygon_support(v, M);
}

SupportFunction reuleaux_support(double w, int M) {
  std::vector<Point> corners;
  for (int i = 0; i < 3; ++i) corners.push_back(w / std::sqrt(3.0) * unit_direction(M_PI / 2 + i * kTwoPi / 3));
  std::vector<Point> boundary;
  constexpr int kArc = 2000;
  for (int i = 0; i < 3; ++i) {
    const Point& c = corners[i];
    const Point a = corners[(i + 1) % 3] - c;
    const double t0 = std::atan2(a.y(), a.x());
    for (int s = 0; s <= kArc; ++s) boundary.push_back(c + w * unit_direction(t0 + (M_PI / 3) * s / kArc));
  }
  return polygon_support(boundary, M);
}

SupportFunction hull_with_points(const SupportFunction& f, std::span<const Point> points, int M) {
  auto hull_value = [&](double t) {
    double v = f(t);
    const Point u = unit_direction(t);
    for (const auto& p : points) v = std::max(v, p.dot(u));
    return v;
  };
  if (!f.is_fourier() || M > 0) {
    const int S = M > 0 ? M : f.sample_count();
    Eigen::VectorXd s(S);
    for (int j = 0; j < S; ++j) s[j] = hull_value(kTwoPi * j / S);
    return SupportFunction::piecewise_affine(std::move(s));
  }
  const int S = std::max(8 * f.order() + 8, 512);
  Eigen::VectorXd s(S);
  for (int j = 0; j < S; ++j) s[j] = hull_value(kTwoPi * j / S);
  return SupportFunction::piecewise_affine(std::move(s)).fitted_fourier(f.order(), S);
}

// ---------------------------------------------------------------------------

const char* to_string(ProblemKind kind) { return kind == ProblemKind::Interior ? "interior" : "exterior"; }

Strategy Strategy::fourier(int order, int constraint_samples) {
  if (order < 1) throw Error(ErrorKind::InvalidDiscretization, "Fourier order must be >= 1");
  return Strategy{Representation::Fourier, order, constraint_samples};
}

Strategy Strategy::piecewise_affine(int samples) {
  if (samples < 8) throw Error(ErrorKind::InvalidDiscretization, "piecewise-affine strategy needs M >= 8");
  return Strategy{Representation::PiecewiseAffine, samples, 0};
}

Strategy Strategy::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::InvalidInput, "strategy must look like fourier:N or pwa:M");
  const std::string kind = text.substr(0, colon);
  int n = 0;
  try {
    n = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidInput, "bad strategy size in '" + text + "'");
  }
  if (kind == "fourier") return fourier(n);
  if (kind == "pwa") return piecewise_affine(n);
  throw Error(ErrorKind::InvalidInput, "unknown strategy '" + kind + "'");
}

int Strategy::sample_count() const {
  if (repr == Representation::PiecewiseAffine) return size;
  return constraint_samples > 0 ? constraint_samples : default_fourier_samples(size);
}

std::string Strategy::to_string() const {
  return (repr == Representation::Fourier ? "fourier:" : "pwa:") + std::to_string(size);
}

SupportFunction Strategy::shape(const Eigen::VectorXd& F) const {
  if (F.size() != dimension()) throw Error(ErrorKind::InvalidInput, "parameter vector has wrong dimension");
  return repr == Representation::Fourier ? SupportFunction::fourier(F) : SupportFunction::piecewise_affine(F);
}

Eigen::VectorXd Strategy::encode(const SupportFunction& f) const {
  if (repr == Representation::Fourier) return f.fitted_fourier(size).params();
  if (!f.is_fourier() && f.sample_count() == size) return f.params();
  return f.resampled(size).params();
}

double ConstraintSystem::max_violation(const Eigen::VectorXd& F) const { return (A * F - B).maxCoeff(); }

ConstraintSystem assemble_constraints(ProblemKind kind, const Strategy& strategy, const SupportFunction& reference,
                                      bool vertex_rows) {
  const int M = strategy.sample_count();
  if (M < 8) throw Error(ErrorKind::InvalidDiscretization, "need at least 8 constraint samples");
  const double sign = kind == ProblemKind::Interior ? 1.0 : -1.0;
  const int d = strategy.dimension();
  ConstraintSystem sys;
  sys.kind = kind;
  sys.strategy = strategy;
  sys.A = Eigen::MatrixXd::Zero(2 * M, d);
  sys.B = Eigen::VectorXd::Zero(2 * M);
  const double tau = kTwoPi / M;
  // Support of the realized reference body. Linear interpolation of sparse
  // samples underestimates it between sample angles.
  std::optional<ConvexPolygon> ref_poly;
  if (!reference.is_fourier()) ref_poly = reconstruct_polygon(reference, ReconstructOptions{0, true, 0.0});
  auto h = [&](double t) { return ref_poly ? ref_poly->support(t) : reference(t); };
  if (strategy.repr == Representation::Fourier) {
    const int N = strategy.size;
    for (int m = 0; m < M; ++m) {
      const double t = tau * m;
      sys.A(m, 0) = -1.0;
      sys.A(M + m, 0) = sign;
      for (int k = 1; k <= N; ++k) {
        const double c = std::cos(k * t), s = std::sin(k * t);
        const double w = 1.0 - double(k) * k;
        sys.A(m, k) = -w * c;
        sys.A(m, N + k) = -w * s;
        sys.A(M + m, k) = sign * c;
        sys.A(M + m, N + k) = sign * s;
      }
      sys.B[M + m] = sign * h(t);
    }
  } else {
    const double inv = 1.0 / (tau * tau);
    for (int m = 0; m < M; ++m) {
      sys.A(m, m) = -1.0 + 2.0 * inv;
      sys.A(m, (m + 1) % M) = -inv;
      sys.A(m, (m + M - 1) % M) = -inv;
      sys.A(M + m, m) = sign;
      sys.B[M + m] = sign * h(tau * m);
    }
    if (vertex_rows && kind == ProblemKind::Interior) {
      // Vertex between normals m and m+1, tested along the bisecting normal.
      const double c = 0.5 / std::cos(0.5 * tau);
      sys.A.conservativeResize(3 * M, d);
      sys.B.conservativeResize(3 * M);
      sys.A.bottomRows(M).setZero();
      for (int m = 0; m < M; ++m) {
        sys.A(2 * M + m, m) = c;
        sys.A(2 * M + m, (m + 1) % M) = c;
        sys.B[2 * M + m] = h(tau * (m + 0.5));
      }
    }
  }
  return sys;
}

// ---------------------------------------------------------------------------

Halfplanes realize_halfplanes(const SupportFunction& f, int M_out) {
  Halfplanes h;
  int M = M_out;
  if (M <= 0) M = f.is_fourier() ? 256 : f.sample_count();
  const bool native = !f.is_fourier() && M == f.sample_count();
  h.angles.resize(M);
  h.offsets.resize(M);
  for (int j = 0; j < M; ++j) {
    h.angles[j] = kTwoPi * j / M;
    h.offsets[j] = native ? f.params()[j] : f(h.angles[j]);
  }
  return h;
}

ConvexPolygon reconstruct_polygon(const SupportFunction& f, const ReconstructOptions& opts) {
  return intersect_halfplanes(realize_halfplanes(f, opts.samples), opts.allow_thin ? 0.0 : opts.epsilon_width);
}

double width(const SupportFunction& f, double theta) { return f(theta) + f(theta + M_PI); }

double diameter_direction(const SupportFunction& f) { return extreme_width_angle(f, true); }

double diameter(const SupportFunction& f) { return width(f, diameter_direction(f)); }

double min_width(const SupportFunction& f) { return width(f, extreme_width_angle(f, false)); }

double perpendicular_width(const SupportFunction& f) { return width(f, diameter_direction(f) + 0.5 * M_PI); }

double area(const SupportFunction& f, int M_out) {
  if (M_out <= 0 && f.is_fourier()) M_out = 512;
  return reconstruct_polygon(f, ReconstructOptions{M_out, true, tol::epsilon_width}).area();
}

bool contains(const SupportFunction& outer, const SupportFunction& inner, int M, double tol) {
  if (M <= 0) M = std::max({outer.sample_count(), inner.sample_count(), 512});
  for (int j = 0; j < M; ++j) {
    const double t = kTwoPi * j / M;
    if (inner(t) > outer(t) + tol) return false;
  }
  return true;
}

double hausdorff_distance(const SupportFunction& f, const SupportFunction& g, int samples) {
  double d = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double t = kTwoPi * j / samples;
    d = std::max(d, std::abs(f(t) - g(t)));
  }
  return d;
}

}  // namespace ssl
