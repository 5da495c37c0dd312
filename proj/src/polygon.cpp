#include "ssl/polygon.hpp"

#include <algorithm>
#include <limits>

#include "ssl/errors.hpp"

namespace ssl {

namespace {

double signed_area(const std::vector<Point>& v) {
  double a = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) a += cross(v[i], v[(i + 1) % n]);
  return 0.5 * a;
}

double extent(const std::vector<Point>& v) {
  double s = 0.0;
  for (const auto& p : v) s = std::max(s, p.cwiseAbs().maxCoeff());
  return std::max(s, 1e-300);
}

// Drops duplicate and collinear vertices of a ccw loop.
std::vector<Point> clean_loop(std::vector<Point> v, double tol_geom) {
  const double scale = extent(v);
  const double dup = tol_geom * scale;
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    std::vector<Point> out;
    out.reserve(v.size());
    for (const auto& p : v) {
      if (!out.empty() && (p - out.back()).norm() <= dup) {
        changed = true;
        continue;
      }
      out.push_back(p);
    }
    while (out.size() > 1 && (out.front() - out.back()).norm() <= dup) {
      out.pop_back();
      changed = true;
    }
    v.swap(out);
    if (v.size() < 3) break;
    out.clear();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& prev = v[(i + n - 1) % n];
      const Point& cur = v[i];
      const Point& next = v[(i + 1) % n];
      const Point e1 = cur - prev;
      const Point e2 = next - cur;
      if (cross(e1, e2) <= tol_geom * e1.norm() * e2.norm()) {
        changed = true;
        continue;
      }
      out.push_back(cur);
    }
    v.swap(out);
  }
  return v;
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices, double tol_geom) {
  if (vertices.size() >= 3 && signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
  vertices = clean_loop(std::move(vertices), tol_geom);
  if (vertices.size() < 3) throw Error(ErrorKind::DegenerateShape, "polygon has fewer than 3 vertices");
  vertices_ = std::move(vertices);
}

double ConvexPolygon::area() const { return signed_area(vertices_); }

double ConvexPolygon::perimeter() const {
  double p = 0.0;
  for (std::size_t i = 0, n = size(); i < n; ++i) p += (vertices_[(i + 1) % n] - vertices_[i]).norm();
  return p;
}

Point ConvexPolygon::centroid() const {
  Point c = Point::Zero();
  double a = 0.0;
  for (std::size_t i = 0, n = size(); i < n; ++i) {
    const Point& p = vertices_[i];
    const Point& q = vertices_[(i + 1) % n];
    const double w = cross(p, q);
    a += w;
    c += w * (p + q);
  }
  return c / (3.0 * a);
}

double ConvexPolygon::support(double theta) const {
  const Point u = unit_direction(theta);
  double s = -std::numeric_limits<double>::infinity();
  for (const auto& p : vertices_) s = std::max(s, p.dot(u));
  return s;
}

std::pair<Point, Point> ConvexPolygon::diameter_endpoints() const {
  double best = -1.0;
  std::pair<Point, Point> ends{vertices_[0], vertices_[0]};
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j) {
      const double d = (vertices_[i] - vertices_[j]).squaredNorm();
      if (d > best) {
        best = d;
        ends = {vertices_[i], vertices_[j]};
      }
    }
  return ends;
}

double ConvexPolygon::diameter() const {
  const auto [a, b] = diameter_endpoints();
  return (a - b).norm();
}

double ConvexPolygon::min_width() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = size(); i < n; ++i) {
    const Point e = (vertices_[(i + 1) % n] - vertices_[i]).normalized();
    double far = 0.0;
    for (const auto& p : vertices_) far = std::max(far, cross(e, p - vertices_[i]));
    best = std::min(best, far);
  }
  return best;
}

double ConvexPolygon::min_width_angle() const {
  double best = std::numeric_limits<double>::infinity();
  double angle = 0.0;
  for (std::size_t i = 0, n = size(); i < n; ++i) {
    const Point e = (vertices_[(i + 1) % n] - vertices_[i]).normalized();
    double far = 0.0;
    for (const auto& p : vertices_) far = std::max(far, cross(e, p - vertices_[i]));
    if (far < best) {
      best = far;
      angle = std::atan2(-e.x(), e.y());  // outward normal (e.y, -e.x)
    }
  }
  return angle;
}

double ConvexPolygon::perpendicular_width() const {
  const auto [a, b] = diameter_endpoints();
  const Point e = (b - a).normalized();
  const Point n(-e.y(), e.x());
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& p : vertices_) {
    lo = std::min(lo, n.dot(p));
    hi = std::max(hi, n.dot(p));
  }
  return hi - lo;
}

double ConvexPolygon::min_edge_length() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = size(); i < n; ++i)
    best = std::min(best, (vertices_[(i + 1) % n] - vertices_[i]).norm());
  return best;
}

double ConvexPolygon::inner_distance(const Point& p) const {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = size(); i < n; ++i) {
    const Point e = (vertices_[(i + 1) % n] - vertices_[i]).normalized();
    d = std::min(d, cross(e, p - vertices_[i]));
  }
  return d;
}

bool ConvexPolygon::contains(const Point& p, double tol) const { return inner_distance(p) >= -tol; }

ConvexPolygon ConvexPolygon::transformed(const Eigen::Matrix2d& L, const Point& t) const {
  std::vector<Point> v;
  v.reserve(size());
  for (const auto& p : vertices_) v.push_back(L * p + t);
  return ConvexPolygon(std::move(v));
}

std::optional<ConvexPolygon> ConvexPolygon::clipped(const Point& normal, double offset) const {
  std::vector<Point> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = vertices_[i];
    const Point& q = vertices_[(i + 1) % n];
    const double dp = normal.dot(p) - offset;
    const double dq = normal.dot(q) - offset;
    if (dp <= 0.0) out.push_back(p);
    if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) out.push_back(p + (q - p) * (dp / (dp - dq)));
  }
  if (out.size() < 3) return std::nullopt;
  out = clean_loop(std::move(out), tol::geom);
  if (out.size() < 3 || signed_area(out) <= 0.0) return std::nullopt;
  ConvexPolygon result;
  result.vertices_ = std::move(out);
  return result;
}

ConvexPolygon intersect_halfplanes(const Halfplanes& planes, double min_width, double tol_geom) {
  if (planes.size() < 3) throw Error(ErrorKind::InvalidDiscretization, "need at least 3 halfplanes");
  double reach = 1.0;
  for (double o : planes.offsets) reach = std::max(reach, std::abs(o));
  const double big = 1e3 * reach;
  std::vector<Point> poly{{-big, -big}, {big, -big}, {big, big}, {-big, big}};
  std::vector<Point> next;
  for (std::size_t m = 0; m < planes.size(); ++m) {
    const Point u = unit_direction(planes.angles[m]);
    const double c = planes.offsets[m];
    next.clear();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& p = poly[i];
      const Point& q = poly[(i + 1) % n];
      const double dp = u.dot(p) - c;
      const double dq = u.dot(q) - c;
      if (dp <= 0.0) next.push_back(p);
      if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) next.push_back(p + (q - p) * (dp / (dp - dq)));
    }
    poly.swap(next);
    if (poly.empty()) throw Error(ErrorKind::DegenerateShape, "empty halfplane intersection");
  }
  if (poly.size() < 3) throw Error(ErrorKind::CollapsedShape, "halfplane intersection is a segment or a point");
  for (const auto& p : poly)
    if (p.cwiseAbs().maxCoeff() > 0.5 * big)
      throw Error(ErrorKind::DegenerateShape, "halfplane intersection is unbounded");
  auto cleaned = clean_loop(std::move(poly), tol_geom);
  if (cleaned.size() < 3 || signed_area(cleaned) <= 0.0)
    throw Error(ErrorKind::CollapsedShape, "halfplane intersection has no interior");
  ConvexPolygon result(std::move(cleaned), tol_geom);
  if (min_width > 0.0 && result.min_width() < min_width)
    throw Error(ErrorKind::CollapsedShape, "width " + std::to_string(result.min_width()) + " below threshold");
  return result;
}

double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b, int samples) {
  double d = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * M_PI * i / samples;
    d = std::max(d, std::abs(a.support(t) - b.support(t)));
  }
  return d;
}

ConvexPolygon convex_hull(std::vector<Point> pts, double tol_geom) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  if (pts.size() < 3) throw Error(ErrorKind::DegenerateShape, "hull needs at least 3 points");
  std::vector<Point> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return ConvexPolygon(std::move(h), tol_geom);
}

}  // namespace ssl
