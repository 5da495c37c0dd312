#include "ssl/mesher.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "ssl/errors.hpp"

namespace ssl {

namespace {

double orient(const Point& a, const Point& b, const Point& c) { return cross(b - a, c - a); }

// > 0 when d lies strictly inside the circumcircle of the ccw triangle abc.
double incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
  const Point ad = a - d, bd = b - d, cd = c - d;
  const double a2 = ad.squaredNorm(), b2 = bd.squaredNorm(), c2 = cd.squaredNorm();
  return ad.x() * (bd.y() * c2 - b2 * cd.y()) - ad.y() * (bd.x() * c2 - b2 * cd.x()) + a2 * (bd.x() * cd.y() - bd.y() * cd.x());
}

// Incremental constrained Delaunay triangulation of a convex polygon whose
// boundary loop is fixed up front. n[t][i] is the neighbor across the edge
// opposite v[t][i], or -1 on the boundary.
class Builder {
 public:
  Builder(std::vector<Point> boundary, const Point& center, double scale) : pts_(std::move(boundary)), scale_(scale) {
    const int nb = static_cast<int>(pts_.size());
    const int c = add_point(center);
    for (int i = 0; i < nb; ++i) {
      v_.push_back({c, i, (i + 1) % nb});
      n_.push_back({-1, (i + 1) % nb, (i + nb - 1) % nb});
    }
    for (int t = 0; t < nb; ++t) stack_.push_back({t, 1}), stack_.push_back({t, 2});
    legalize();
  }

  void insert(const Point& p) {
    const double eps = 1e-12 * scale_ * scale_;
    const int t = locate(p);
    if (t < 0) return;
    int on_edge = -1;
    for (int i = 0; i < 3; ++i) {
      const double o = orient(pts_[v_[t][(i + 1) % 3]], pts_[v_[t][(i + 2) % 3]], p);
      if (o < -eps) return;  // location failed
      if (o <= eps) on_edge = i;
    }
    for (int i = 0; i < 3; ++i)
      if ((pts_[v_[t][i]] - p).norm() <= 1e-9 * scale_) return;
    const int id = add_point(p);
    if (on_edge < 0) split_triangle(t, id);
    else if (n_[t][on_edge] >= 0) split_edge(t, on_edge, id);
    else {
      pts_.pop_back();
      return;
    }
    legalize();
  }

  void global_pass() {
    for (int t = 0; t < static_cast<int>(v_.size()); ++t)
      for (int i = 0; i < 3; ++i) stack_.push_back({t, i});
    legalize();
  }

  TriangleMesh finish() {
    TriangleMesh m;
    m.nodes = pts_;
    m.triangles = v_;
    for (std::size_t t = 0; t < v_.size(); ++t)
      for (int i = 0; i < 3; ++i)
        if (n_[t][i] < 0) m.boundary_edges.push_back({v_[t][(i + 1) % 3], v_[t][(i + 2) % 3]});
    return m;
  }

 private:
  int add_point(const Point& p) {
    pts_.push_back(p);
    return static_cast<int>(pts_.size()) - 1;
  }

  int locate(const Point& p) {
    const double eps = 1e-12 * scale_ * scale_;
    int t = last_ < static_cast<int>(v_.size()) ? last_ : 0;
    for (std::size_t step = 0; step < 4 * v_.size() + 16; ++step) {
      int next = -2;
      for (int i = 0; i < 3; ++i) {
        if (orient(pts_[v_[t][(i + 1) % 3]], pts_[v_[t][(i + 2) % 3]], p) < -eps) {
          next = n_[t][i];
          break;
        }
      }
      if (next == -2) return last_ = t;
      if (next < 0) break;
      t = next;
    }
    // Walk failed; scan.
    for (int s = 0; s < static_cast<int>(v_.size()); ++s) {
      bool inside = true;
      for (int i = 0; i < 3 && inside; ++i)
        inside = orient(pts_[v_[s][(i + 1) % 3]], pts_[v_[s][(i + 2) % 3]], p) >= -eps;
      if (inside) return last_ = s;
    }
    return -1;
  }

  void relink(int nb, int from, int to) {
    if (nb < 0) return;
    for (int i = 0; i < 3; ++i)
      if (n_[nb][i] == from) {
        n_[nb][i] = to;
        return;
      }
  }

  void split_triangle(int t, int p) {
    const auto [a, b, c] = v_[t];
    const auto [na, nb, nc] = n_[t];
    const int t1 = static_cast<int>(v_.size()), t2 = t1 + 1;
    v_[t] = {a, b, p};
    n_[t] = {t1, t2, nc};
    v_.push_back({b, c, p});
    n_.push_back({t2, t, na});
    v_.push_back({c, a, p});
    n_.push_back({t, t1, nb});
    relink(na, t, t1);
    relink(nb, t, t2);
    stack_.push_back({t, 2});
    stack_.push_back({t1, 2});
    stack_.push_back({t2, 2});
  }

  // Splits the interior edge opposite v[t][i] at p.
  void split_edge(int t, int i, int p) {
    const int a = v_[t][i], b = v_[t][(i + 1) % 3], c = v_[t][(i + 2) % 3];
    const int nTb = n_[t][(i + 1) % 3], nTc = n_[t][(i + 2) % 3];
    const int u = n_[t][i];
    int j = 0;
    while (v_[u][j] == b || v_[u][j] == c) ++j;
    const int d = v_[u][j];
    const int nUb = n_[u][(j + 2) % 3], nUc = n_[u][(j + 1) % 3];
    const int t1 = static_cast<int>(v_.size()), u1 = t1 + 1;
    v_[t] = {a, b, p};
    n_[t] = {u1, t1, nTc};
    v_.push_back({a, p, c});
    n_.push_back({u, nTb, t});
    v_[u] = {d, c, p};
    n_[u] = {t1, u1, nUb};
    v_.push_back({d, p, b});
    n_.push_back({t, nUc, u});
    relink(nTb, t, t1);
    relink(nUc, u, u1);
    stack_.push_back({t, 2});
    stack_.push_back({t1, 1});
    stack_.push_back({u, 2});
    stack_.push_back({u1, 1});
  }

  void legalize() {
    const double s4 = scale_ * scale_ * scale_ * scale_;
    while (!stack_.empty()) {
      const auto [t, i] = stack_.back();
      stack_.pop_back();
      const int u = n_[t][i];
      if (u < 0) continue;
      const int a = v_[t][i], b = v_[t][(i + 1) % 3], c = v_[t][(i + 2) % 3];
      int j = 0;
      while (j < 3 && (v_[u][j] == b || v_[u][j] == c)) ++j;
      if (j == 3) continue;
      const int d = v_[u][j];
      if (incircle(pts_[a], pts_[b], pts_[c], pts_[d]) <= 1e-12 * s4) continue;
      // The quad a,b,d,c must be strictly convex for the flip.
      if (orient(pts_[a], pts_[b], pts_[d]) <= 0.0 || orient(pts_[a], pts_[d], pts_[c]) <= 0.0) continue;
      const int nTb = n_[t][(i + 1) % 3], nTc = n_[t][(i + 2) % 3];
      const int nUc = n_[u][(j + 1) % 3], nUb = n_[u][(j + 2) % 3];
      v_[t] = {a, b, d};
      n_[t] = {nUc, u, nTc};
      v_[u] = {a, d, c};
      n_[u] = {nUb, nTb, t};
      relink(nUc, u, t);
      relink(nTb, t, u);
      stack_.push_back({t, 0});
      stack_.push_back({u, 0});
    }
  }

  std::vector<Point> pts_;
  std::vector<std::array<int, 3>> v_;
  std::vector<std::array<int, 3>> n_;
  std::vector<std::pair<int, int>> stack_;
  double scale_;
  int last_ = 0;
};

// Merges runs of vertices closer than tol to their midpoint.
std::vector<Point> merge_close(std::vector<Point> v, double tol) {
  bool changed = true;
  while (changed && v.size() > 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size() && v.size() > 3; ++i) {
      const std::size_t j = (i + 1) % v.size();
      if ((v[i] - v[j]).norm() < tol) {
        v[i] = 0.5 * (v[i] + v[j]);
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
      }
    }
  }
  return v;
}

TriangleMesh mesh_convex(const ConvexPolygon& poly, double h, double h_min) {
  const auto verts = merge_close(poly.vertices(), h_min);
  std::vector<Point> boundary;
  for (std::size_t i = 0, n = verts.size(); i < n; ++i) {
    const Point& p = verts[i];
    const Point& q = verts[(i + 1) % n];
    const int pieces = std::max(1, static_cast<int>(std::ceil((q - p).norm() / h - 1e-9)));
    for (int s = 0; s < pieces; ++s) boundary.push_back(p + (q - p) * (double(s) / pieces));
  }
  const ConvexPolygon merged(verts);
  const Point c = merged.centroid();
  Builder builder(boundary, c, merged.diameter());

  const double dy = h * std::sqrt(3.0) / 2.0;
  double xmin = c.x(), xmax = c.x(), ymin = c.y(), ymax = c.y();
  for (const auto& p : verts) {
    xmin = std::min(xmin, p.x());
    xmax = std::max(xmax, p.x());
    ymin = std::min(ymin, p.y());
    ymax = std::max(ymax, p.y());
  }
  const int j0 = static_cast<int>(std::floor((ymin - c.y()) / dy)) - 1;
  const int j1 = static_cast<int>(std::ceil((ymax - c.y()) / dy)) + 1;
  const int i0 = static_cast<int>(std::floor((xmin - c.x()) / h)) - 2;
  const int i1 = static_cast<int>(std::ceil((xmax - c.x()) / h)) + 2;
  for (int j = j0; j <= j1; ++j) {
    const double shift = (j % 2 != 0) ? 0.5 * h : 0.0;
    for (int i = i0; i <= i1; ++i) {
      const Point p(c.x() + i * h + shift, c.y() + j * dy);
      if ((p - c).norm() < 0.5 * h) continue;
      if (merged.inner_distance(p) < 0.45 * h) continue;
      builder.insert(p);
    }
  }
  builder.global_pass();
  TriangleMesh m = builder.finish();
  m.h_target = h;
  m.h_min_quality = h_min;
  return m;
}

// Column-aligned layout: every node lies on one of the vertical lines
// through the polygon vertices or their subdivisions at spacing <= h, and
// each strip between neighboring columns is zipped into triangles. Columns
// may be arbitrarily close; the triangles stay positively oriented.
TriangleMesh mesh_columns(const ConvexPolygon& poly, double h, double h_min) {
  const auto verts = merge_close(poly.vertices(), h_min);
  const double scale = ConvexPolygon(verts).diameter();
  std::vector<double> keys;
  for (const auto& p : verts) keys.push_back(p.x());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end(), [&](double a, double b) { return b - a <= 1e-9 * scale; }), keys.end());
  if (keys.size() < 2) throw Error(ErrorKind::CollapsedShape, "polygon too small to mesh");
  std::vector<double> xs;
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    const int pieces = std::max(1, static_cast<int>(std::ceil((keys[i + 1] - keys[i]) / h - 1e-9)));
    for (int q = 0; q < pieces; ++q) xs.push_back(keys[i] + (keys[i + 1] - keys[i]) * q / pieces);
  }
  xs.push_back(keys.back());

  auto span = [&](double x) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0, n = verts.size(); i < n; ++i) {
      const Point& p = verts[i];
      const Point& q = verts[(i + 1) % n];
      const double a = std::min(p.x(), q.x()), b = std::max(p.x(), q.x());
      if (x < a - 1e-12 * scale || x > b + 1e-12 * scale) continue;
      if (b - a <= 1e-12 * scale) {
        lo = std::min({lo, p.y(), q.y()});
        hi = std::max({hi, p.y(), q.y()});
      } else {
        const double y = p.y() + (q.y() - p.y()) * (std::clamp(x, a, b) - p.x()) / (q.x() - p.x());
        lo = std::min(lo, y);
        hi = std::max(hi, y);
      }
    }
    return std::pair{lo, hi};
  };

  TriangleMesh m;
  const std::size_t nc = xs.size();
  std::vector<std::vector<int>> cols(nc);
  const double tiny = 1e-9 * scale;
  for (std::size_t i = 0; i < nc; ++i) {
    const auto [lo, hi] = span(xs[i]);
    const bool end = i == 0 || i + 1 == nc;
    const int nl = hi - lo <= tiny ? 0 : std::max(end ? 1 : 2, static_cast<int>(std::ceil((hi - lo) / h - 1e-9)));
    for (int q = 0; q <= nl; ++q) {
      cols[i].push_back(static_cast<int>(m.nodes.size()));
      m.nodes.emplace_back(xs[i], nl == 0 ? 0.5 * (lo + hi) : lo + (hi - lo) * q / nl);
    }
  }
  // Zip column a to column b, advancing on whichever side has the lower
  // next node relative to its own span.
  auto level = [&](const std::vector<int>& c, std::size_t k) {
    return c.size() == 1 ? 0.5 : static_cast<double>(k) / static_cast<double>(c.size() - 1);
  };
  for (std::size_t i = 0; i + 1 < nc; ++i) {
    const auto& a = cols[i];
    const auto& b = cols[i + 1];
    std::size_t ia = 0, ib = 0;
    while (ia + 1 < a.size() || ib + 1 < b.size()) {
      const bool step_a = ib + 1 == b.size() || (ia + 1 < a.size() && level(a, ia + 1) <= level(b, ib + 1));
      if (step_a) {
        m.triangles.push_back({a[ia], b[ib], a[ia + 1]});
        ++ia;
      } else {
        m.triangles.push_back({a[ia], b[ib], b[ib + 1]});
        ++ib;
      }
    }
  }
  if (m.triangles.empty()) throw Error(ErrorKind::CollapsedShape, "polygon too small to mesh");
  // Boundary: directed edges whose reverse is absent.
  std::map<std::pair<int, int>, int> edges;
  for (const auto& t : m.triangles)
    for (int k = 0; k < 3; ++k) ++edges[{t[k], t[(k + 1) % 3]}];
  for (const auto& [e, count] : edges)
    if (!edges.count({e.second, e.first})) m.boundary_edges.push_back({e.first, e.second});
  m.h_target = h;
  m.h_min_quality = h_min;
  return m;
}

}  // namespace

double TriangleMesh::triangle_area(std::size_t t) const {
  const auto& tri = triangles[t];
  return 0.5 * orient(nodes[tri[0]], nodes[tri[1]], nodes[tri[2]]);
}

double TriangleMesh::area() const {
  double a = 0.0;
  for (std::size_t t = 0; t < triangles.size(); ++t) a += triangle_area(t);
  return a;
}

double TriangleMesh::min_altitude() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const double a2 = 2.0 * triangle_area(t);
    for (int i = 0; i < 3; ++i) {
      const double e = (nodes[triangles[t][(i + 1) % 3]] - nodes[triangles[t][(i + 2) % 3]]).norm();
      best = std::min(best, a2 / e);
    }
  }
  return best;
}

double TriangleMesh::max_edge() const {
  double best = 0.0;
  for (const auto& tri : triangles)
    for (int i = 0; i < 3; ++i) best = std::max(best, (nodes[tri[i]] - nodes[tri[(i + 1) % 3]]).norm());
  return best;
}

TriangleMesh triangulate(const ConvexPolygon& poly, const MeshOptions& opts) {
  const double diam = poly.diameter();
  const double h = opts.h_target > 0.0 ? opts.h_target : diam / 60.0;
  const double h_min = opts.h_min_quality > 0.0 ? opts.h_min_quality : 0.01 * h;
  const double w = poly.min_width();
  if (w < tol::epsilon_width && !opts.allow_thin)
    throw Error(ErrorKind::CollapsedShape, "polygon width " + std::to_string(w) + " below collapse threshold");
  if (w >= 4.0 * h) return mesh_convex(poly, h, h_min);

  // Thin body: work in a frame where the minimal-width normal is the y axis,
  // stretched so that a few element layers fit across, and put every node on
  // a column x = const. Each element then keeps an edge along the squeezed
  // direction, which bounds its largest angle after mapping back.
  const double s = 4.0 * h / w;
  const double phi = poly.min_width_angle();
  Eigen::Matrix2d R;
  R << std::sin(phi), -std::cos(phi), std::cos(phi), std::sin(phi);
  const Eigen::Matrix2d L = Eigen::DiagonalMatrix<double, 2>(1.0, s) * R;
  TriangleMesh m = mesh_columns(poly.transformed(L, Point::Zero()), h, h_min);
  const Eigen::Matrix2d Linv = L.inverse();
  for (auto& p : m.nodes) p = Linv * p;
  return m;
}

TriangleMesh refine(const TriangleMesh& mesh) {
  TriangleMesh out;
  out.nodes = mesh.nodes;
  out.h_target = 0.5 * mesh.h_target;
  out.h_min_quality = 0.5 * mesh.h_min_quality;
  std::map<std::pair<int, int>, int> mid;
  auto midpoint = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    const auto it = mid.find(key);
    if (it != mid.end()) return it->second;
    out.nodes.push_back(0.5 * (mesh.nodes[a] + mesh.nodes[b]));
    const int id = static_cast<int>(out.nodes.size()) - 1;
    mid.emplace(key, id);
    return id;
  };
  out.triangles.reserve(4 * mesh.triangles.size());
  for (const auto& [a, b, c] : mesh.triangles) {
    const int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
    out.triangles.push_back({a, ab, ca});
    out.triangles.push_back({ab, b, bc});
    out.triangles.push_back({ca, bc, c});
    out.triangles.push_back({ab, bc, ca});
  }
  for (const auto& [a, b] : mesh.boundary_edges) {
    const int m = midpoint(a, b);
    out.boundary_edges.push_back({a, m});
    out.boundary_edges.push_back({m, b});
  }
  return out;
}

bool is_conforming(const TriangleMesh& mesh) {
  std::map<std::pair<int, int>, int> directed;
  for (const auto& tri : mesh.triangles)
    for (int i = 0; i < 3; ++i)
      if (++directed[{tri[i], tri[(i + 1) % 3]}] > 1) return false;
  std::size_t boundary = 0;
  for (const auto& [e, count] : directed) {
    if (directed.count({e.second, e.first})) continue;
    ++boundary;
    const bool listed = std::any_of(mesh.boundary_edges.begin(), mesh.boundary_edges.end(), [&](const auto& be) {
      return (be[0] == e.first && be[1] == e.second) || (be[0] == e.second && be[1] == e.first);
    });
    if (!listed) return false;
  }
  return boundary == mesh.boundary_edges.size();
}

}  // namespace ssl
