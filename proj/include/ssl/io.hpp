#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssl/bounds.hpp"
#include "ssl/families.hpp"
#include "ssl/optimizer.hpp"
#include "ssl/scheme.hpp"
#include "ssl/self_domain.hpp"

namespace ssl {

using Json = nlohmann::json;

/// A named body. Polygonal builtins and vertex files keep the exact polygon
/// so spectra are computed on it rather than on its sampled support.
struct ShapeSpec {
  std::string id;
  SupportFunction support;
  std::optional<ConvexPolygon> polygon;

  Spectrum spectrum(int kmax, const EvalOptions& opts = {}) const;
};

/// Builtins:
///   disk [r]            disk of radius r (1) at the origin
///   square [h]          [-h, h]^2 (h = 1)
///   unit-square         [0, 1]^2
///   rectangle a b       [-a/2, a/2] x [-b/2, b/2]
///   reuleaux [w]        Reuleaux triangle of width w (2)
///   <family>:<t>        member of a parametric family, e.g. octagon:0.4,
///                       hull-disk-points:2:1.93
/// Anything else is read as a file: JSON holding a support function (or a
/// report with a "shape" entry), otherwise "x y" vertex lines.
ShapeSpec parse_shape(const std::vector<std::string>& tokens, int M = 512);
ShapeSpec load_shape_file(const std::string& path, int M = 512);

Json to_json(const SupportFunction& f);
SupportFunction support_from_json(const Json& j);
Json to_json(const ConvexPolygon& p);
Json to_json(const Spectrum& s);
Json to_json(const OptimizationResult& r);
Json to_json(const ScanResult& r);
Json to_json(const SchemeTrace& t, const MonotonicityCheck& check);
Json to_json(const SelfDomainReport& r);
Json to_json(const BoundsReport& r);
Json to_json(const MkBounds& b);

struct SvgLayer {
  ConvexPolygon polygon;
  bool filled = false;
  std::string color = "#1f4e99";
};

/// Outlined or half-transparent filled polygons in a common viewport.
void write_svg(std::ostream& os, const std::vector<SvgLayer>& layers, int pixels = 480);
/// Reference (box or obstacle) in outline, candidate filled at 50% opacity.
std::string overlay_svg(const SupportFunction& reference, const SupportFunction& candidate);

void write_trace_csv(std::ostream& os, const OptimizationResult& r);
void write_scheme_csv(std::ostream& os, const SchemeTrace& t);
void write_scan_csv(std::ostream& os, const ScanResult& r);

/// "nodes N" then N lines "x y", "triangles T" then T lines "a b c",
/// "boundary B" then B lines "a b"; indices are zero-based.
void write_mesh(std::ostream& os, const TriangleMesh& mesh);

}  // namespace ssl
