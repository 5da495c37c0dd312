#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ssl/io.hpp"

namespace ssl {

inline constexpr int kConfigVersion = 1;

/// Everything a command needs to reproduce its result.
struct RunConfig {
  int version = kConfigVersion;
  /// eig, bounds, optimize, scan, iterate or self-domain.
  std::string command;
  /// Shape tokens (see parse_shape); the family name for scan.
  std::vector<std::string> shape;
  /// interior or exterior (optimize, self-domain).
  std::string mode = "interior";
  int k = 1;
  std::string strategy = "pwa:50";
  /// Eigenvalue evaluation (eig, bounds, scan, self-domain, scheme box value).
  double h_rel = 1.0 / 60.0;
  int refine = 0;
  int starts = 8;
  std::uint64_t seed = 1;
  int max_iters = 60;
  /// scan grid points.
  int grid = 50;
  /// iterate: number of scheme iterations.
  int iterations = 5;
  /// self-domain: run an optimizer probe on inconclusive cells.
  bool probe = false;
  /// bounds: Bucur-Amato style constant.
  double C = kDefaultBucurAmato;
};

Json to_json(const RunConfig& c);
/// Throws InvalidInput on unknown versions or malformed fields.
RunConfig config_from_json(const Json& j);

struct RunOutput {
  /// {"version", "config", "result"}; contains no timing, so reruns compare equal.
  Json report;
  /// Human-readable summary.
  std::string table;
  std::string csv;
  /// (suffix, document) pairs; iterate emits one per iteration.
  std::vector<std::pair<std::string, std::string>> svgs;
  std::string mesh;
  /// A stage failed after partial results were recorded.
  std::string error;
};

/// Runs the command described by `c`. `progress` receives status lines.
RunOutput execute(const RunConfig& c, const std::function<void(const std::string&)>& progress = {});

}  // namespace ssl
