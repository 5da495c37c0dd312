// ssl: Neumann eigenvalues and eigenvalue-driven shape optimization of
// planar convex bodies.
//
// Exit codes: 0 success, 1 usage or replay mismatch, 2 geometry errors,
// 3 solver errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ssl/errors.hpp"
#include "ssl/run_config.hpp"

namespace {

struct Outputs {
  std::string json;
  std::string csv;
  std::string svg;
  std::string mesh;
  bool quiet = false;
  bool verbose = false;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ssl::Error(ssl::ErrorKind::InvalidInput, "cannot write '" + path + "'");
  f << text;
}

// "out.svg" + "_3" -> "out_3.svg"
std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos || path.find('/', dot) != std::string::npos) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

int emit(const ssl::RunOutput& out, const Outputs& o) {
  if (!o.quiet) std::cout << out.table;
  if (!o.json.empty()) write_file(o.json, out.report.dump(2) + "\n");
  if (!o.csv.empty() && !out.csv.empty()) write_file(o.csv, out.csv);
  if (!o.mesh.empty() && !out.mesh.empty()) write_file(o.mesh, out.mesh);
  if (!o.svg.empty())
    for (const auto& [suffix, doc] : out.svgs) write_file(with_suffix(o.svg, suffix), doc);
  if (!out.error.empty()) {
    std::cerr << "error: " << out.error << "\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neumann eigenvalues and eigenvalue shape optimization for planar convex bodies"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.set_version_flag("--version", "ssl " + std::to_string(ssl::kConfigVersion));

  ssl::RunConfig cfg;
  Outputs out;
  std::string replay_path;
  bool replay_check = false;

  auto common_outputs = [&](CLI::App* sub) {
    sub->add_option("--json", out.json, "Write the JSON report (with embedded config) here");
    sub->add_option("--csv", out.csv, "Write the CSV table here");
    sub->add_flag("-q,--quiet", out.quiet, "Do not print the summary");
    sub->add_flag("-v,--verbose", out.verbose, "Print progress on stderr");
  };
  auto shape_arg = [&](CLI::App* sub, const char* what) {
    sub->add_option("shape", cfg.shape, what)->required()->expected(1, 3);
  };
  auto eval_opts = [&](CLI::App* sub) {
    sub->add_option("--h", cfg.h_rel, "Mesh size relative to the diameter")->capture_default_str();
    sub->add_option("--refine", cfg.refine, "Uniform refinements after meshing")->capture_default_str();
  };
  auto opt_opts = [&](CLI::App* sub) {
    sub->add_option("--strategy", cfg.strategy, "fourier:N (order N) or pwa:M (M samples)")->capture_default_str();
    sub->add_option("--starts", cfg.starts, "Random starts")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Seed for the starts")->capture_default_str();
    sub->add_option("--max-iters", cfg.max_iters, "Iterations per start")->capture_default_str();
  };
  const char* shape_help =
      "disk [r] | square [h] | unit-square | rectangle a b | reuleaux [w] | <family>:<t> | file";

  auto* eig = app.add_subcommand("eig", "Neumann spectrum mu_0..mu_k");
  shape_arg(eig, shape_help);
  eig->add_option("--k", cfg.k, "Highest index")->capture_default_str();
  eval_opts(eig);
  eig->add_option("--mesh", out.mesh, "Write the mesh in text form here");
  common_outputs(eig);

  auto* bounds = app.add_subcommand("bounds", "Analytic bounds and inequality checks");
  shape_arg(bounds, shape_help);
  bounds->add_option("--k", cfg.k, "Eigenvalue index")->capture_default_str();
  bounds->add_option("--C", cfg.C, "Constant of the partition lower bound")->capture_default_str();
  eval_opts(bounds);
  common_outputs(bounds);

  auto* optimize = app.add_subcommand("optimize", "Interior minimization or exterior maximization of mu_k");
  optimize->add_option("mode", cfg.mode, "interior or exterior")->required()->check(CLI::IsMember({"interior", "exterior"}));
  shape_arg(optimize, "Box (interior) or obstacle (exterior)");
  optimize->add_option("--k", cfg.k, "Eigenvalue index")->capture_default_str();
  opt_opts(optimize);
  optimize->add_option("--svg", out.svg, "Overlay of the reference and the optimum");
  common_outputs(optimize);

  auto* scan = app.add_subcommand("scan", "mu_k along a parametric family");
  scan->add_option("family", cfg.shape,
                   "disk-square-intersection | hull-disk-points:2 | hull-disk-points:4 | hull-square-points | octagon")
      ->required()
      ->expected(1);
  scan->add_option("--k", cfg.k, "Eigenvalue index")->capture_default_str();
  scan->add_option("--grid", cfg.grid, "Grid points over the natural range")->capture_default_str();
  eval_opts(scan);
  scan->add_option("--svg", out.svg, "Reference and best member");
  common_outputs(scan);

  auto* iterate = app.add_subcommand("iterate", "Alternating interior/exterior scheme from a box");
  shape_arg(iterate, "Initial box D_1");
  iterate->add_option("--k", cfg.k, "Eigenvalue index")->capture_default_str();
  iterate->add_option("--n", cfg.iterations, "Iterations")->capture_default_str();
  opt_opts(iterate);
  iterate->add_option("--svg", out.svg, "Per-iteration snapshots (suffix _n)");
  common_outputs(iterate);

  auto* self = app.add_subcommand("self-domain", "Is the shape optimal for its own interior/exterior problem?");
  shape_arg(self, shape_help);
  self->add_option("--k", cfg.k, "Eigenvalue index")->capture_default_str();
  self->add_option("--mode", cfg.mode, "interior or exterior")
      ->capture_default_str()
      ->check(CLI::IsMember({"interior", "exterior"}));
  self->add_flag("--probe", cfg.probe, "Also run a short optimization on inconclusive cases");
  self->add_option("--strategy", cfg.strategy, "Probe strategy")->capture_default_str();
  self->add_option("--seed", cfg.seed, "Probe seed")->capture_default_str();
  eval_opts(self);
  common_outputs(self);

  auto* replay = app.add_subcommand("replay", "Rerun the config embedded in a JSON report or config file");
  replay->add_option("report", replay_path, "Report or config JSON")->required()->check(CLI::ExistingFile);
  replay->add_flag("--check", replay_check, "Exit 1 unless the rerun reproduces the report exactly");
  common_outputs(replay);

  // Scheme stages are many optimizations; keep their defaults small.
  iterate->preparse_callback([&](std::size_t) {
    cfg.strategy = "pwa:48";
    cfg.starts = 2;
    cfg.max_iters = 25;
    cfg.k = 2;
  });
  self->preparse_callback([&](std::size_t) { cfg.strategy = "pwa:48"; });
  iterate->get_option("--strategy")->default_str("pwa:48");
  iterate->get_option("--starts")->default_str("2");
  iterate->get_option("--max-iters")->default_str("25");
  iterate->get_option("--k")->default_str("2");
  self->get_option("--strategy")->default_str("pwa:48");

  CLI11_PARSE(app, argc, argv);

  try {
    ssl::Json stored;
    if (replay->parsed()) {
      std::ifstream in(replay_path);
      try {
        stored = ssl::Json::parse(in);
      } catch (const ssl::Json::exception& e) {
        throw ssl::Error(ssl::ErrorKind::InvalidInput, replay_path + ": " + e.what());
      }
      cfg = ssl::config_from_json(stored.contains("config") ? stored["config"] : stored);
    } else {
      cfg.command = app.get_subcommands().front()->get_name();
    }
    std::function<void(const std::string&)> progress;
    if (out.verbose) progress = [](const std::string& line) { std::cerr << line << "\n"; };

    const ssl::RunOutput result = ssl::execute(cfg, progress);
    const int code = emit(result, out);
    if (replay_check && stored.contains("result")) {
      if (stored != result.report) {
        std::cerr << "replay differs from the stored report\n";
        return 1;
      }
      std::cerr << "replay reproduces the stored report\n";
    }
    return code;
  } catch (const ssl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_geometry() ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
