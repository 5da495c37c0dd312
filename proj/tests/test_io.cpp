#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "ssl/errors.hpp"
#include "ssl/io.hpp"
#include "ssl/run_config.hpp"

using namespace ssl;

TEST(ShapeSpec, Builtins) {
  EXPECT_NEAR(parse_shape({"disk"}).support(0.3), 1.0, 1e-12);
  EXPECT_NEAR(parse_shape({"disk", "2.5"}).support(1.0), 2.5, 1e-12);
  const ShapeSpec sq = parse_shape({"unit-square"});
  ASSERT_TRUE(sq.polygon.has_value());
  EXPECT_NEAR(sq.polygon->area(), 1.0, 1e-12);
  EXPECT_NEAR(parse_shape({"square"}).polygon->area(), 4.0, 1e-12);
  EXPECT_NEAR(parse_shape({"rectangle", "1", "0.01"}).polygon->area(), 0.01, 1e-14);
  EXPECT_NEAR(min_width(parse_shape({"reuleaux", "1.5"}).support), 1.5, 1e-3);
  EXPECT_NEAR(parse_shape({"hull-disk-points:2:1.93"}).polygon->diameter(), 3.86, 1e-9);
}

TEST(ShapeSpec, Errors) {
  EXPECT_THROW(parse_shape({}), Error);
  EXPECT_THROW(parse_shape({"rectangle", "1"}), Error);
  EXPECT_THROW(parse_shape({"disk", "-1"}), Error);
  EXPECT_THROW(parse_shape({"octagon:2"}), Error);
  EXPECT_THROW(parse_shape({"/nonexistent/shape.txt"}), Error);
}

TEST(ShapeSpec, VertexFileAndJsonFile) {
  const std::string poly = testing::TempDir() + "tri.txt";
  std::ofstream(poly) << "# triangle\n0 0\n2 0\n0 1\n";
  EXPECT_NEAR(parse_shape({poly}).polygon->area(), 1.0, 1e-12);

  const std::string json = testing::TempDir() + "shape.json";
  std::ofstream(json) << Json{{"shape", to_json(disk_support(0.5))}}.dump();
  EXPECT_NEAR(parse_shape({json}).support(2.0), 0.5, 1e-12);

  const std::string bad = testing::TempDir() + "bad.txt";
  std::ofstream(bad) << "0 0\n1 0\n1 1\n0 1\n0.5 0.5\n";
  EXPECT_THROW(parse_shape({bad}), Error);
}

TEST(Json, SupportFunctionRoundTrip) {
  for (const SupportFunction& f : {disk_support(1.3, Point(0.1, 0.2)), square_support(1.0, 48)}) {
    const SupportFunction g = support_from_json(Json::parse(to_json(f).dump()));
    EXPECT_EQ(g.repr(), f.repr());
    EXPECT_EQ(g.params(), f.params());
  }
  EXPECT_THROW(support_from_json(Json{{"repr", "spline"}, {"params", {1.0}}}), Error);
}

TEST(RunConfig, RoundTripIsLossless) {
  RunConfig c;
  c.command = "optimize";
  c.shape = {"rectangle", "1", "0.5"};
  c.mode = "exterior";
  c.k = 3;
  c.strategy = "fourier:7";
  c.h_rel = 1.0 / 70.0;
  c.seed = 123456789012345ull;
  c.probe = true;
  const RunConfig d = config_from_json(Json::parse(to_json(c).dump()));
  EXPECT_EQ(to_json(d), to_json(c));
  EXPECT_EQ(d.h_rel, c.h_rel);
  Json bad = to_json(c);
  bad["version"] = 99;
  EXPECT_THROW(config_from_json(bad), Error);
}

TEST(RunConfig, ReplayIsBitwise) {
  RunConfig c;
  c.command = "optimize";
  c.shape = {"square"};
  c.mode = "interior";
  c.k = 2;
  c.strategy = "pwa:16";
  c.starts = 2;
  c.max_iters = 2;
  const RunOutput a = execute(c);
  const RunOutput b = execute(config_from_json(a.report["config"]));
  EXPECT_EQ(a.report.dump(), b.report.dump());
  EXPECT_EQ(a.report["version"], kConfigVersion);
  ASSERT_EQ(a.svgs.size(), 1u);
  EXPECT_NE(a.svgs[0].second.find("fill-opacity=\"0.5\""), std::string::npos);
  EXPECT_NE(a.svgs[0].second.find("fill=\"none\""), std::string::npos);
}

TEST(RunConfig, EigReportsSpectrum) {
  RunConfig c;
  c.command = "eig";
  c.shape = {"unit-square"};
  c.k = 2;
  const RunOutput out = execute(c);
  const auto v = out.report["result"]["spectrum"]["values"].get<std::vector<double>>();
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v[1] / (oracle::kPi * oracle::kPi), 1.0, 5e-3);
  EXPECT_NE(out.mesh.find("triangles "), std::string::npos);
  EXPECT_EQ(out.csv.substr(0, 5), "k,mu\n");
}

TEST(Csv, SchemeAndScanLayouts) {
  SchemeTrace t;
  SchemeStep s;
  s.n = 1, s.mu_omega = 1, s.mu_D = 2, s.J = 0.5, s.min_width_D = 1, s.diam_D = 2;
  t.steps = {s};
  std::ostringstream a;
  write_scheme_csv(a, t);
  EXPECT_EQ(a.str(), "n,mu_omega,mu_D,J,min_width_D,diam_D\n1,1,2,0.5,1,2\n");
  ScanResult r;
  r.grid = {{0.5, 3.25}};
  std::ostringstream b;
  write_scan_csv(b, r);
  EXPECT_EQ(b.str(), "param,mu\n0.5,3.25\n");
}

TEST(Mesh, TextFormatCounts) {
  const TriangleMesh m = triangulate(ConvexPolygon({{0, 0}, {1, 0}, {0, 1}}), 0.5);
  std::ostringstream os;
  write_mesh(os, m);
  std::istringstream in(os.str());
  std::string word;
  std::size_t n = 0;
  in >> word >> n;
  EXPECT_EQ(word, "nodes");
  EXPECT_EQ(n, m.nodes.size());
}
