#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "h3surf/cli.hpp"

using namespace h3surf;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("h3surf_cli_test_" + name);
}

}  // namespace

TEST(Cli, AnalyzeSaddleIsMinimal) {
  const Result r = run_cli({"analyze", "--graph", "x*y/2", "--grid", "5x5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "analyze");
  EXPECT_EQ(j["results"]["analyze"]["verdict"], "minimal");
  EXPECT_EQ(j["results"]["analyze"]["points"].size(), 25u);
  EXPECT_EQ(j["timing"]["enabled"], false);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args = {"finite-type", "--family", "s1",   "--a",
                                         "sqrt(c - t^2)", "--c",    "4",    "--t-range",
                                         "-1:1",         "--grid",   "7x7"};
  const Result a = run_cli(args), b = run_cli(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["results"]["finite_type"]["classification"], "multi-eigenvalue");
}

TEST(Cli, JsonKeysAreSortedAndFloatsRoundTrip) {
  const Result r = run_cli({"geodesic", "--point", "0,0,0", "--dir", "1,0,1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_LT(r.out.find("\"command\""), r.out.find("\"results\""));
  EXPECT_LT(r.out.find("\"results\""), r.out.find("\"timing\""));
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["geodesic"]["is_geodesic"], false);
  EXPECT_DOUBLE_EQ(j["results"]["geodesic"]["accel_norm"].get<double>(), 1.0);
}

TEST(Cli, CsvExport) {
  const Result r = run_cli({"export", "--graph", "x*y/2", "--grid", "3x3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "u,v,x,y,z,E,F,G,W2,H,lap_r1,lap_r2,lap_r3");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 9);
}

TEST(Cli, ExitCodes) {
  Result r = run_cli({"analyze", "--graph", "x*", "--grid", "3x3"});
  EXPECT_EQ(r.code, kExitParse);
  EXPECT_EQ(r.err.rfind("error: kind=parse exit=3 message=", 0), 0u) << r.err;

  r = run_cli({"analyze", "--bogus"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(r.err.rfind("error: kind=usage exit=2", 0), 0u) << r.err;

  r = run_cli({"analyze", "--graph", "x", "--grid", "0x3"});
  EXPECT_EQ(r.code, kExitUsage);

  r = run_cli({"analyze", "--graph", "sqrt(x)", "--x-range", "-1:1"});
  EXPECT_EQ(r.code, kExitNumerical);
  EXPECT_NE(r.err.find("kind=numerical"), std::string::npos);

  r = run_cli({"analyze", "--graph", "x", "--out", "/nonexistent-dir/report.json"});
  EXPECT_EQ(r.code, kExitIo);
  EXPECT_NE(r.err.find("kind=io"), std::string::npos);

  r = run_cli({"analyze", "--config", "/nonexistent-dir/cfg.toml"});
  EXPECT_EQ(r.code, kExitIo);

  r = run_cli({"solve-pde", "--equation", "equal12", "--lambda", "0,0,0.1", "--boundary",
               "x*y/2 + 0.3*x", "--grid", "9x9", "--max-iter", "1"});
  EXPECT_EQ(r.code, kExitNumerical);
}

TEST(Cli, ConfigFileIsOverriddenByFlags) {
  const auto cfg = temp_path("cfg.ini");
  {
    std::ofstream f(cfg);
    f << "# defaults\ngraph = x*y/2\ngrid = 3x3\ntiming = true\n";
  }
  Result r = run_cli({"analyze", "--config", cfg.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["analyze"]["points"].size(), 9u);
  EXPECT_EQ(j["timing"]["enabled"], true);

  r = run_cli({"analyze", "--config", cfg.string(), "--grid", "4x4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["analyze"]["points"].size(), 16u);
  std::filesystem::remove(cfg);
}

TEST(Cli, OutWritesFileAtomically) {
  const auto path = temp_path("report.json");
  std::filesystem::remove(path);
  const Result r = run_cli({"beltrami", "--graph", "x*y/2", "--grid", "3x3", "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto j = nlohmann::json::parse(ss.str());
  EXPECT_EQ(j["command"], "beltrami");
  for (const auto& e : std::filesystem::directory_iterator(path.parent_path())) {
    EXPECT_EQ(e.path().filename().string().find("h3surf_cli_test_report.json.tmp"), std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST(Cli, BinaryExitStatus) {
  const std::string bin = H3SURF_CLI_PATH;
  int status = std::system((bin + " analyze --graph 'x*y/2' --grid 3x3 > /dev/null").c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 0);
  status = std::system((bin + " analyze --graph 'x+' 2> /dev/null").c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 3);
}
