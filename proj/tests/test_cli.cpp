#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cones/cli.hpp"

using namespace cones;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cones");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cones_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("run on the frozen instance reports the jump") {
  const fs::path dir = scratch("frozen");
  const Result r = cli({"run", "--policy", "frugal", "--family", "frozen", "--param", "T_freeze=7", "--T", "200",
                        "--param", "r0=1", "--param", "D=4", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "frugal_frozen_200.csv"));
  CHECK(r.out.find("jump_times=167 ") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("run greedy on directional input has nonpositive regret") {
  const fs::path dir = scratch("dir");
  const Result r = cli({"run", "--policy", "greedy", "--family", "directional", "--param", "D=10", "--T", "5", "--out",
                        dir.string(), "--format", "json"});
  CHECK(r.code == 0);
  const std::string json = read_file(dir / "greedy_directional_5.json");
  CHECK(json.find("\"records\"") != std::string::npos);
  const auto pos = r.out.find("regret_final=");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.out.substr(pos + 13)) <= 0.0);
  fs::remove_all(dir);
}

TEST_CASE("unknown family is a domain error listing the families") {
  const Result r = cli({"run", "--policy", "greedy", "--family", "nope", "--T", "5", "--out", scratch("bad").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("sc_lb") != std::string::npos);
  CHECK(r.err.find("directional") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({"run", "--policy", "greedy", "--T", "abc"}).code == 2);
  CHECK(cli({"run", "--policy"}).code == 2);
  CHECK(cli({"run", "--policy", "greedy", "--family", "sc_lb", "--T", "8", "--param", "novalue"}).code == 2);
  CHECK(cli({"reproduce", "fig9"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"run", "--policy", "greedy", "--family", "sc_lb", "--T", "8", "--format", "xml"}).code == 2);
}

TEST_CASE("unknown parameter keys are rejected") {
  const Result r = cli({"run", "--policy", "greedy", "--family", "sc_lb", "--T", "8", "--param", "bogus=1", "--out",
                        scratch("key").string()});
  CHECK(r.code == 1);
}

TEST_CASE("sweep writes a table and prints the movement slope") {
  const fs::path dir = scratch("sweep");
  const Result r = cli({"sweep", "--policy", "greedy", "--family", "sc_lb", "--T-list", "16,32,64,128", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "greedy_sc_lb_16-128.csv"));
  CHECK(r.out.find("slope") != std::string::npos);
  const Result one = cli({"sweep", "--policy", "greedy", "--family", "sc_lb", "--T-list", "16", "--out", dir.string()});
  CHECK(one.code == 0);
  fs::remove_all(dir);
}

TEST_CASE("CONES_OUT overrides --out") {
  const fs::path env = scratch("env"), flag = scratch("flag");
  setenv("CONES_OUT", env.string().c_str(), 1);
  const Result r = cli({"run", "--policy", "lsp", "--family", "sc_lb", "--T", "8", "--out", flag.string()});
  unsetenv("CONES_OUT");
  CHECK(r.code == 0);
  CHECK(fs::exists(env / "lsp_sc_lb_8.csv"));
  CHECK_FALSE(fs::exists(flag / "lsp_sc_lb_8.csv"));
  fs::remove_all(env);
}

TEST_CASE("reproduce fig3 writes the bundle") {
  const fs::path dir = scratch("fig3");
  const Result r = cli({"reproduce", "fig3", "--out", dir.string()});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "fig3_geometry_sc_lb_7.csv"));
  fs::remove_all(dir);
}

TEST_CASE("verify exit codes") {
  CHECK(cli({"verify", "oracle"}).code == 0);
  const Result bad = cli({"verify", "algorithms", "--inject-fault"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  CHECK(cli({"verify", "nope"}).code == 2);
}
