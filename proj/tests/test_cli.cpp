#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ztel/cli.hpp"

using namespace ztel;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = fs::path(ZTEL_SOURCE_DIR) / "configs";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "ztel_cli_test" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("nullity on the Heisenberg config") {
  const auto dir = scratch("nullity");
  const auto r = run({"nullity", (kConfigs / "heisenberg.toml").string(), "--out", dir.string(), "--plot"});
  CHECK(r.code == kExitOk);
  CHECK(fs::exists(dir / "decay.csv"));
  CHECK(fs::exists(dir / "eta.csv"));
  CHECK(fs::exists(dir / "psi.json"));
  CHECK(fs::exists(dir / "decay.svg"));
  const auto verdict = nlohmann::json::parse(slurp(dir / "verdict.json"));
  CHECK(verdict["verdicts"].size() == 6);
  CHECK(slurp(dir / "decay.csv").substr(0, 19) == "family,scale,delta\n");
}

TEST_CASE("a non-unimodular matrix exits with 2") {
  const auto dir = scratch("bad");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.toml") << "[group]\nname = \"bad\"\nmatrix = [[2, 0], [0, 2]]\n"
                                     "[family.t]\nkind = \"t_power\"\nladder = [1, 2]\n";
  const auto r = run({"nullity", (dir / "bad.toml").string(), "--out", (dir / "out").string()});
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("NotUnimodular") != std::string::npos);
  CHECK(r.err.find("bad.toml:3") != std::string::npos);
}

TEST_CASE("argument errors exit with 2") {
  CHECK(run({}).code == kExitConfig);
  CHECK(run({"frobnicate"}).code == kExitConfig);
  CHECK(run({"nullity"}).code == kExitConfig);
  CHECK(run({"nullity", "/nonexistent.toml"}).code == kExitConfig);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("demo-heisenberg") {
  const auto dir = scratch("demo");
  const auto r = run({"demo-heisenberg", "--out", dir.string()});
  CHECK(r.code == kExitOk);
  const auto summary = nlohmann::json::parse(slurp(dir / "demo_summary.json"));
  CHECK(summary.contains("slope_curve"));
  CHECK(summary.contains("euclid_curve"));
  CHECK(summary["slope_final"].get<double>() < summary["euclid_final"].get<double>());
  CHECK(summary["pass"].get<bool>());
}

TEST_CASE("sol nullity reports its failing family with exit 1") {
  const auto dir = scratch("sol");
  const auto r = run({"nullity", (kConfigs / "sol.toml").string(), "--out", dir.string()});
  CHECK(r.code == kExitVerdict);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("other subcommands") {
  const auto cfg = (kConfigs / "heisenberg.toml").string();
  for (const char* cmd : {"group", "telescope", "baseline", "coarse", "boundary"}) {
    INFO(cmd);
    const auto dir = scratch(cmd);
    CHECK(run({cmd, cfg, "--out", dir.string()}).code == kExitOk);
    CHECK_FALSE(fs::is_empty(dir));
  }
  const auto dir = scratch("group3");
  run({"group", cfg, "--out", dir.string()});
  const auto csv = slurp(dir / "growth_compare.csv");
  CHECK(csv.find("5,190,102\n") != std::string::npos);
}

TEST_CASE("outputs are deterministic across runs and thread counts") {
  const auto cfg = (kConfigs / "heisenberg.toml").string();
  const auto a = scratch("det_a"), b = scratch("det_b");
  for (const char* cmd : {"nullity", "boundary", "telescope", "baseline"}) {
    setenv("ZTEL_THREADS", "1", 1);
    REQUIRE(run({cmd, cfg, "--out", a.string()}).code == kExitOk);
    setenv("ZTEL_THREADS", "4", 1);
    REQUIRE(run({cmd, cfg, "--out", b.string()}).code == kExitOk);
  }
  unsetenv("ZTEL_THREADS");
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    INFO(entry.path().filename().string());
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
    ++files;
  }
  CHECK(files >= 8);
}

TEST_CASE("seed override changes the random cases only") {
  const auto cfg = (kConfigs / "heisenberg.toml").string();
  const auto a = scratch("seed_a");
  CHECK(run({"telescope", cfg, "--out", a.string(), "--seed", "5"}).code == kExitOk);
  const auto j = nlohmann::json::parse(slurp(a / "telescope.json"));
  CHECK(j["seed"] == 5);
}

TEST_CASE("embedded config matches the committed file") {
  CHECK(std::string(embedded_heisenberg_config()) == slurp(kConfigs / "heisenberg.toml"));
}
