#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "ztel/config.hpp"
#include "ztel/io.hpp"
#include "ztel/pipeline.hpp"

using namespace ztel;

namespace {

const std::string kMinimal = R"(# minimal
[group]
name = "h"
matrix = [[1, 1],
          [0, 1]]

[family.t]
kind = "t_power"
ladder = [4, 8]
threshold = 0.5
)";

std::string error_of(const std::string& text) {
  try {
    parse_experiment(ConfigFile::parse(text, "x.toml"));
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

}  // namespace

TEST_CASE("config parsing") {
  const auto file = ConfigFile::parse(kMinimal, "x.toml");
  CHECK(file.line("group", "matrix") == 4);
  CHECK(file.get("group", "name") == "h");
  const auto cfg = parse_experiment(file);
  CHECK(cfg.matrix == std::vector<std::vector<std::int64_t>>{{1, 1}, {0, 1}});
  CHECK(cfg.families.size() == 1);
  CHECK(cfg.family("t").ladder == std::vector<double>{4, 8});
  CHECK(cfg.domain_step == 0.25);
  CHECK(cfg.mode == SlopeMode::standard);
  CHECK(file.sections_with_prefix("family.") == std::vector<std::string>{"family.t"});
}

TEST_CASE("config errors carry line numbers") {
  CHECK(error_of("[group]\nmatrix = [[1,0],[0,1]]\nname = \n") == "x.toml:3: missing value for 'name'");
  CHECK(error_of("[group\n") == "x.toml:1: unterminated section header");
  CHECK(error_of("[group]\nmatrix [[1]]\n") == "x.toml:2: expected 'key = value'");
  CHECK(error_of("[group]\nmatrix = [[1, 0], [0, 1]\n") .find("x.toml:2:") == 0);
  CHECK(error_of(replace(kMinimal, "ladder = [4, 8]", "ladder = [8, 4]")) ==
        "x.toml:9: ladder must be strictly increasing");
  CHECK(error_of(replace(kMinimal, "kind = \"t_power\"", "kind = \"spiral\"")).find("x.toml:8:") == 0);
  CHECK(error_of(kMinimal + "[compactification]\ndomain_step = 2\n").find("x.toml:12:") == 0);
  CHECK(error_of(kMinimal + "[group]\n").find("duplicate section") != std::string::npos);
  const auto bad = replace(kMinimal, "[[1, 1],\n          [0, 1]]", "[[2, 0], [0, 2]]");
  CHECK(error_of(bad).find("x.toml:4: NotUnimodular") == 0);
  CHECK_THROWS_AS(parse_experiment(ConfigFile::parse(bad, "x.toml")), NotUnimodular);
  CHECK_THROWS_AS(parse_experiment(ConfigFile::parse("[group]\nname = \"x\"\n")), ConfigError);
  CHECK_THROWS_AS(load_experiment("/nonexistent/config.toml"), ConfigError);
}

TEST_CASE("committed fixture configs load") {
  for (const char* name : {"heisenberg", "sol", "product"}) {
    const auto cfg = load_experiment(std::filesystem::path(ZTEL_SOURCE_DIR) / "configs" / (std::string(name) + ".toml"));
    CHECK(cfg.name == name);
    CHECK_FALSE(cfg.families.empty());
  }
}

TEST_CASE("json round trips") {
  const auto h = heisenberg();
  CHECK(io::automorphism_from_json(io::to_json(h)) == h);
  const TelescopePoint p{{0.1, -3.5}, 2.75};
  CHECK(io::telescope_point_from_json(io::to_json(p)) == p);
  CHECK(io::format_real(kInf) == "inf");
  CHECK(io::format_real(-kInf) == "-inf");
  CHECK(io::format_real(0.1 + 0.2) == "0.3");
  CHECK(io::real(kInf) == "inf");
}

TEST_CASE("csv writers") {
  CHECK(io::growth_csv({1, 6, 22}) == "r,count\n0,1\n1,6\n2,22\n");
  CHECK(io::growth_compare_csv({1, 6}, {1, 6}) == "r,count,direct_count\n0,1,1\n1,6,6\n");
  const DecayCurve c{{{"t", 4, 0.25}, {"t", 8, 0.125}}};
  CHECK(io::decay_csv(c) == "family,scale,delta\nt,4,0.25\nt,8,0.125\n");
  SampledFunction eta{1.0, {3, 5}};
  CHECK(io::eta_csv(eta) == "k,eta\n0,3\n1,5\n");
  const auto dom = fundamental_domain(heisenberg(), 1.0);
  const auto csv = io::domain_csv(heisenberg(), dom);
  CHECK(csv.substr(0, csv.find('\n')) == "x0,x1,r,v0,v1");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
  const auto svg = io::svg_plot("t", "delta", io::plot_series(c));
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
}
