#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ztel/algebra.hpp"
#include "ztel/compactification.hpp"
#include "ztel/nullity.hpp"

namespace ztel {

// Flat "[section]" / "key = value" text. Values use JSON syntax (numbers,
// "strings", true/false, [arrays]); '#' starts a comment outside strings.
// Errors are ConfigError with the 1-based line number.
class ConfigFile {
 public:
  static ConfigFile parse(const std::string& text, const std::string& origin = "<config>");
  static ConfigFile load(const std::filesystem::path& path);

  bool has(const std::string& section, const std::string& key) const;
  const nlohmann::json& get(const std::string& section, const std::string& key) const;
  int line(const std::string& section, const std::string& key) const;
  std::vector<std::string> sections_with_prefix(const std::string& prefix) const;
  const std::string& origin() const { return origin_; }

 private:
  struct Entry {
    nlohmann::json value;
    int line = 0;
  };
  std::string origin_;
  std::vector<std::string> order_;
  std::map<std::string, std::map<std::string, Entry>> sections_;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::vector<std::vector<std::int64_t>> matrix;
  SlopeMode mode = SlopeMode::standard;
  double domain_step = 0.25;
  int eta_kmax = 64;
  int growth_radius = 10;
  std::vector<FamilySpec> families;
  std::vector<std::string> baseline_families;
  BaselineEmbedding baseline_embedding = BaselineEmbedding::straightened;
  std::string contrast_family;  // empty: no contrast verdict
  double min_contrast = 10.0;
  std::uint64_t seed = 1;
  int random_cases = 500;
  std::string out_dir = "out";

  Automorphism automorphism() const { return Automorphism::make(matrix); }
  const FamilySpec& family(const std::string& name) const;
};

// Validates the invariants: square matrix, step in (0, 1], ladders strictly
// increasing. NotUnimodular propagates unchanged.
ExperimentConfig parse_experiment(const ConfigFile& file);
ExperimentConfig load_experiment(const std::filesystem::path& path);

}  // namespace ztel
