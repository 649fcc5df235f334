#include "ztel/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ztel {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text, const std::string& origin) {
  ConfigFile cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string raw, section;
  int lineno = 0;
  cfg.sections_[""];
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    // Arrays may span lines: keep reading until the brackets balance.
    if (line.front() == '[' && line.find('=') == std::string::npos) {
      if (line.back() != ']') fail(origin, lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(origin, lineno, "empty section name");
      if (cfg.sections_.contains(section) && section != "") fail(origin, lineno, "duplicate section [" + section + "]");
      cfg.sections_[section];
      cfg.order_.push_back(section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, lineno, "missing key");
    const int start = lineno;
    auto depth = [](const std::string& v) {
      int d = 0;
      bool in_string = false;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == '"' && (i == 0 || v[i - 1] != '\\')) in_string = !in_string;
        if (in_string) continue;
        if (v[i] == '[') ++d;
        if (v[i] == ']') --d;
      }
      return d;
    };
    while (depth(value) > 0 && std::getline(in, raw)) {
      ++lineno;
      value += " " + trim(strip_comment(raw));
    }
    if (value.empty()) fail(origin, start, "missing value for '" + key + "'");
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error&) {
      fail(origin, start, "cannot parse value for '" + key + "': " + value);
    }
    auto& sec = cfg.sections_[section];
    if (sec.contains(key)) fail(origin, start, "duplicate key '" + key + "'");
    sec[key] = {std::move(parsed), start};
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.contains(key);
}

const json& ConfigFile::get(const std::string& section, const std::string& key) const {
  if (!has(section, key)) throw ConfigError(origin_ + ": missing key '" + key + "' in [" + section + "]");
  return sections_.at(section).at(key).value;
}

int ConfigFile::line(const std::string& section, const std::string& key) const {
  return has(section, key) ? sections_.at(section).at(key).line : 0;
}

std::vector<std::string> ConfigFile::sections_with_prefix(const std::string& prefix) const {
  std::vector<std::string> out;
  for (const auto& s : order_)
    if (s.starts_with(prefix)) out.push_back(s);
  return out;
}

const FamilySpec& ExperimentConfig::family(const std::string& name) const {
  for (const auto& f : families)
    if (f.name == name) return f;
  throw ConfigError("unknown family '" + name + "'");
}

namespace {

template <typename T>
T read(const ConfigFile& file, const std::string& section, const std::string& key) {
  try {
    return file.get(section, key).get<T>();
  } catch (const json::exception&) {
    fail(file.origin(), file.line(section, key), "wrong type for '" + key + "'");
  }
}

template <typename T>
T read_or(const ConfigFile& file, const std::string& section, const std::string& key, T fallback) {
  return file.has(section, key) ? read<T>(file, section, key) : fallback;
}

}  // namespace

ExperimentConfig parse_experiment(const ConfigFile& file) {
  ExperimentConfig cfg;
  cfg.name = read_or<std::string>(file, "group", "name", cfg.name);
  cfg.matrix = read<std::vector<std::vector<std::int64_t>>>(file, "group", "matrix");
  for (const auto& row : cfg.matrix)
    if (row.size() != cfg.matrix.size() || cfg.matrix.empty())
      fail(file.origin(), file.line("group", "matrix"), "matrix must be square and nonempty");
  try {
    (void)cfg.automorphism();
  } catch (const NotUnimodular& e) {
    throw NotUnimodular(file.origin() + ":" + std::to_string(file.line("group", "matrix")) + ": " + e.what());
  }

  try {
    cfg.mode = parse_slope_mode(read_or<std::string>(file, "compactification", "mode", "standard"));
  } catch (const ConfigError& e) {
    fail(file.origin(), file.line("compactification", "mode"), e.what());
  }
  cfg.domain_step = read_or<double>(file, "compactification", "domain_step", cfg.domain_step);
  if (!(cfg.domain_step > 0.0 && cfg.domain_step <= 1.0))
    fail(file.origin(), file.line("compactification", "domain_step"), "domain_step must lie in (0, 1]");
  cfg.eta_kmax = read_or<int>(file, "compactification", "eta_kmax", cfg.eta_kmax);
  if (cfg.eta_kmax < 1) fail(file.origin(), file.line("compactification", "eta_kmax"), "eta_kmax must be >= 1");
  cfg.growth_radius = read_or<int>(file, "growth", "max_radius", cfg.growth_radius);
  if (cfg.growth_radius < 0) fail(file.origin(), file.line("growth", "max_radius"), "max_radius must be >= 0");

  for (const auto& section : file.sections_with_prefix("family.")) {
    FamilySpec fam;
    fam.name = section.substr(7);
    try {
      fam.kind = parse_family_kind(read<std::string>(file, section, "kind"));
    } catch (const ConfigError& e) {
      fail(file.origin(), file.line(section, "kind"), e.what());
    }
    fam.axis = read_or<int>(file, section, "axis", 0);
    if (fam.axis < 0 || fam.axis >= static_cast<int>(cfg.matrix.size()))
      fail(file.origin(), file.line(section, "axis"), "axis out of range");
    fam.k0 = read_or<long long>(file, section, "k0", 0);
    fam.ladder = read<std::vector<double>>(file, section, "ladder");
    if (fam.ladder.empty()) fail(file.origin(), file.line(section, "ladder"), "ladder is empty");
    for (std::size_t i = 0; i < fam.ladder.size(); ++i) {
      if (i > 0 && !(fam.ladder[i] > fam.ladder[i - 1]))
        fail(file.origin(), file.line(section, "ladder"), "ladder must be strictly increasing");
      if (fam.ladder[i] != std::floor(fam.ladder[i]) || fam.ladder[i] < 0.0)
        fail(file.origin(), file.line(section, "ladder"), "ladder entries must be nonnegative integers");
    }
    fam.threshold = read_or<double>(file, section, "threshold", kInf);
    cfg.families.push_back(std::move(fam));
  }

  cfg.baseline_families = read_or<std::vector<std::string>>(file, "baseline", "families", {});
  for (const auto& name : cfg.baseline_families) {
    const bool known = std::any_of(cfg.families.begin(), cfg.families.end(),
                                   [&](const FamilySpec& f) { return f.name == name; });
    if (!known) fail(file.origin(), file.line("baseline", "families"), "unknown family '" + name + "'");
  }
  const auto embedding = read_or<std::string>(file, "baseline", "embedding", "straightened");
  if (embedding == "straightened")
    cfg.baseline_embedding = BaselineEmbedding::straightened;
  else if (embedding == "straightline")
    cfg.baseline_embedding = BaselineEmbedding::straightline;
  else
    fail(file.origin(), file.line("baseline", "embedding"), "embedding must be straightened or straightline");

  cfg.contrast_family = read_or<std::string>(file, "baseline", "contrast_family", "");
  if (!cfg.contrast_family.empty() &&
      std::find(cfg.baseline_families.begin(), cfg.baseline_families.end(), cfg.contrast_family) ==
          cfg.baseline_families.end())
    fail(file.origin(), file.line("baseline", "contrast_family"), "contrast_family must be a baseline family");
  cfg.min_contrast = read_or<double>(file, "baseline", "min_contrast", cfg.min_contrast);

  cfg.seed = read_or<std::uint64_t>(file, "run", "seed", cfg.seed);
  cfg.random_cases = read_or<int>(file, "run", "random_cases", cfg.random_cases);
  if (cfg.random_cases < 1) fail(file.origin(), file.line("run", "random_cases"), "random_cases must be >= 1");
  cfg.out_dir = read_or<std::string>(file, "run", "out", cfg.out_dir);
  return cfg;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) { return parse_experiment(ConfigFile::load(path)); }

}  // namespace ztel
