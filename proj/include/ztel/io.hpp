#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ztel/algebra.hpp"
#include "ztel/coarse.hpp"
#include "ztel/compactification.hpp"
#include "ztel/nullity.hpp"
#include "ztel/telescope.hpp"

namespace ztel::io {

using nlohmann::json;

// Decimal with 12 significant digits; "inf"/"-inf"/"nan" for non-finite values.
std::string format_real(double v);
// The JSON value for v with the same 12-digit rounding (strings for non-finite).
json real(double v);

json to_json(const Automorphism& aut);
Automorphism automorphism_from_json(const json& j);
json to_json(const TelescopePoint& p);
TelescopePoint telescope_point_from_json(const json& j);
json to_json(const SampledFunction& f);
json to_json(const PsiSpec& spec);
json to_json(const ControlFunction& f);
json to_json(const BoundaryPoint& b);
json to_json(const DecayCurve& curve);
json to_json(const std::vector<FamilyVerdict>& verdicts);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const json& j);

// CSV writers; the first line is the header.
std::string growth_csv(const std::vector<std::uint64_t>& counts);
std::string growth_compare_csv(const std::vector<std::uint64_t>& counts, const std::vector<std::uint64_t>& direct);
std::string decay_csv(const DecayCurve& curve);
std::string eta_csv(const SampledFunction& eta);
std::string domain_csv(const Automorphism& aut, const FundamentalDomain& domain);

struct PlotSeries {
  std::string label;
  std::vector<double> xs;
  std::vector<double> ys;
};

// Line plot with a log-scaled x axis.
std::string svg_plot(const std::string& title, const std::string& ylabel, const std::vector<PlotSeries>& series);
std::vector<PlotSeries> plot_series(const DecayCurve& curve, const std::string& prefix = "");

}  // namespace ztel::io
