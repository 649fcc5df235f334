#include "ztel/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ztel::io {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json real(double v) {
  if (!std::isfinite(v)) return format_real(v);
  return std::stod(format_real(v));
}

json to_json(const Automorphism& aut) { return {{"n", aut.n()}, {"matrix", aut.rows()}}; }

Automorphism automorphism_from_json(const json& j) {
  try {
    const auto rows = j.at("matrix").get<std::vector<std::vector<std::int64_t>>>();
    if (j.contains("n") && j.at("n").get<std::size_t>() != rows.size())
      throw ConfigError("automorphism: n does not match the matrix size");
    return Automorphism::make(rows);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("automorphism: ") + e.what());
  }
}

json to_json(const TelescopePoint& p) {
  json x = json::array();
  for (double v : p.x) x.push_back(real(v));
  return {{"x", x}, {"r", real(p.r)}};
}

TelescopePoint telescope_point_from_json(const json& j) {
  try {
    return {j.at("x").get<Vec>(), j.at("r").get<double>()};
  } catch (const json::exception& e) {
    throw ConfigError(std::string("telescope point: ") + e.what());
  }
}

json to_json(const SampledFunction& f) {
  json values = json::array();
  for (double v : f.values) values.push_back(real(v));
  return {{"step", real(f.step)}, {"values", values}};
}

json to_json(const PsiSpec& spec) {
  json x0 = json::array();
  for (double v : spec.x0()) x0.push_back(real(v));
  return {{"mode", to_string(spec.mode())},
          {"x0", x0},
          {"lambda", to_json(spec.lambda())},
          {"eta", to_json(spec.eta())},
          {"envelope", to_json(spec.envelope())}};
}

json to_json(const ControlFunction& f) {
  json pts = json::array();
  for (std::size_t i = 0; i < f.xs().size(); ++i) pts.push_back({real(f.xs()[i]), real(f.ys()[i])});
  return {{"breakpoints", pts}};
}

json to_json(const BoundaryPoint& b) {
  switch (b.kind) {
    case BoundaryPoint::Kind::plus_pole:
      return {{"pole", "+inf"}};
    case BoundaryPoint::Kind::minus_pole:
      return {{"pole", "-inf"}};
    case BoundaryPoint::Kind::finite:
      break;
  }
  json z = json::array();
  for (double v : b.z) z.push_back(real(v));
  return {{"z", z}, {"mu", real(b.mu)}};
}

json to_json(const DecayCurve& curve) {
  json out = json::array();
  for (const auto& e : curve.entries)
    out.push_back({{"family", e.family}, {"scale", real(e.scale)}, {"delta", real(e.delta)}});
  return out;
}

json to_json(const std::vector<FamilyVerdict>& verdicts) {
  json out = json::array();
  for (const auto& v : verdicts)
    out.push_back({{"family", v.family},
                   {"spearman", real(v.spearman)},
                   {"strictly_decreasing", v.strictly_decreasing},
                   {"final_delta", real(v.final_delta)},
                   {"threshold", real(v.threshold)},
                   {"pass", v.pass}});
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

std::string growth_csv(const std::vector<std::uint64_t>& counts) {
  std::ostringstream os;
  os << "r,count\n";
  for (std::size_t r = 0; r < counts.size(); ++r) os << r << ',' << counts[r] << '\n';
  return os.str();
}

std::string growth_compare_csv(const std::vector<std::uint64_t>& counts, const std::vector<std::uint64_t>& direct) {
  std::ostringstream os;
  os << "r,count,direct_count\n";
  for (std::size_t r = 0; r < std::min(counts.size(), direct.size()); ++r)
    os << r << ',' << counts[r] << ',' << direct[r] << '\n';
  return os.str();
}

std::string decay_csv(const DecayCurve& curve) {
  std::ostringstream os;
  os << "family,scale,delta\n";
  for (const auto& e : curve.entries) os << e.family << ',' << format_real(e.scale) << ',' << format_real(e.delta) << '\n';
  return os.str();
}

std::string eta_csv(const SampledFunction& eta) {
  std::ostringstream os;
  os << "k,eta\n";
  for (std::size_t k = 0; k < eta.values.size(); ++k)
    os << format_real(eta.step * static_cast<double>(k)) << ',' << format_real(eta.values[k]) << '\n';
  return os.str();
}

std::string domain_csv(const Automorphism& aut, const FundamentalDomain& domain) {
  std::ostringstream os;
  const int n = aut.n();
  for (int i = 0; i < n; ++i) os << 'x' << i << ',';
  os << 'r';
  for (int i = 0; i < n; ++i) os << ",v" << i;
  os << '\n';
  for (const auto& s : domain.samples) {
    for (double v : s.x) os << format_real(v) << ',';
    os << format_real(s.r);
    for (double v : v_map(aut, s).x) os << ',' << format_real(v);
    os << '\n';
  }
  return os.str();
}

namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string svg_plot(const std::string& title, const std::string& ylabel, const std::vector<PlotSeries>& series) {
  constexpr double W = 720, H = 440, L = 70, R = 170, T = 40, B = 50;
  double xmin = kInf, xmax = -kInf, ymin = 0.0, ymax = -kInf;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (!(s.xs[i] > 0.0) || !std::isfinite(s.ys[i])) continue;
      xmin = std::min(xmin, std::log10(s.xs[i]));
      xmax = std::max(xmax, std::log10(s.xs[i]));
      ymax = std::max(ymax, s.ys[i]);
    }
  if (!(xmax > xmin)) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (!(ymax > ymin)) ymax = 1.0;
  auto px = [&](double x) { return L + (std::log10(x) - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape_xml(title)
     << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(std::ceil(xmin)); d <= static_cast<int>(std::floor(xmax)); ++d) {
    const double x = px(std::pow(10.0, d));
    os << "<line x1=\"" << x << "\" y1=\"" << H - B << "\" x2=\"" << x << "\" y2=\"" << H - B + 5
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << x << "\" y=\"" << H - B + 20 << "\" text-anchor=\"middle\" font-size=\"12\">1e" << d
       << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double y = ymin + (ymax - ymin) * i / 4.0;
    os << "<text x=\"" << L - 8 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\" font-size=\"12\">"
       << format_real(std::round(y * 1000.0) / 1000.0) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10
     << "\" text-anchor=\"middle\" font-size=\"13\">scale (log)</text>\n";
  os << "<text x=\"16\" y=\"" << H / 2 << "\" transform=\"rotate(-90 16 " << H / 2
     << ")\" text-anchor=\"middle\" font-size=\"13\">" << escape_xml(ylabel) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = colors[k % (sizeof colors / sizeof *colors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.xs.size(); ++i)
      if (s.xs[i] > 0.0 && std::isfinite(s.ys[i])) os << px(s.xs[i]) << ',' << py(s.ys[i]) << ' ';
    os << "\"/>\n";
    const double ly = T + 18.0 * static_cast<double>(k + 1);
    os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 30 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << W - R + 36 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">" << escape_xml(s.label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<PlotSeries> plot_series(const DecayCurve& curve, const std::string& prefix) {
  std::vector<PlotSeries> out;
  for (const auto& name : curve.family_names()) {
    PlotSeries s{prefix + name, {}, {}};
    for (const auto& e : curve.family(name)) {
      s.xs.push_back(e.scale);
      s.ys.push_back(e.delta);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ztel::io
