#include "ztel/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "ztel/checks.hpp"
#include "ztel/config.hpp"
#include "ztel/io.hpp"
#include "ztel/kernels.hpp"
#include "ztel/nullity.hpp"
#include "ztel/pipeline.hpp"
#include "ztel_demo_config.hpp"

namespace ztel {

namespace fs = std::filesystem;
using io::json;
using io::real;

const char* embedded_heisenberg_config() { return kEmbeddedHeisenbergConfig; }

namespace {

struct Options {
  std::string config;
  std::string out;
  bool plot = false;
  std::optional<std::uint64_t> seed;
};

struct Context {
  ExperimentConfig cfg;
  fs::path out;
  bool plot = false;
  std::ostream& log;
};

Context make_context(const ExperimentConfig& cfg, const Options& opt, std::ostream& log) {
  Context ctx{cfg, opt.out.empty() ? fs::path(cfg.out_dir) : fs::path(opt.out), opt.plot, log};
  if (opt.seed) ctx.cfg.seed = *opt.seed;
  fs::create_directories(ctx.out);
  return ctx;
}

json reports_json(const std::vector<PropertyReport>& reports) {
  json out = json::array();
  for (const auto& r : reports)
    out.push_back({{"name", r.name}, {"cases", r.cases}, {"max_error", real(r.max_error)}, {"pass", r.pass}});
  return out;
}

void log_reports(std::ostream& log, const std::string& title, const std::vector<PropertyReport>& reports) {
  for (const auto& r : reports)
    log << title << ' ' << std::left << std::setw(24) << r.name << (r.pass ? " ok   " : " FAIL ") << "cases=" << r.cases
        << " max_error=" << io::format_real(r.max_error) << '\n';
}

int cmd_group(const Context& ctx) {
  const auto aut = ctx.cfg.automorphism();
  const auto counts = growth_series(aut, ctx.cfg.growth_radius);
  const auto direct = growth_series(Automorphism::identity(aut.n()), ctx.cfg.growth_radius);
  io::write_json(ctx.out / "automorphism.json", io::to_json(aut));
  io::write_text(ctx.out / "growth.csv", io::growth_csv(counts));
  io::write_text(ctx.out / "growth_compare.csv", io::growth_compare_csv(counts, direct));
  if (ctx.plot) {
    io::PlotSeries a{ctx.cfg.name, {}, {}}, b{"direct product", {}, {}};
    for (std::size_t r = 1; r < counts.size(); ++r) {
      a.xs.push_back(static_cast<double>(r));
      a.ys.push_back(static_cast<double>(counts[r]));
      b.xs.push_back(static_cast<double>(r));
      b.ys.push_back(static_cast<double>(direct[r]));
    }
    io::write_text(ctx.out / "growth.svg", io::svg_plot("sphere counts", "count", {a, b}));
  }
  ctx.log << "r count direct_count\n";
  for (std::size_t r = 0; r < counts.size(); ++r) ctx.log << r << ' ' << counts[r] << ' ' << direct[r] << '\n';
  return kExitOk;
}

int cmd_telescope(const Context& ctx) {
  const auto aut = ctx.cfg.automorphism();
  const auto domain = fundamental_domain(aut, ctx.cfg.domain_step);
  io::write_text(ctx.out / "domain.csv", io::domain_csv(aut, domain));
  const auto reports = telescope_properties(aut, ctx.cfg.seed, ctx.cfg.random_cases, 10000);
  io::write_json(ctx.out / "telescope.json",
                 {{"samples", domain.samples.size()}, {"seed", ctx.cfg.seed}, {"checks", reports_json(reports)}});
  log_reports(ctx.log, "telescope", reports);
  return all_pass(reports) ? kExitOk : kExitVerdict;
}

json nullity_json(const Fixture& fx, const DecayCurve& curve, const std::vector<FamilyVerdict>& verdicts) {
  return {{"group", io::to_json(fx.aut)},
          {"mode", to_string(fx.spec.mode())},
          {"curve", io::to_json(curve)},
          {"verdicts", io::to_json(verdicts)}};
}

int cmd_nullity(const Context& ctx) {
  const Fixture fx = make_fixture(ctx.cfg);
  io::write_text(ctx.out / "eta.csv", io::eta_csv(fx.eta));
  io::write_json(ctx.out / "psi.json", io::to_json(fx.spec));
  const auto curve = decay_experiment(fx.spec, fx.aut, fx.domain, ctx.cfg.families);
  const auto verdicts = judge(curve, ctx.cfg.families);
  io::write_text(ctx.out / "decay.csv", io::decay_csv(curve));
  io::write_json(ctx.out / "verdict.json", nullity_json(fx, curve, verdicts));
  if (ctx.plot)
    io::write_text(ctx.out / "decay.svg",
                   io::svg_plot(ctx.cfg.name + ": smallness of translates", "delta", io::plot_series(curve)));
  bool ok = true;
  for (const auto& v : verdicts) {
    ctx.log << "nullity " << std::left << std::setw(12) << v.family << (v.pass ? " ok   " : " FAIL ")
            << "spearman=" << io::format_real(v.spearman) << " decreasing=" << v.strictly_decreasing
            << " final=" << io::format_real(v.final_delta) << " threshold=" << io::format_real(v.threshold) << '\n';
    ok = ok && v.pass;
  }
  return ok ? kExitOk : kExitVerdict;
}

std::vector<FamilySpec> baseline_families(const ExperimentConfig& cfg) {
  std::vector<FamilySpec> out;
  for (const auto& name : cfg.baseline_families) out.push_back(cfg.family(name));
  return out;
}

struct BaselineResult {
  DecayCurve slope;
  DecayCurve euclid;
  json contrast;
  bool ok = true;
};

BaselineResult run_baseline(const Context& ctx, const Fixture& fx) {
  const auto fams = baseline_families(ctx.cfg);
  BaselineResult res;
  res.slope = decay_experiment(fx.spec, fx.aut, fx.domain, fams);
  res.euclid = euclidean_baseline(fx.aut, fx.domain, fams, ctx.cfg.baseline_embedding);
  res.contrast = json::object();
  if (!ctx.cfg.contrast_family.empty()) {
    const double s = res.slope.family(ctx.cfg.contrast_family).back().delta;
    const double e = res.euclid.family(ctx.cfg.contrast_family).back().delta;
    res.ok = e > ctx.cfg.min_contrast * s;
    res.contrast = {{"family", ctx.cfg.contrast_family}, {"slope_final", real(s)},   {"euclid_final", real(e)},
                    {"ratio", real(e / s)},                {"min_ratio", real(ctx.cfg.min_contrast)}, {"pass", res.ok}};
    ctx.log << "baseline contrast " << ctx.cfg.contrast_family << ": euclid=" << io::format_real(e)
            << " slope=" << io::format_real(s) << " ratio=" << io::format_real(e / s) << (res.ok ? " ok" : " FAIL")
            << '\n';
  }
  return res;
}

int cmd_baseline(const Context& ctx) {
  const Fixture fx = make_fixture(ctx.cfg);
  const auto res = run_baseline(ctx, fx);
  io::write_text(ctx.out / "baseline.csv", io::decay_csv(res.euclid));
  io::write_text(ctx.out / "baseline_slope.csv", io::decay_csv(res.slope));
  io::write_json(ctx.out / "baseline.json",
                 {{"embedding", ctx.cfg.baseline_embedding == BaselineEmbedding::straightened ? "straightened"
                                                                                               : "straightline"},
                  {"euclid", io::to_json(res.euclid)},
                  {"slope", io::to_json(res.slope)},
                  {"contrast", res.contrast}});
  if (ctx.plot) {
    auto series = io::plot_series(res.slope, "slope ");
    for (auto& s : io::plot_series(res.euclid, "euclid ")) series.push_back(std::move(s));
    io::write_text(ctx.out / "baseline.svg", io::svg_plot(ctx.cfg.name + ": slope vs euclidean", "delta", series));
  }
  for (const auto& e : res.euclid.entries)
    ctx.log << "baseline " << e.family << ' ' << io::format_real(e.scale) << ' ' << io::format_real(e.delta) << '\n';
  return res.ok ? kExitOk : kExitVerdict;
}

int cmd_coarse(const Context& ctx) {
  const auto aut = ctx.cfg.automorphism();
  const auto rep = coarse_report(aut, ctx.cfg.seed);
  json limits = json::array();
  for (double d : rep.limit_deviations) limits.push_back(real(d));
  io::write_json(ctx.out / "coarse.json", {{"K", real(rep.qi.K)},
                                           {"eps", real(rep.qi.eps)},
                                           {"checks", reports_json(rep.properties)},
                                           {"limit_deviations", limits},
                                           {"psi_inverse", io::to_json(rep.psi_inverse)}});
  log_reports(ctx.log, "coarse", rep.properties);
  // The +1 bound is reported only; the +2 bound is the one the construction guarantees.
  bool ok = true;
  for (const auto& r : rep.properties)
    if (r.name != "log3_plus_one_bound") ok = ok && r.pass;
  return ok ? kExitOk : kExitVerdict;
}

int cmd_boundary(const Context& ctx) {
  const Fixture fx = make_fixture(ctx.cfg);
  const auto reports = boundary_properties(fx.aut, ctx.cfg.seed, 200);
  log_reports(ctx.log, "boundary", reports);
  bool ok = all_pass(reports);
  json seqs = json::array();
  std::ostringstream csv;
  csv << "sequence,index,input_deviation,deviation\n";
  for (const auto& s : prescribed_sequences(fx.spec, fx.aut)) {
    const double own = sequence_deviation(fx.spec, fx.aut, s.points, s.limit);
    double dev = kInf;
    try {
      dev = convergence_check(fx.spec, fx.aut, s.a, s.points, s.limit);
    } catch (const NotConverging& e) {
      ctx.log << "boundary " << s.name << ": " << e.what() << '\n';
    }
    // Per-point deviations for the CSV.
    const auto target = boundary_act(fx.aut, s.a, s.limit);
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const FarTelescopePoint p{s.points[i].x, std::floor(s.points[i].r)};
      const double di = chart_distance(chart(fx.spec, v_map(fx.aut, p)), s.limit);
      const double da = chart_distance(chart(fx.spec, v_map(fx.aut, act(fx.aut, s.a, p))), target);
      csv << s.name << ',' << i << ',' << io::format_real(di) << ',' << io::format_real(da) << '\n';
    }
    const bool pass = dev < kConvergenceTolerance;
    ok = ok && pass;
    seqs.push_back({{"name", s.name},
                    {"element", s.a.to_string()},
                    {"limit", io::to_json(s.limit)},
                    {"image", io::to_json(target)},
                    {"length", s.points.size()},
                    {"input_deviation", real(own)},
                    {"deviation", real(dev)},
                    {"pass", pass}});
    ctx.log << "boundary sequence " << std::left << std::setw(12) << s.name << (pass ? " ok   " : " FAIL ")
            << "deviation=" << io::format_real(dev) << '\n';
  }
  io::write_text(ctx.out / "boundary.csv", csv.str());
  io::write_json(ctx.out / "boundary.json", {{"checks", reports_json(reports)}, {"sequences", seqs}});
  return ok ? kExitOk : kExitVerdict;
}

int cmd_demo(const Context& ctx) {
  const Fixture fx = make_fixture(ctx.cfg);
  const auto res = run_baseline(ctx, fx);
  // The straight-line picture fails on t^s y^s already before straightening.
  FamilySpec diag{"diagonal", FamilyKind::diagonal, ctx.cfg.matrix.size() > 1 ? 1 : 0, 0, {4, 8, 16, 32, 64}};
  const auto straight = euclidean_baseline(fx.aut, fx.domain, {diag}, BaselineEmbedding::straightline);
  io::write_text(ctx.out / "demo_slope.csv", io::decay_csv(res.slope));
  io::write_text(ctx.out / "demo_euclid.csv", io::decay_csv(res.euclid));
  io::write_text(ctx.out / "demo_straightline.csv", io::decay_csv(straight));
  const std::string fam = ctx.cfg.contrast_family.empty() ? ctx.cfg.baseline_families.front() : ctx.cfg.contrast_family;
  const double s = res.slope.family(fam).back().delta;
  const double e = res.euclid.family(fam).back().delta;
  const bool ok = s < e && res.ok;
  io::write_json(ctx.out / "demo_summary.json", {{"family", fam},
                                                 {"slope_curve", io::to_json(res.slope)},
                                                 {"euclid_curve", io::to_json(res.euclid)},
                                                 {"straightline_curve", io::to_json(straight)},
                                                 {"slope_final", real(s)},
                                                 {"euclid_final", real(e)},
                                                 {"contrast", res.contrast},
                                                 {"pass", ok}});
  if (ctx.plot) {
    auto series = io::plot_series(res.slope, "slope ");
    for (auto& x : io::plot_series(res.euclid, "euclid ")) series.push_back(std::move(x));
    for (auto& x : io::plot_series(straight, "straight-line ")) series.push_back(std::move(x));
    io::write_text(ctx.out / "demo.svg", io::svg_plot("Heisenberg: slope vs euclidean smallness", "delta", series));
  }
  ctx.log << "demo-heisenberg " << fam << ": slope final=" << io::format_real(s) << " euclid final=" << io::format_real(e)
          << (ok ? " ok" : " FAIL") << '\n';
  return ok ? kExitOk : kExitVerdict;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ztel: computational lab for Z^n semidirect Z, its telescope and boundary"};
  app.require_subcommand(1);
  Options opt;
  using Handler = int (*)(const Context&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const std::string& name, const std::string& help, Handler h, bool needs_config) {
    auto* sub = app.add_subcommand(name, help);
    if (needs_config) sub->add_option("config", opt.config, "experiment config file")->required();
    sub->add_option("--out", opt.out, "output directory (overrides [run] out)");
    sub->add_flag("--plot", opt.plot, "also write SVG plots");
    sub->add_option("--seed", opt.seed, "random seed (overrides [run] seed)");
    commands.emplace_back(sub, h);
  };
  add("group", "growth series and direct-product comparison", cmd_group, true);
  add("telescope", "fundamental domain and telescope property checks", cmd_telescope, true);
  add("nullity", "decay experiment for translated fundamental domains", cmd_nullity, true);
  add("baseline", "euclidean baseline against the slope compactification", cmd_baseline, true);
  add("coarse", "QI constants, star functions and limit checks", cmd_coarse, true);
  add("boundary", "boundary action checks and convergence sequences", cmd_boundary, true);
  add("demo-heisenberg", "the Heisenberg contrast with the committed config", cmd_demo, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    kernels::configure_threads_from_env();
    for (const auto& [sub, handler] : commands) {
      if (!sub->parsed()) continue;
      const ExperimentConfig cfg = sub->get_name() == "demo-heisenberg"
                                       ? parse_experiment(ConfigFile::parse(kEmbeddedHeisenbergConfig, "heisenberg.toml"))
                                       : load_experiment(opt.config);
      return handler(make_context(cfg, opt, out));
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NotUnimodular& e) {
    err << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerdict;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerdict;
  }
  return kExitConfig;
}

}  // namespace ztel
