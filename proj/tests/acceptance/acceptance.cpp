// One PASS/FAIL line per acceptance criterion, with timing against its budget.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ztel/boundary_action.hpp"
#include "ztel/checks.hpp"
#include "ztel/config.hpp"
#include "ztel/kernels.hpp"
#include "ztel/nullity.hpp"
#include "ztel/pipeline.hpp"

using namespace ztel;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

ExperimentConfig fixture_config(const std::string& name) {
  return load_experiment(std::filesystem::path(ZTEL_SOURCE_DIR) / "configs" / (name + ".toml"));
}

void fold(Outcome& o, const std::vector<PropertyReport>& reports, const std::string& prefix) {
  for (const auto& r : reports) {
    if (!r.pass) {
      o.pass = false;
      o.detail += prefix + r.name + " failed (max_error " + fmt(r.max_error) + ") ";
    }
  }
}

Outcome algebra_suite() {
  Outcome o;
  for (const auto& [name, aut] : {std::pair{"heisenberg", heisenberg()}, std::pair{"sol", sol()}})
    fold(o, algebra_properties(aut, 20261016, 1000), std::string(name) + ":");
  if (o.pass) o.detail = "1000 cases per fixture, all exact";
  return o;
}

Outcome telescope_suite() {
  Outcome o;
  double worst = 0.0;
  for (const auto& [name, aut] : {std::pair{"heisenberg", heisenberg()}, std::pair{"sol", sol()}}) {
    const auto reports = telescope_properties(aut, 20261016, 500, 10000);
    for (const auto& r : reports) worst = std::max(worst, r.max_error);
    fold(o, reports, std::string(name) + ":");
  }
  if (o.pass) o.detail = "500 cases, 1e4 round trips, max error " + fmt(worst);
  return o;
}

Outcome psi_suite() {
  Outcome o;
  for (const auto& [name, aut] : {std::pair{"heisenberg", heisenberg()}, std::pair{"sol", sol()}}) {
    const auto fx = make_fixture(aut, SlopeMode::standard, 0.25, 64);
    double worst_triple = kInf, worst_dom = kInf;
    for (int i = 0; i < 200; ++i) {
      const double s = 64.0 * i / 199.0;
      worst_triple = std::min(worst_triple, fx.spec.log_psi(s + 1) - fx.spec.log_psi(s) - std::log(3.0));
      worst_dom = std::min(worst_dom, fx.spec.log_psi(s) -
                                          std::log(std::max(fx.spec.eta()(s), fx.spec.lambda()(s))));
    }
    const Vec x0(2, 0.0);
    const bool poles = p_value(fx.spec, x0) == 0.0 && slope(fx.spec, ProductPoint{x0, 5}) == kInf &&
                       slope(fx.spec, ProductPoint{x0, -5}) == -kInf && slope(fx.spec, ProductPoint{x0, 0}) == 0.0;
    const bool ok = worst_triple >= -1e-12 && worst_dom >= -1e-12 && poles;
    o.pass = o.pass && ok;
    o.detail += std::string(name) + ": min log-margin triple " + fmt(worst_triple) + ", dominate " +
                fmt(worst_dom) + (poles ? "" : ", pole cases wrong") + "; ";
  }
  return o;
}

Outcome box_fit_numerics() {
  Outcome o;
  const auto fx = make_fixture(heisenberg(), SlopeMode::standard, 0.25, 64);
  int k0 = 1;
  while (k0 / std::log(k0 + 2.0) <= 10.0) ++k0;
  o.detail = "pole fits (k0=" + std::to_string(k0) + "):";
  for (int k : {k0, 50, 64}) {
    const double eta = fx.eta(k);
    const auto box = box_samples({eta, 0.0}, eta, k);
    const auto fit = fits_in_basic(fx.spec, box);
    const bool ok = fit.candidate == FitResult::Candidate::plus_pole && fit.delta < 0.1;
    o.pass = o.pass && ok;
    o.detail += " k=" + std::to_string(k) + " " + fmt(fit.delta);
  }
  o.detail += "; finite fits:";
  const Vec dir{1 / std::sqrt(5.0), 2 / std::sqrt(5.0)};
  double prev = kInf;
  for (double d : {1e2, 1e4, 1e8, 1e16, 1e32}) {
    const auto box = box_samples({d * dir[0], d * dir[1]}, fx.eta(0), 0);
    const auto fit = fits_in_basic(fx.spec, box);
    const bool ok = fit.candidate == FitResult::Candidate::finite && fit.delta < prev;
    o.pass = o.pass && ok;
    prev = fit.delta;
    o.detail += " " + fmt(fit.delta);
  }
  return o;
}

Outcome nullity_decay() {
  Outcome o;
  for (const char* name : {"heisenberg", "sol"}) {
    const auto cfg = fixture_config(name);
    const auto fx = make_fixture(cfg);
    const auto curve = decay_experiment(fx.spec, fx.aut, fx.domain, cfg.families);
    for (const auto& v : judge(curve, cfg.families)) {
      const bool is_t = cfg.family(v.family).kind == FamilyKind::t_power;
      const bool reached = !is_t || (cfg.family(v.family).ladder.back() <= 64 && v.final_delta < 0.05);
      if (!v.pass || !reached) {
        o.pass = false;
        o.detail += std::string(name) + "/" + v.family + " final " + fmt(v.final_delta) + " (threshold " +
                    fmt(is_t ? 0.05 : v.threshold) + (v.strictly_decreasing ? "" : ", not decreasing") + ") ";
      }
      if (is_t && o.pass) o.detail += std::string(name) + " t(64)=" + fmt(v.final_delta) + " ";
    }
  }
  return o;
}

Outcome euclidean_contrast() {
  const auto cfg = fixture_config("heisenberg");
  const auto fx = make_fixture(cfg);
  const std::vector<FamilySpec> fam{cfg.family("t")};
  const double slope_d = decay_experiment(fx.spec, fx.aut, fx.domain, fam).entries.back().delta;
  const double euclid = euclidean_baseline(fx.aut, fx.domain, fam, cfg.baseline_embedding).entries.back().delta;
  return {euclid > 10.0 * slope_d, "k=64: euclidean " + fmt(euclid) + ", slope " + fmt(slope_d) + ", ratio " +
                                       fmt(euclid / slope_d)};
}

Outcome contraction_rays() {
  Outcome o;
  std::mt19937_64 rng(20261016);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> mud(-4.0, 4.0);
  double worst_chart = 0.0;
  int outside = 0;
  for (const auto& aut : {heisenberg(), sol()}) {
    const auto fx = make_fixture(aut, SlopeMode::standard, 0.25, 64);
    for (int i = 0; i < 20; ++i) {
      const auto target = BoundaryPoint::make({nd(rng), nd(rng)}, mud(rng));
      const double mu = target.mu, m = std::abs(mu), c = std::sqrt(mu * mu + 1.0);
      for (double t : {10.0, 100.0, 1000.0}) {
        // The bracket is stated for mu >= 0; negative slopes use its mirror image.
        const double lo = (m * t - 2 * c) / (t + 3 * c), hi = (m * t + 3 * c) / (t - 2 * c);
        const double got = slope(fx.spec, contraction_ray(fx.spec, target, t));
        const double g = mu >= 0 ? got : -got;
        if (!(g > lo && g < hi)) ++outside;
      }
      worst_chart = std::max(worst_chart, chart_distance(chart(fx.spec, contraction_ray(fx.spec, target, 1000)), target));
    }
  }
  o.pass = outside == 0 && worst_chart < 0.05;
  o.detail = "20 targets per fixture, " + std::to_string(outside) + " bracket misses, max chart distance at t=1000 " +
             fmt(worst_chart);
  return o;
}

Outcome coarse_suite() {
  Outcome o;
  const auto rep = coarse_report(heisenberg(), 20261016);
  for (const auto& r : rep.properties) {
    if (r.name == "qi_inequalities" || r.name == "normalize_controls") continue;
    o.detail += r.name + (r.pass ? " ok" : " FAIL") + "(" + fmt(r.max_error) + ") ";
    if (r.name != "log3_plus_two_bound") o.pass = o.pass && r.pass;
  }
  o.detail += "limit deviations";
  for (double d : rep.limit_deviations) o.detail += " " + fmt(d);
  return o;
}

Outcome boundary_suite() {
  Outcome o;
  for (const auto& [name, aut] : {std::pair{"heisenberg", heisenberg()}, std::pair{"sol", sol()}}) {
    fold(o, boundary_properties(aut, 20261016, 200), std::string(name) + ":");
    const auto fx = make_fixture(aut, SlopeMode::standard, 0.25, 64);
    o.detail += std::string(name) + " sequences:";
    for (const auto& s : prescribed_sequences(fx.spec, aut)) {
      double dev = kInf;
      try {
        dev = convergence_check(fx.spec, aut, s.a, s.points, s.limit);
      } catch (const NotConverging&) {
      }
      o.pass = o.pass && dev < kConvergenceTolerance;
      o.detail += " " + s.name + "=" + fmt(dev);
    }
    o.detail += "; ";
  }
  return o;
}

Outcome growth_comparison() {
  const auto h = growth_series(heisenberg(), 10);
  const auto z = growth_series(Automorphism::identity(2), 10);
  Outcome o;
  for (int r = 5; r <= 10; ++r) {
    const auto i = static_cast<std::size_t>(r);
    o.pass = o.pass && h[i] > z[i];
    o.detail += "r=" + std::to_string(r) + ":" + std::to_string(h[i]) + ">" + std::to_string(z[i]) + " ";
  }
  return o;
}

}  // namespace

int main() {
  kernels::configure_threads_from_env();
  const std::vector<Criterion> criteria{
      {"algebra_suite", 1, algebra_suite},
      {"telescope_suite", 5, telescope_suite},
      {"psi_spec_suite", 5, psi_suite},
      {"box_fit_numerics", 30, box_fit_numerics},
      {"nullity_decay", 120, nullity_decay},
      {"euclidean_contrast", 60, euclidean_contrast},
      {"contraction_rays", 10, contraction_rays},
      {"coarse_suite", 5, coarse_suite},
      {"boundary_action", 10, boundary_suite},
      {"growth_comparison", 60, growth_comparison},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s %-22s %7.3fs/%gs  %s%s\n", pass ? "PASS" : "FAIL", c.name.c_str(), secs, c.budget_s,
                o.detail.c_str(), in_time ? "" : " [over time budget]");
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
