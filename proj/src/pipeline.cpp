#include "ztel/pipeline.hpp"

#include <cmath>
#include <numbers>

#include "ztel/nullity.hpp"

namespace ztel {

Fixture make_fixture(const Automorphism& aut, SlopeMode mode, double domain_step, int eta_kmax) {
  FundamentalDomain domain = fundamental_domain(aut, domain_step);
  SampledFunction eta = eta_estimate(aut, domain, eta_kmax);
  PsiSpec spec = build_psi(aut, eta, mode);
  return {aut, std::move(domain), std::move(eta), std::move(spec)};
}

Fixture make_fixture(const ExperimentConfig& cfg) {
  return make_fixture(cfg.automorphism(), cfg.mode, cfg.domain_step, cfg.eta_kmax);
}

std::vector<ProductPoint> box_samples(const Vec& center, double radius, double k, int directions, int rings) {
  std::vector<ProductPoint> out;
  for (double r : {k, k + 0.5, k + 1.0}) {
    out.push_back({center, r});
    for (int ring = 1; ring <= rings; ++ring) {
      const double rad = radius * ring / rings;
      for (int d = 0; d < directions; ++d) {
        const double th = 2.0 * std::numbers::pi * d / directions;
        Vec x = center;
        x[0] += rad * std::cos(th);
        if (x.size() > 1) x[1] += rad * std::sin(th);
        out.push_back({std::move(x), r});
      }
    }
  }
  return out;
}

std::vector<FarTelescopePoint> slope_ray_sequence(const PsiSpec& spec, const Automorphism& aut, const Vec& z,
                                                  double mu, int count) {
  if (!(mu != 0.0 && std::isfinite(mu))) throw PreconditionFailed("ray sequences need a finite nonzero slope");
  std::vector<FarTelescopePoint> out;
  const Vec dir = normalized(z);
  for (int i = 1; i <= count; ++i) {
    const double p = i / std::abs(mu);
    const double log_d = log_distance_from_p(spec, p);
    if (!std::isfinite(log_d)) throw Overflow("ray point beyond log-space range at p = " + std::to_string(p));
    ScaledVector y = ScaledVector::from_polar(dir, log_d);
    y = y.translated(spec.x0());
    const FarProductPoint q{y, mu > 0 ? static_cast<double>(i) : -static_cast<double>(i)};
    out.push_back(u_map(aut, q));
  }
  return out;
}

int stable_level_cap(const Automorphism& aut, double max_condition, int limit) {
  auto frobenius = [](const std::vector<double>& m) {
    double s = 0.0;
    for (double v : m) s += v * v;
    return std::sqrt(s);
  };
  int cap = 0;
  for (int r = 1; r <= limit; ++r) {
    if (frobenius(real_power(aut, r)) * frobenius(real_power(aut, -r)) > max_condition) break;
    cap = r;
  }
  return cap;
}

std::vector<PrescribedSequence> prescribed_sequences(const PsiSpec& spec, const Automorphism& aut) {
  const auto n = static_cast<std::size_t>(aut.n());
  const int levels = stable_level_cap(aut);
  if (levels < 4) throw PreconditionFailed("automorphism too ill-conditioned for ray sequences");
  std::vector<PrescribedSequence> out;

  Vec z0(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) z0[j] = static_cast<double>(j + 1);
  z0 = normalized(z0);
  std::vector<long long> g(n, 0);
  g[0] = 3;
  if (n > 1) g[1] = -2;
  PrescribedSequence translation{"translation", GroupElement::from_ints(0, g), {}, BoundaryPoint::make(z0, 0.0)};
  for (int i = 1; i <= 60; ++i) translation.points.push_back({ScaledVector::from_polar(z0, i * std::log(2.0)), 0.0});
  out.push_back(std::move(translation));

  Vec e_last(n, 0.0);
  e_last.back() = 1.0;
  out.push_back({"t_shift", GroupElement::t_power(aut.n(), 1), slope_ray_sequence(spec, aut, e_last, 2.0, levels),
                 BoundaryPoint::make(e_last, 2.0)});

  std::vector<long long> ones(n, 1);
  out.push_back({"mixed", GroupElement::from_ints(-2, ones), slope_ray_sequence(spec, aut, z0, -2.0, levels),
                 BoundaryPoint::make(z0, -2.0)});
  return out;
}

}  // namespace ztel
