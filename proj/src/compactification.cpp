#include "ztel/compactification.hpp"

#include <algorithm>
#include <numbers>

#include "ztel/kernels.hpp"

namespace ztel {

namespace {

constexpr double kLog3 = 1.0986122886681098;  // ln 3
constexpr int kEnvelopeSubsamples = 8;

double log_psi_at_zero(const PsiSpec& spec) { return spec.log_psi(0.0); }

}  // namespace

SampledFunction SampledFunction::constant(double value, double end, double step) {
  const auto count = static_cast<std::size_t>(std::llround(end / step)) + 1;
  return {step, std::vector<double>(count, value)};
}

double SampledFunction::operator()(double s) const {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values.front();
  if (s <= 0.0) return values.front();
  const double pos = s / step;
  auto i = static_cast<std::size_t>(pos);
  if (i >= values.size() - 1) i = values.size() - 2;
  const double frac = pos - static_cast<double>(i);
  return values[i] + frac * (values[i + 1] - values[i]);
}

bool SampledFunction::is_monotone() const { return std::is_sorted(values.begin(), values.end()); }

std::string to_string(SlopeMode mode) { return mode == SlopeMode::standard ? "standard" : "exponential"; }

SlopeMode parse_slope_mode(const std::string& text) {
  if (text == "standard") return SlopeMode::standard;
  if (text == "exponential") return SlopeMode::exponential;
  throw ConfigError("unknown slope mode '" + text + "' (expected standard or exponential)");
}

PsiSpec::PsiSpec(Vec x0, SampledFunction lambda, SampledFunction eta, SampledFunction envelope, SlopeMode mode)
    : x0_(std::move(x0)),
      lambda_(std::move(lambda)),
      eta_(std::move(eta)),
      envelope_(std::move(envelope)),
      mode_(mode) {
  node_log_psi_.reserve(envelope_.values.size());
  for (std::size_t i = 0; i < envelope_.values.size(); ++i)
    node_log_psi_.push_back(std::log(envelope_.values[i]) + static_cast<double>(i) * envelope_.step * kLog3);
}

double PsiSpec::log_psi(double s) const {
  const double end = envelope_.end();
  if (s >= end) return std::log(envelope_.values.back()) + s * kLog3;
  return std::log(envelope_(s)) + s * kLog3;
}

double PsiSpec::psi_inverse_of_log(double log_value) const {
  if (log_value <= node_log_psi_.front()) return 0.0;
  if (log_value >= node_log_psi_.back())
    return envelope_.end() + (log_value - node_log_psi_.back()) / kLog3;
  // Locate the grid cell, then bisect inside it.
  const auto it = std::upper_bound(node_log_psi_.begin(), node_log_psi_.end(), log_value);
  const auto hi_index = static_cast<std::size_t>(it - node_log_psi_.begin());
  double lo = envelope_.step * static_cast<double>(hi_index - 1);
  double hi = envelope_.step * static_cast<double>(hi_index);
  for (int iter = 0; iter < 200 && hi - lo > 1e-13 * (1.0 + hi); ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (log_psi(mid) < log_value)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double radial_ball_diameter(double center, double s, int directions) {
  std::vector<Vec> images;
  images.reserve(static_cast<std::size_t>(directions));
  for (int i = 0; i < directions; ++i) {
    const double th = 2.0 * std::numbers::pi * i / directions;
    const Vec x{center + s * std::cos(th), s * std::sin(th)};
    images.push_back(radial_compactify(x));
  }
  return kernels::serial::max_pairwise_distance(images);
}

SampledFunction radial_lambda(double end, double step) {
  double scale = 1.0;
  const auto count = static_cast<std::size_t>(std::ceil(end / step)) + 1;
  for (int attempt = 0; attempt < 64; ++attempt, scale *= 2.0) {
    SampledFunction lam{step, {}};
    bool ok = true;
    for (std::size_t i = 0; i < count && ok; ++i) {
      const double s = step * static_cast<double>(i);
      const double value = scale * (2.0 * s * s + 2.0 * s);
      lam.values.push_back(value);
      if (s == 0.0) continue;
      // (a) points beyond lambda(s) are within 1/s of the sphere: 1/(1+|x|) < 1/s.
      if (1.0 + value < s) ok = false;
      // (b) balls of radius s outside B[x0, lambda(s)] have d-bar diameter <= 1/s;
      // the nearest such ball is the largest.
      if (ok && radial_ball_diameter(value + s, s, 180) > 1.0 / s) ok = false;
    }
    if (ok) return lam;
  }
  throw PreconditionFailed("could not validate a lambda function");
}

PsiSpec build_psi(const SampledFunction& lambda, const SampledFunction& eta, SlopeMode mode, Vec x0) {
  if (eta.values.empty()) throw PreconditionFailed("eta table is empty");
  if (!eta.is_monotone()) throw PreconditionFailed("eta table is not monotone");
  if (eta.values.size() >= 2) {
    const double a = eta.values[eta.values.size() - 2];
    const double b = eta.values.back();
    if (a > 0.0 && b > 0.0 && (std::log(b) - std::log(a)) / eta.step > kLog3 + 1e-12)
      throw EtaTooFast("EtaTooFast: eta(s)/3^s is still increasing at the end of its table");
  }
  const double end = std::max(eta.end(), 1.0);
  const auto nodes = static_cast<std::size_t>(std::ceil(end / kEnvelopeStep)) + 1;
  auto ratio = [&](double s) {
    return std::max({eta(s), lambda(s), 1.0}) * std::exp(-s * kLog3);
  };
  // Node i carries the running max up to node i + 1 so the linear
  // interpolant stays above the ratio between nodes.
  SampledFunction envelope{kEnvelopeStep, std::vector<double>(nodes)};
  double running = ratio(0.0);
  for (std::size_t i = 0; i < nodes; ++i) {
    if (i + 1 < nodes) {
      const double s0 = kEnvelopeStep * static_cast<double>(i);
      for (int j = 1; j <= kEnvelopeSubsamples; ++j)
        running = std::max(running, ratio(s0 + kEnvelopeStep * j / kEnvelopeSubsamples));
    }
    envelope.values[i] = running;
  }
  if (x0.empty()) x0.assign(1, 0.0);
  return PsiSpec(std::move(x0), lambda, eta, std::move(envelope), mode);
}

PsiSpec build_psi(const Automorphism& aut, const SampledFunction& eta, SlopeMode mode) {
  const SampledFunction lambda = radial_lambda(std::max(eta.end(), 1.0));
  return build_psi(lambda, eta, mode, Vec(static_cast<std::size_t>(aut.n()), 0.0));
}

double p_from_log_distance(const PsiSpec& spec, double log_distance) {
  const double log_psi0 = log_psi_at_zero(spec);
  double s = 0.0;
  if (spec.mode() == SlopeMode::standard) {
    s = spec.psi_inverse_of_log(log_add_exp(log_distance, log_psi0));
  } else {
    // Psi(0) = e^{psi(0)}; Psi^{-1}(y) = psi^{-1}(log y).
    const double y = log_add_exp(log_distance, std::exp(log_psi0));
    s = spec.psi_inverse_of_log(std::log(y));
  }
  return std::log1p(s);
}

double log_distance_from_p(const PsiSpec& spec, double p) {
  if (p <= 0.0) return -kInf;
  const double s = std::expm1(p);
  if (!std::isfinite(s)) return kInf;
  const double log_psi0 = log_psi_at_zero(spec);
  const double lp = spec.log_psi(s);
  if (spec.mode() == SlopeMode::standard) {
    if (lp <= log_psi0) return -kInf;
    return lp + std::log1p(-std::exp(log_psi0 - lp));
  }
  const double y = std::exp(lp);
  const double y0 = std::exp(log_psi0);
  if (!std::isfinite(y)) return kInf;
  if (y <= y0) return -kInf;
  return y + std::log1p(-std::exp(y0 - y));
}

double p_value(const PsiSpec& spec, std::span<const double> x) {
  const double d = distance(x, spec.x0());
  return p_from_log_distance(spec, d > 0.0 ? std::log(d) : -kInf);
}

ProductPoint to_product_point(const PsiSpec& spec, const RayPoint& q) {
  const double ld = log_distance_from_p(spec, q.p);
  const double d = std::exp(ld);
  if (!std::isfinite(d)) throw Overflow("ray point lies beyond double range");
  ProductPoint out{spec.x0(), q.r};
  for (std::size_t i = 0; i < out.x.size(); ++i) out.x[i] += d * q.direction[i];
  return out;
}

double slope_from_p(double p, double r) {
  if (p < kPoleTolerance) return r > 0.0 ? kInf : (r < 0.0 ? -kInf : 0.0);
  return r / p;
}

double slope(const PsiSpec& spec, const ProductPoint& q) { return slope_from_p(p_value(spec, q.x), q.r); }

double slope(const PsiSpec& spec, const FarProductPoint& q) {
  Vec neg_x0 = spec.x0();
  for (double& v : neg_x0) v = -v;
  const ScaledVector rel = q.x.translated(neg_x0);
  return slope_from_p(p_from_log_distance(spec, rel.log_norm), q.r);
}

double slope(const PsiSpec&, const RayPoint& q) { return slope_from_p(q.p, q.r); }

BoundaryPoint BoundaryPoint::make(Vec z, double mu) {
  if (mu == kInf) return pole(static_cast<int>(z.size()), +1);
  if (mu == -kInf) return pole(static_cast<int>(z.size()), -1);
  const double nz = norm(z);
  if (!(nz > 0.0)) throw PreconditionFailed("boundary direction must be nonzero");
  for (double& v : z) v /= nz;
  return {Kind::finite, std::move(z), mu};
}

BoundaryPoint BoundaryPoint::pole(int dim, int sign) {
  return {sign > 0 ? Kind::plus_pole : Kind::minus_pole, Vec(static_cast<std::size_t>(dim), 0.0),
          sign > 0 ? kInf : -kInf};
}

Vec radial_compactify(std::span<const double> x) {
  const double scale = 1.0 / (1.0 + norm(x));
  Vec out(x.begin(), x.end());
  for (double& v : out) v *= scale;
  return out;
}

ChartPoint chart(const PsiSpec& spec, const ProductPoint& q) {
  return {radial_compactify(q.x), std::tanh(slope(spec, q)), std::tanh(q.r / kHeightScale)};
}

ChartPoint chart(const PsiSpec& spec, const FarProductPoint& q) {
  // |xbar| = d/(1+d) with d = e^L.
  const double shrink = q.x.log_norm == -kInf ? 1.0 : 1.0 / (1.0 + std::exp(-q.x.log_norm));
  Vec xbar = q.x.unit;
  for (double& v : xbar) v *= q.x.log_norm == -kInf ? 0.0 : shrink;
  return {std::move(xbar), std::tanh(slope(spec, q)), std::tanh(q.r / kHeightScale)};
}

ChartPoint chart(const PsiSpec& spec, const RayPoint& q) {
  const double ld = log_distance_from_p(spec, q.p);
  ChartPoint out;
  if (ld < 700.0) {
    out.xbar = radial_compactify(to_product_point(spec, q).x);
  } else {
    out.xbar = q.direction;  // within e^{-700} of the sphere
  }
  out.s = std::tanh(slope_from_p(q.p, q.r));
  out.rho = std::tanh(q.r / kHeightScale);
  return out;
}

ChartPoint chart(const BoundaryPoint& b) {
  switch (b.kind) {
    case BoundaryPoint::Kind::plus_pole:
      return {b.z, 1.0, 1.0};
    case BoundaryPoint::Kind::minus_pole:
      return {b.z, -1.0, -1.0};
    case BoundaryPoint::Kind::finite:
      break;
  }
  return {b.z, std::tanh(b.mu), b.mu >= 0.0 ? 1.0 : -1.0};
}

double chart_distance(const ChartPoint& c, const BoundaryPoint& b) {
  switch (b.kind) {
    case BoundaryPoint::Kind::plus_pole:
      return std::max(std::abs(c.s - 1.0), std::abs(c.rho - 1.0));
    case BoundaryPoint::Kind::minus_pole:
      return std::max(std::abs(c.s + 1.0), std::abs(c.rho + 1.0));
    case BoundaryPoint::Kind::finite:
      break;
  }
  return std::max(distance(c.xbar, b.z), std::abs(c.s - std::tanh(b.mu)));
}

double chart_distance(const ChartPoint& a, const ChartPoint& b) {
  const double dx = distance(a.xbar, b.xbar);
  const double ds = a.s - b.s;
  const double dr = a.rho - b.rho;
  return std::sqrt(dx * dx + ds * ds + dr * dr);
}

FitResult fits_in_basic(const PsiSpec& spec, std::span<const ProductPoint> points) {
  if (points.empty()) throw PreconditionFailed("fits_in_basic needs at least one point");
  const std::size_t dim = points.front().x.size();

  std::vector<double> mus;
  std::vector<Vec> xbars;
  mus.reserve(points.size());
  xbars.reserve(points.size());
  bool all_pos = true, all_neg = true, all_finite = true;
  double min_r = kInf, min_neg_r = kInf, min_mu = kInf, min_neg_mu = kInf;
  double lo_mu = kInf, hi_mu = -kInf;
  for (const auto& q : points) {
    const double mu = slope(spec, q);
    mus.push_back(mu);
    xbars.push_back(radial_compactify(q.x));
    all_pos = all_pos && q.r > 0.0 && mu > 0.0;
    all_neg = all_neg && q.r < 0.0 && mu < 0.0;
    all_finite = all_finite && std::isfinite(mu);
    min_r = std::min(min_r, q.r);
    min_neg_r = std::min(min_neg_r, -q.r);
    min_mu = std::min(min_mu, mu);
    min_neg_mu = std::min(min_neg_mu, -mu);
    lo_mu = std::min(lo_mu, mu);
    hi_mu = std::max(hi_mu, mu);
  }

  FitResult best;
  auto offer = [&](double delta, FitResult::Candidate kind, BoundaryPoint witness) {
    if (delta < best.delta) best = {delta, kind, std::move(witness)};
  };
  if (all_pos)
    offer(std::max(1.0 / min_r, 1.0 / min_mu), FitResult::Candidate::plus_pole,
          BoundaryPoint::pole(static_cast<int>(dim), +1));
  if (all_neg)
    offer(std::max(1.0 / min_neg_r, 1.0 / min_neg_mu), FitResult::Candidate::minus_pole,
          BoundaryPoint::pole(static_cast<int>(dim), -1));
  if (all_finite) {
    // Radial part: with u_j = xbar_j/|xbar_j| and any witness z = u_i,
    // |xbar_j - z| <= (1 - |xbar_j|) + |u_j - u_i|. Both terms are maxima over
    // the set, so the bound never shrinks when points are added.
    double gap = 0.0;
    std::vector<Vec> dirs;
    for (const auto& xb : xbars) {
      const double nx = norm(xb);
      gap = std::max(gap, 1.0 - nx);
      if (nx > 0.0) dirs.push_back(normalized(xb));
    }
    const double spread = kernels::parallel::max_pairwise_distance(dirs);
    const double radial = dirs.empty() ? 1.0 : gap + spread;

    Vec z(dim, 0.0);
    if (dirs.empty()) {
      z[0] = 1.0;
    } else {
      Vec mean(dim, 0.0);
      for (const auto& u : dirs)
        for (std::size_t i = 0; i < dim; ++i) mean[i] += u[i];
      z = norm(mean) > 0.0 ? normalized(mean) : dirs.front();
      double worst = 0.0;
      for (const auto& xb : xbars) worst = std::max(worst, distance(xb, z));
      if (worst > radial) z = dirs.front();
    }
    const double mid = 0.5 * (lo_mu + hi_mu);
    const double half = 0.5 * (hi_mu - lo_mu);
    offer(std::max(radial, half), FitResult::Candidate::finite, BoundaryPoint::make(std::move(z), mid));
  }
  return best;
}

RayPoint contraction_ray(const PsiSpec& spec, const BoundaryPoint& target, double t) {
  if (!(t >= 0.0)) throw PreconditionFailed("ray time must be >= 0");
  const std::size_t dim = spec.x0().size();
  Vec e1(dim, 0.0);
  e1[0] = 1.0;
  switch (target.kind) {
    case BoundaryPoint::Kind::plus_pole:
      return {e1, 0.0, t};
    case BoundaryPoint::Kind::minus_pole:
      return {e1, 0.0, -t};
    case BoundaryPoint::Kind::finite:
      break;
  }
  const double c = std::sqrt(target.mu * target.mu + 1.0);
  const double height = std::abs(target.mu) * t / c;
  return {target.z, t / c, target.mu >= 0.0 ? height : -height};
}

RayPoint contraction_ray(const PsiSpec& spec, const ProductPoint& target, double t) {
  if (!(t >= 0.0)) throw PreconditionFailed("ray time must be >= 0");
  const std::size_t dim = spec.x0().size();
  const double p_end = p_value(spec, target.x);
  const double sign = target.r >= 0.0 ? 1.0 : -1.0;
  if (p_end < kPoleTolerance) {
    Vec e1(dim, 0.0);
    e1[0] = 1.0;
    return {e1, 0.0, sign * std::min(t, std::abs(target.r))};
  }
  Vec dir = target.x;
  for (std::size_t i = 0; i < dim; ++i) dir[i] -= spec.x0()[i];
  dir = normalized(dir);
  const double mu = target.r / p_end;
  const double c = std::sqrt(mu * mu + 1.0);
  return {std::move(dir), std::min(t / c, p_end), sign * std::min(std::abs(mu) * t / c, std::abs(target.r))};
}

}  // namespace ztel
