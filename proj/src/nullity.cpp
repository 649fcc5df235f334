#include "ztel/nullity.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

#include "ztel/kernels.hpp"

namespace ztel {

std::vector<DecayEntry> DecayCurve::family(const std::string& name) const {
  std::vector<DecayEntry> out;
  for (const auto& e : entries)
    if (e.family == name) out.push_back(e);
  return out;
}

std::vector<std::string> DecayCurve::family_names() const {
  std::vector<std::string> out;
  for (const auto& e : entries)
    if (std::find(out.begin(), out.end(), e.family) == out.end()) out.push_back(e.family);
  return out;
}

void DecayCurve::validate() const {
  for (const auto& name : family_names()) {
    const auto rows = family(name);
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (!(rows[i].scale > rows[i - 1].scale))
        throw PreconditionFailed("family '" + name + "' has non-increasing scales");
  }
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::t_power:
      return "t_power";
    case FamilyKind::t_inverse:
      return "t_inverse";
    case FamilyKind::axis:
      return "axis";
    case FamilyKind::mixed:
      return "mixed";
    case FamilyKind::diagonal:
      return "diagonal";
  }
  return "unknown";
}

FamilyKind parse_family_kind(const std::string& text) {
  for (auto kind : {FamilyKind::t_power, FamilyKind::t_inverse, FamilyKind::axis, FamilyKind::mixed,
                    FamilyKind::diagonal})
    if (to_string(kind) == text) return kind;
  throw ConfigError("unknown family kind '" + text + "'");
}

GroupElement family_element(const FamilySpec& family, double scale, int n) {
  const auto s = static_cast<long long>(std::llround(scale));
  if (std::abs(static_cast<double>(s) - scale) > 1e-9)
    throw PreconditionFailed("family scales must be integers");
  if (family.axis < 0 || family.axis >= n) throw PreconditionFailed("family axis out of range");
  std::vector<long long> g(static_cast<std::size_t>(n), 0);
  switch (family.kind) {
    case FamilyKind::t_power:
      return GroupElement::t_power(n, s);
    case FamilyKind::t_inverse:
      return GroupElement::t_power(n, -s);
    case FamilyKind::axis:
      g[static_cast<std::size_t>(family.axis)] = s;
      return GroupElement::from_ints(0, g);
    case FamilyKind::mixed:
      g[static_cast<std::size_t>(family.axis)] = s;
      return GroupElement::from_ints(family.k0, g);
    case FamilyKind::diagonal:
      g[static_cast<std::size_t>(family.axis)] = s;
      return GroupElement::from_ints(s, g);
  }
  return GroupElement::identity(n);
}

double eta_raw(const Automorphism& aut, const FundamentalDomain& domain, long long k) {
  double best = 0.0;
  for (long long sign : {1LL, -1LL}) {
    const auto pts = kernels::parallel::straightened_translates(aut, GroupElement::t_power(aut.n(), sign * k),
                                                                domain.samples);
    best = std::max(best, kernels::parallel::l1_diameter(pts));
  }
  return best;
}

SampledFunction eta_estimate(const Automorphism& aut, const FundamentalDomain& domain, int kmax) {
  if (kmax < 0) throw PreconditionFailed("kmax must be >= 0");
  SampledFunction eta{1.0, {}};
  double running = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    running = std::max(running, eta_raw(aut, domain, k));
    eta.values.push_back(running + k);
  }
  return eta;
}

double smallness(const PsiSpec& spec, const Automorphism& aut, const GroupElement& a,
                 const FundamentalDomain& domain) {
  const auto pts = kernels::parallel::straightened_translates(aut, a, domain.samples);
  return fits_in_basic(spec, pts).delta;
}

DecayCurve decay_experiment(const PsiSpec& spec, const Automorphism& aut, const FundamentalDomain& domain,
                            const std::vector<FamilySpec>& families) {
  DecayCurve curve;
  for (const auto& fam : families)
    for (double s : fam.ladder)
      curve.entries.push_back({fam.name, s, smallness(spec, aut, family_element(fam, s, aut.n()), domain)});
  curve.validate();
  return curve;
}

double euclidean_smallness(const Automorphism& aut, const GroupElement& a, const FundamentalDomain& domain,
                           BaselineEmbedding embedding) {
  std::vector<Vec> ws;
  ws.reserve(domain.samples.size());
  if (embedding == BaselineEmbedding::straightened) {
    for (auto& q : kernels::parallel::straightened_translates(aut, a, domain.samples)) {
      Vec w = std::move(q.x);
      w.push_back(q.r);
      ws.push_back(std::move(w));
    }
  } else {
    for (const auto& s : domain.samples) ws.push_back(embed_straightline(aut, act(aut, a, s)));
  }
  double min_norm = kInf;
  Vec mean(ws.front().size(), 0.0);
  std::vector<Vec> dirs;
  dirs.reserve(ws.size());
  for (const auto& w : ws) {
    const double nw = norm(w);
    min_norm = std::min(min_norm, nw);
    if (nw == 0.0) return kInf;
    dirs.push_back(normalized(w));
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += dirs.back()[i];
  }
  if (norm(mean) == 0.0) return std::numbers::pi;
  const Vec c = normalized(mean);
  double radius = 0.0;
  for (const auto& u : dirs) radius = std::max(radius, std::acos(std::clamp(dot(u, c), -1.0, 1.0)));
  return std::max(1.0 / min_norm, radius);
}

DecayCurve euclidean_baseline(const Automorphism& aut, const FundamentalDomain& domain,
                              const std::vector<FamilySpec>& families, BaselineEmbedding embedding) {
  DecayCurve curve;
  for (const auto& fam : families)
    for (double s : fam.ladder)
      curve.entries.push_back(
          {fam.name, s, euclidean_smallness(aut, family_element(fam, s, aut.n()), domain, embedding)});
  curve.validate();
  return curve;
}

namespace {

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t l = i; l <= j; ++l) r[idx[l]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) return std::nan("");
  const auto rx = ranks(xs);
  const auto ry = ranks(ys);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(rx.size());
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(ry.size());
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nan("");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<FamilyVerdict> judge(const DecayCurve& curve, const std::vector<FamilySpec>& families) {
  std::vector<FamilyVerdict> out;
  for (const auto& fam : families) {
    const auto rows = curve.family(fam.name);
    FamilyVerdict v;
    v.family = fam.name;
    v.threshold = fam.threshold;
    std::vector<double> xs, ys;
    for (const auto& r : rows) {
      xs.push_back(r.scale);
      ys.push_back(r.delta);
    }
    v.spearman = spearman(xs, ys);
    v.strictly_decreasing = rows.size() >= 2;
    for (std::size_t i = 1; i < rows.size(); ++i)
      v.strictly_decreasing = v.strictly_decreasing && rows[i].delta < rows[i - 1].delta;
    v.final_delta = rows.empty() ? kInf : rows.back().delta;
    v.pass = v.strictly_decreasing && v.spearman < kSpearmanThreshold && v.final_delta < v.threshold;
    out.push_back(v);
  }
  return out;
}

}  // namespace ztel
