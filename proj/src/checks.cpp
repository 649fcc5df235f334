#include "ztel/checks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "ztel/boundary_action.hpp"
#include "ztel/telescope.hpp"

namespace ztel {

bool all_pass(const std::vector<PropertyReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const PropertyReport& r) { return r.pass; });
}

namespace {

GroupElement random_element(std::mt19937_64& rng, int n, long long kbound, long long gbound) {
  std::uniform_int_distribution<long long> kd(-kbound, kbound), gd(-gbound, gbound);
  GroupElement a{kd(rng), {}};
  for (int i = 0; i < n; ++i) a.g.emplace_back(static_cast<long>(gd(rng)));
  return a;
}

// Multiples of 1/1024: sums and integer-matrix products stay exact in doubles.
double dyadic(std::mt19937_64& rng, double bound) {
  const auto top = static_cast<long long>(bound * 1024.0);
  return static_cast<double>(std::uniform_int_distribution<long long>(-top, top)(rng)) / 1024.0;
}

TelescopePoint random_point(std::mt19937_64& rng, int n, double xbound, double rbound) {
  TelescopePoint p{Vec(static_cast<std::size_t>(n)), dyadic(rng, rbound)};
  for (double& v : p.x) v = dyadic(rng, xbound);
  return p;
}

double point_error(const Vec& a, double ra, const Vec& b, double rb) {
  double e = std::abs(ra - rb) / (1.0 + std::abs(rb));
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]) / (1.0 + std::abs(b[i])));
  return e;
}

constexpr double kTol = 1e-12;

}  // namespace

std::vector<PropertyReport> algebra_properties(const Automorphism& aut, std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  const int n = aut.n();
  const GroupElement e = GroupElement::identity(n);
  PropertyReport assoc{"associativity", 0, 0.0, true}, inv{"inverse", 0, 0.0, true},
      rel{"relator", 0, 0.0, true};
  for (int c = 0; c < cases; ++c) {
    const auto a = random_element(rng, n, 50, 50), b = random_element(rng, n, 50, 50),
               d = random_element(rng, n, 50, 50);
    if (multiply(aut, multiply(aut, a, b), d) != multiply(aut, a, multiply(aut, b, d))) assoc.pass = false;
    const auto ai = inverse(aut, a);
    if (multiply(aut, a, ai) != e || multiply(aut, ai, a) != e) inv.pass = false;
    // t^{-k} g t^k = phi^k(g)
    const long long k = std::uniform_int_distribution<long long>(-10, 10)(rng);
    const GroupElement g = GroupElement::embed(a.g);
    const auto lhs = multiply(aut, GroupElement::t_power(n, -k), multiply(aut, g, GroupElement::t_power(n, k)));
    if (lhs != GroupElement::embed(apply_phi(aut, k, a.g))) rel.pass = false;
    ++assoc.cases;
    ++inv.cases;
    ++rel.cases;
  }
  for (auto* r : {&assoc, &inv, &rel}) r->max_error = r->pass ? 0.0 : 1.0;

  PropertyReport sym{"word_length_symmetry", 0, 0.0, true};
  const WordBall wb = ball(aut, 4);
  std::map<std::string, int> lengths;
  for (std::size_t i = 0; i < wb.size(); ++i) lengths[wb.elements[i].to_string()] = wb.lengths[i];
  for (std::size_t i = 0; i < wb.size(); ++i) {
    const auto it = lengths.find(inverse(aut, wb.elements[i]).to_string());
    if (it == lengths.end() || it->second != wb.lengths[i]) sym.pass = false;
    ++sym.cases;
  }
  sym.max_error = sym.pass ? 0.0 : 1.0;
  return {assoc, inv, rel, sym};
}

std::vector<PropertyReport> telescope_properties(const Automorphism& aut, std::uint64_t seed, int cases,
                                                 int roundtrip) {
  std::mt19937_64 rng(seed);
  const int n = aut.n();
  PropertyReport axiom{"action_axiom", 0, 0.0, true}, relator{"relator_on_telescope", 0, 0.0, true},
      equiv{"integral_equivariance", 0, 0.0, true}, level{"level_preserving", 0, 0.0, true},
      trip{"uv_round_trip", 0, 0.0, true};
  const GroupElement t = GroupElement::t_power(n, 1), t_inv = GroupElement::t_power(n, -1);
  for (int c = 0; c < cases; ++c) {
    const auto a = random_element(rng, n, 5, 50), b = random_element(rng, n, 5, 50);
    const auto p = random_point(rng, n, 8.0, 10.0);
    const auto lhs = act(aut, multiply(aut, a, b), p);
    const auto rhs = act(aut, a, act(aut, b, p));
    axiom.max_error = std::max(axiom.max_error, point_error(lhs.x, lhs.r, rhs.x, rhs.r));

    const GroupElement g = GroupElement::embed(a.g);
    const auto conj = act(aut, multiply(aut, t_inv, multiply(aut, g, t)), p);
    const auto phig = act(aut, GroupElement::embed(apply_phi(aut, 1, a.g)), p);
    relator.max_error = std::max(relator.max_error, point_error(conj.x, conj.r, phig.x, phig.r));

    const TelescopePoint pk{p.x, std::floor(p.r)};
    const auto left = v_map(aut, act(aut, g, pk));
    const auto right = act_product(a.g, v_map(aut, pk));
    equiv.max_error = std::max(equiv.max_error, point_error(left.x, left.r, right.x, right.r));

    level.max_error = std::max(level.max_error, std::abs(v_map(aut, p).r - p.r));
    ++axiom.cases;
    ++relator.cases;
    ++equiv.cases;
    ++level.cases;
  }
  for (int c = 0; c < roundtrip; ++c) {
    const auto p = random_point(rng, n, 8.0, 10.0);
    const auto back = u_map(aut, v_map(aut, p));
    const ProductPoint q{p.x, p.r};
    const auto fwd = v_map(aut, u_map(aut, q));
    trip.max_error = std::max({trip.max_error, point_error(back.x, back.r, p.x, p.r),
                               point_error(fwd.x, fwd.r, q.x, q.r)});
    ++trip.cases;
  }
  std::vector<PropertyReport> out{axiom, relator, equiv, level, trip};
  for (auto& r : out) r.pass = r.max_error <= kTol;
  return out;
}

std::vector<Vec> sphere_grid(int n, int count) {
  std::vector<Vec> out;
  const auto un = static_cast<std::size_t>(n);
  if (n == 1) return {Vec{1.0}, Vec{-1.0}};
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    Vec z(un, 0.0);
    if (n == 2) {
      const double th = 2.0 * std::numbers::pi * i / count;
      z[0] = std::cos(th);
      z[1] = std::sin(th);
    } else {
      const double y = 1.0 - 2.0 * (i + 0.5) / count;
      const double rad = std::sqrt(1.0 - y * y);
      z[0] = rad * std::cos(golden * i);
      z[1] = y;
      z[2] = rad * std::sin(golden * i);
    }
    out.push_back(std::move(z));
  }
  return out;
}

std::vector<PropertyReport> boundary_properties(const Automorphism& aut, std::uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  const int n = aut.n();
  const BoundaryAction action(aut);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> mud(-5.0, 5.0);
  auto random_boundary = [&](int c) {
    if (c % 10 == 0) return BoundaryPoint::pole(n, c % 20 == 0 ? 1 : -1);
    Vec z(static_cast<std::size_t>(n));
    for (double& v : z) v = gauss(rng);
    return BoundaryPoint::make(z, mud(rng));
  };
  PropertyReport axiom{"action_axiom", 0, 0.0, true}, mu{"mu_preserved", 0, 0.0, true},
      invert{"t_invertibility", 0, 0.0, true}, relator{"relator", 0, 0.0, true},
      mutation{"mutation_detected", 0, 0.0, true};
  auto gap = [](const BoundaryPoint& x, const BoundaryPoint& y) {
    if (x.kind != y.kind) return kInf;
    return x.is_pole() ? 0.0 : std::max(distance(x.z, y.z), std::abs(x.mu - y.mu));
  };
  for (int c = 0; c < cases; ++c) {
    const auto a = random_element(rng, n, 5, 50), b = random_element(rng, n, 5, 50);
    const auto pt = random_boundary(c);
    const auto lhs = action.act(multiply(aut, a, b), pt);
    const auto rhs = action.act(a, action.act(b, pt));
    axiom.max_error = std::max(axiom.max_error, gap(lhs, rhs));
    if (!pt.is_pole()) mu.max_error = std::max(mu.max_error, std::abs(lhs.mu - pt.mu));
    if (!relator_check(aut, action, GroupElement::embed(a.g), pt) || !relator_check(aut, action, a, pt))
      relator.max_error = 1.0;
    ++axiom.cases;
    ++mu.cases;
    ++relator.cases;
  }
  const GroupElement t = GroupElement::t_power(n, 1), t_inv = GroupElement::t_power(n, -1);
  for (const auto& z : sphere_grid(n, 720)) {
    const auto b = BoundaryPoint::make(z, 0.75);
    invert.max_error = std::max({invert.max_error, gap(action.act(t_inv, action.act(t, b)), b),
                                 gap(action.act(t, action.act(t_inv, b)), b)});
    ++invert.cases;
  }
  // A wrong h must be caught on generic points unless m is an involution up to scale.
  const std::vector<double> m(aut.matrix_real().begin(), aut.matrix_real().end());
  const BoundaryAction broken(n, m, m);
  std::size_t caught = 0;
  for (const auto& z : sphere_grid(n, 36)) {
    if (!relator_check(aut, broken, GroupElement::t_power(n, 1), BoundaryPoint::make(z, 0.0))) ++caught;
    ++mutation.cases;
  }
  const bool involutive = [&] {
    std::vector<double> sq(m.size(), 0.0);
    const auto un = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = 0; j < un; ++j)
        for (std::size_t l = 0; l < un; ++l) sq[i * un + j] += m[i * un + l] * m[l * un + j];
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = 0; j < un; ++j)
        if (sq[i * un + j] != (i == j ? 1.0 : 0.0)) return false;
    return true;
  }();
  mutation.max_error = involutive ? 0.0 : 1.0 - static_cast<double>(caught) / static_cast<double>(mutation.cases);
  std::vector<PropertyReport> out{axiom, mu, invert, relator, mutation};
  for (auto& r : out) r.pass = r.max_error <= kTol;
  out.back().pass = involutive || caught > 0;
  return out;
}

CoarseReport coarse_report(const Automorphism& aut, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CoarseReport rep;
  rep.qi = qi_constants(aut);
  const int n = aut.n();

  PropertyReport qi{"qi_inequalities", 0, 0.0, true};
  std::uniform_real_distribution<double> ud(-10.0, 10.0);
  for (int c = 0; c < 1000; ++c) {
    Vec x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    for (double& v : x) v = ud(rng);
    for (double& v : y) v = ud(rng);
    const double d = distance(x, y);
    const double fd = distance(mat_vec(aut.matrix_real(), x), mat_vec(aut.matrix_real(), y));
    const double upper = fd - (rep.qi.K * d + rep.qi.eps);
    const double lower = (d / rep.qi.K - rep.qi.eps) - fd;
    qi.max_error = std::max({qi.max_error, upper / (1.0 + d), lower / (1.0 + d), 0.0});
    ++qi.cases;
  }
  qi.pass = qi.max_error <= 1e-9;

  PropertyReport normalize{"normalize_controls", 0, 0.0, true};
  const auto rho_minus = ControlFunction::sample([](double x) { return std::log1p(x); }, 1e6);
  const auto rho_plus = ControlFunction::identity();
  const auto rho = normalize_controls(rho_minus, rho_plus);
  for (double x : rho_minus.xs()) {
    normalize.max_error = std::max({normalize.max_error, std::abs(rho(x) - rho_minus(x)),
                                    std::max(0.0, rho_plus(x) - rho.inverse_at(x))});
    ++normalize.cases;
  }
  normalize.pass = normalize.max_error <= 1e-12;

  const auto half = ControlFunction::linear(0.5);
  PropertyReport lemma{"star_shift_identity", 0, 0.0, true};
  std::uniform_real_distribution<double> logz(0.0, std::log(1e9));
  for (int c = 0; c < 200; ++c) {
    const double z = 1.0 + std::exp(logz(rng));  // z > 1
    const long long s = star(half, z);
    if (star(half, half(z)) != s - 1 || star(half, half.inverse_at(z)) != s + 1) lemma.max_error = 1.0;
    ++lemma.cases;
  }
  lemma.pass = lemma.max_error == 0.0;

  const auto rho3 = ControlFunction::linear(3.0);
  const auto phi3 = rho3.inverse();
  rep.psi_inverse = psi_inv_from_star(rho3);
  PropertyReport close{"star_closeness", 0, 0.0, true}, plus_one{"log3_plus_one_bound", 0, 0.0, true},
      plus_two{"log3_plus_two_bound", 0, 0.0, true};
  std::vector<double> grid;
  for (int i = 0; i < 500; ++i) grid.push_back(20.0 * i / 500.0);                      // dense near the start
  for (int i = 0; i < 500; ++i) grid.push_back(std::pow(10.0, 1.3 + 10.7 * i / 499.0));  // 20 .. 1e12
  for (double x : grid) {
    const double v = rep.psi_inverse(x);
    close.max_error = std::max(close.max_error, std::abs(v - static_cast<double>(star(phi3, x))));
    ++close.cases;
    if (x >= 3.0) {
      const double l3 = std::log(x) / std::log(3.0);
      plus_one.max_error = std::max(plus_one.max_error, v - (l3 + 1.0));
      plus_two.max_error = std::max(plus_two.max_error, v - (l3 + 2.0));
      ++plus_one.cases;
      ++plus_two.cases;
    }
  }
  close.pass = close.max_error <= 1.0;
  plus_one.pass = plus_one.max_error <= 1e-12;
  plus_two.pass = plus_two.max_error <= 1e-12;
  plus_one.max_error = std::max(plus_one.max_error, 0.0);
  plus_two.max_error = std::max(plus_two.max_error, 0.0);

  std::vector<double> ladder;
  for (int j = 4; j <= 48; ++j) ladder.push_back(std::pow(10.0, j / 4.0));  // 10 .. 1e12
  const auto& pinv = rep.psi_inverse;
  rep.limit_deviations = {
      limit_ratio_check([](double y) { return y; }, 1, 0, 2, 5, ladder),
      limit_ratio_check([](double y) { return std::log(y); }, 1, 0, 2, 5, ladder),
      limit_ratio_check([&](double y) { return std::log1p(pinv(y)); }, 1, 0, 2, 5, ladder)};
  PropertyReport limit{"limit_ratio", 3, 0.0, true};
  for (double d : rep.limit_deviations) limit.max_error = std::max(limit.max_error, d);
  limit.pass = limit.max_error < 0.1;

  rep.properties = {qi, normalize, lemma, close, plus_one, plus_two, limit};
  return rep;
}

}  // namespace ztel
