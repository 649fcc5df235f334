#include <doctest.h>

#include "ztel/kernels.hpp"
#include "ztel/nullity.hpp"
#include "ztel/pipeline.hpp"

using namespace ztel;

namespace {

FamilySpec family(const std::string& name, FamilyKind kind, std::vector<double> ladder, int axis = 0,
                  long long k0 = 0) {
  return {name, kind, axis, k0, std::move(ladder), kInf};
}

}  // namespace

TEST_CASE("eta for the unit square") {
  const auto h = heisenberg();
  const auto dom = fundamental_domain(h, 0.25);
  CHECK(eta_raw(h, dom, 0) == doctest::Approx(3.0));
  // v(t^{+-k} C_Y) = A^{-+k}[0,1]^2 x [k, k+1]; its l1 diameter is k + 3.
  for (long long k : {1, 2, 5, 10, 33})
    CHECK(eta_raw(h, dom, k) == doctest::Approx(static_cast<double>(k) + 3.0));
  const auto eta = eta_estimate(h, dom, 64);
  CHECK(eta(0) == doctest::Approx(3.0));
  CHECK(eta(1) == doctest::Approx(5.0));
  CHECK(eta(10) == doctest::Approx(23.0));
  CHECK(eta(64) == doctest::Approx(131.0));
  CHECK(eta.is_monotone());
}

TEST_CASE("eta for Sol grows like the expanding eigenvalue") {
  const auto s = sol();
  const auto dom = fundamental_domain(s, 0.25);
  const double lam = (3.0 + std::sqrt(5.0)) / 2.0;
  double lo = kInf, hi = 0.0;
  for (long long k = 1; k <= 12; ++k) {
    const double ratio = eta_raw(s, dom, k) / std::pow(lam, static_cast<double>(k));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK(lo > 0.5);
  CHECK(hi < 5.0);
}

TEST_CASE("eta in the direct product stays unbounded") {
  const auto id = Automorphism::identity(2);
  const auto eta = eta_estimate(id, fundamental_domain(id, 0.5), 20);
  CHECK(eta(0) == doctest::Approx(3.0));
  CHECK(eta(20) == doctest::Approx(23.0));
}

TEST_CASE("smallness examples") {
  const auto fx = make_fixture(heisenberg(), SlopeMode::standard, 0.25, 64);
  const double central = smallness(fx.spec, fx.aut, GroupElement::identity(2), fx.domain);
  CHECK(central >= 0.9);
  const auto t20 = GroupElement::t_power(2, 20);
  CHECK(smallness(fx.spec, fx.aut, t20, fx.domain) <= 0.25);
  const auto y = [](long long m) { return GroupElement::from_ints(0, std::vector<long long>{0, m}); };
  CHECK(smallness(fx.spec, fx.aut, y(10000), fx.domain) < smallness(fx.spec, fx.aut, y(100), fx.domain));
}

TEST_CASE("family elements") {
  CHECK(family_element(family("a", FamilyKind::t_power, {}), 5, 2) == GroupElement::t_power(2, 5));
  CHECK(family_element(family("a", FamilyKind::t_inverse, {}), 5, 2) == GroupElement::t_power(2, -5));
  CHECK(family_element(family("a", FamilyKind::axis, {}, 1), 9, 2) ==
        GroupElement::from_ints(0, std::vector<long long>{0, 9}));
  CHECK(family_element(family("a", FamilyKind::mixed, {}, 0, 3), 9, 2) ==
        GroupElement::from_ints(3, std::vector<long long>{9, 0}));
  CHECK(family_element(family("a", FamilyKind::diagonal, {}, 1), 4, 2) ==
        GroupElement::from_ints(4, std::vector<long long>{0, 4}));
  CHECK(parse_family_kind(to_string(FamilyKind::mixed)) == FamilyKind::mixed);
  CHECK_THROWS_AS(parse_family_kind("spiral"), ConfigError);
}

TEST_CASE("decay experiment on the Heisenberg fixture") {
  const auto fx = make_fixture(heisenberg(), SlopeMode::standard, 0.25, 64);
  const std::vector<FamilySpec> fams{family("t", FamilyKind::t_power, {4, 8, 16, 32, 64}),
                                     family("y", FamilyKind::axis, {3, 27, 243, 2187, 19683}, 1),
                                     family("mixed", FamilyKind::mixed, {9, 81, 729, 6561}, 1, 3)};
  const auto curve = decay_experiment(fx.spec, fx.aut, fx.domain, fams);
  CHECK_NOTHROW(curve.validate());
  CHECK(curve.family_names() == std::vector<std::string>{"t", "y", "mixed"});
  for (const auto& v : judge(curve, fams)) {
    INFO(v.family);
    CHECK(v.strictly_decreasing);
    CHECK(v.spearman < kSpearmanThreshold);
  }
  // Along t^k the pole candidate gives delta = max(1/k, 1/min slope).
  for (const auto& e : curve.family("t")) {
    const auto a = GroupElement::t_power(2, static_cast<long long>(e.scale));
    double min_mu = kInf;
    for (const auto& q : kernels::serial::straightened_translates(fx.aut, a, fx.domain.samples))
      min_mu = std::min(min_mu, slope(fx.spec, q));
    CHECK(e.delta == doctest::Approx(std::max(1.0 / e.scale, 1.0 / min_mu)));
  }
  CHECK(curve.family("t").back().delta < 0.05);
}

TEST_CASE("euclidean baseline") {
  const auto h = heisenberg();
  const auto dom = fundamental_domain(h, 0.25);
  const auto fams = std::vector<FamilySpec>{family("t", FamilyKind::t_power, {8, 16, 32, 64}),
                                            family("y", FamilyKind::axis, {3, 27, 243, 2187}, 1)};
  const auto base = euclidean_baseline(h, dom, fams, BaselineEmbedding::straightened);
  // Large shadows: v(t^k C_Y) = A^{-k}[0,1]^2 x [k, k+1] keeps an angular radius bounded below.
  for (const auto& e : base.family("t")) CHECK(e.delta > 0.3);
  // Pure translations shrink in the Euclidean picture.
  const auto ys = base.family("y");
  for (std::size_t i = 1; i < ys.size(); ++i) CHECK(ys[i].delta < ys[i - 1].delta);
  CHECK(ys.back().delta < 0.01);
  // Before straightening, the cylinder over y^m runs from (0, m) to f(0, m) = (m, m).
  const auto line = euclidean_baseline(h, dom, fams, BaselineEmbedding::straightline);
  for (const auto& e : line.family("y")) CHECK(e.delta > 0.3);
}

TEST_CASE("direct product: both pictures decay") {
  const auto id = Automorphism::identity(2);
  const auto fx = make_fixture(id, SlopeMode::standard, 0.25, 64);
  const auto fams = std::vector<FamilySpec>{family("t", FamilyKind::t_power, {4, 8, 16, 32, 64}),
                                            family("y", FamilyKind::axis, {3, 27, 243, 2187, 19683}, 1)};
  const auto slope = decay_experiment(fx.spec, id, fx.domain, fams);
  const auto euclid = euclidean_baseline(id, fx.domain, fams);
  for (const auto* curve : {&slope, &euclid})
    for (const auto& v : judge(*curve, fams)) {
      INFO(v.family);
      CHECK(v.strictly_decreasing);
    }
}

TEST_CASE("spearman and judge") {
  CHECK(spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
  CHECK(spearman({1, 2, 3, 4}, {1, 2, 3, 4}) == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3}, {1, 1, 1}) != spearman({1, 2, 3}, {1, 1, 1}));  // NaN for constant ranks
  CHECK(std::isnan(spearman({1}, {1})));
  CHECK(spearman({1, 2, 3, 4}, {3, 1, 1, 0}) == doctest::Approx(-0.9486832980505138));

  auto fam = family("f", FamilyKind::axis, {1, 2, 3});
  fam.threshold = 0.5;
  DecayCurve good{{{"f", 1, 0.9}, {"f", 2, 0.6}, {"f", 3, 0.4}}};
  DecayCurve flat{{{"f", 1, 0.9}, {"f", 2, 0.9}, {"f", 3, 0.4}}};
  DecayCurve high{{{"f", 1, 0.9}, {"f", 2, 0.8}, {"f", 3, 0.7}}};
  CHECK(judge(good, {fam}).front().pass);
  CHECK_FALSE(judge(flat, {fam}).front().pass);
  CHECK_FALSE(judge(high, {fam}).front().pass);
  DecayCurve bad{{{"f", 2, 0.9}, {"f", 1, 0.6}}};
  CHECK_THROWS_AS(bad.validate(), PreconditionFailed);
}
