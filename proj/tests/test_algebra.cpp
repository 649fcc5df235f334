#include <doctest.h>

#include <random>

#include "ztel/algebra.hpp"
#include "ztel/checks.hpp"
#include "ztel/pipeline.hpp"

using namespace ztel;

namespace {

GroupElement el(long long k, std::vector<long long> g) { return GroupElement::from_ints(k, g); }

IntVector iv(std::vector<long> g) { return IntVector(g.begin(), g.end()); }

// Oracle: element as an (n+1)x(n+1) affine matrix acting on Z^n by
// x -> m^{-k} ... computed independently from the word t^k g.
GroupElement word_product(const Automorphism& aut, const std::vector<GroupElement>& letters) {
  GroupElement acc = GroupElement::identity(aut.n());
  for (const auto& l : letters) {
    // Multiply by t^k then by g using only the relation g t = t phi(g).
    for (long long s = 0; s < std::llabs(l.k); ++s) {
      const long long step = l.k > 0 ? 1 : -1;
      acc = {acc.k + step, apply_phi(aut, step, acc.g)};
    }
    for (std::size_t i = 0; i < acc.g.size(); ++i) acc.g[i] += l.g[i];
  }
  return acc;
}

}  // namespace

TEST_CASE("automorphism construction") {
  const auto h = heisenberg();
  CHECK(h.inverse_rows() == std::vector<std::vector<std::int64_t>>{{1, -1}, {0, 1}});
  CHECK(h.det() == 1);
  const auto id = Automorphism::identity(3);
  CHECK(id.rows() == id.inverse_rows());
  CHECK_THROWS_AS(Automorphism::make({{2, 0}, {0, 2}}), NotUnimodular);
  CHECK_THROWS_AS(Automorphism::make({{1, 2}, {2, 4}}), NotUnimodular);
  CHECK_THROWS_AS(Automorphism::make({{1, 0}}), PreconditionFailed);
  CHECK_THROWS_AS(Automorphism::make({}), PreconditionFailed);
  const auto flip = Automorphism::make({{0, 1}, {1, 0}});
  CHECK(flip.det() == -1);
  CHECK(flip.inverse_rows() == flip.rows());
}

TEST_CASE("apply_phi") {
  const auto h = heisenberg();
  CHECK(apply_phi(h, 1, iv({0, 1})) == iv({1, 1}));
  CHECK(apply_phi(h, 0, iv({5, -7})) == iv({5, -7}));
  CHECK(apply_phi(h, -2, iv({0, 1})) == iv({-2, 1}));
  // Exact far beyond 64 bits for Sol.
  const auto big = apply_phi(sol(), 200, iv({1, 0}));
  CHECK(apply_phi(sol(), -200, big) == iv({1, 0}));
  CHECK_FALSE(big[0].fits_slong_p());
}

TEST_CASE("multiply and inverse examples") {
  const auto h = heisenberg();
  const auto t = GroupElement::t_power(2, 1), t_inv = GroupElement::t_power(2, -1);
  const auto y = el(0, {0, 1});
  CHECK(multiply(h, multiply(h, t_inv, y), t) == el(0, {1, 1}));
  CHECK(multiply(h, GroupElement::identity(2), el(3, {4, 5})) == el(3, {4, 5}));
  CHECK(inverse(h, GroupElement::identity(2)) == GroupElement::identity(2));
  CHECK(inverse(h, t) == t_inv);
  const auto a = el(1, {0, 1});
  const auto ai = inverse(h, a);
  CHECK(ai == el(-1, {1, -1}));
  CHECK(multiply(h, a, ai) == GroupElement::identity(2));
  CHECK(multiply(h, ai, a) == GroupElement::identity(2));
}

TEST_CASE("multiply agrees with the word oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> coord(-20, 20), power(-6, 6);
  for (const auto& aut : {heisenberg(), sol(), Automorphism::identity(2)}) {
    for (int c = 0; c < 200; ++c) {
      const auto a = el(power(rng), {coord(rng), coord(rng)});
      const auto b = el(power(rng), {coord(rng), coord(rng)});
      CHECK(multiply(aut, a, b) == word_product(aut, {a, b}));
    }
  }
}

TEST_CASE("group law properties on 1000 random cases") {
  for (const auto& aut : {heisenberg(), sol()}) {
    const auto reports = algebra_properties(aut, 20261016, 1000);
    for (const auto& r : reports) {
      INFO(r.name);
      CHECK(r.pass);
      CHECK(r.max_error == 0.0);
    }
  }
}

TEST_CASE("balls and growth") {
  const auto h = heisenberg();
  const auto b0 = ball(h, 0);
  REQUIRE(b0.size() == 1);
  CHECK(b0.lengths[0] == 0);
  CHECK(b0.elements[0] == GroupElement::identity(2));
  CHECK(ball(h, 1).size() == 7);
  const auto b4 = ball(h, 4);
  CHECK(b4.length_of(el(0, {1, 1})) == 2);  // xy = t^{-1} y t
  CHECK(b4.length_of(el(0, {2, 0})) == 2);
  CHECK(b4.length_of(el(-1, {1, -1})) == 2);
  CHECK(b4.length_of(el(0, {1000, 0})) == -1);
  const auto gh = growth_series(h, 10);
  const auto gz = growth_series(Automorphism::identity(2), 10);
  CHECK(gh[1] == 6);
  // Z^3 spheres: 4r^2 + 2 for r >= 1.
  for (int r = 1; r <= 10; ++r) CHECK(gz[static_cast<std::size_t>(r)] == 4ULL * r * r + 2);
  std::uint64_t bh = 0, bz = 0;
  for (int r = 0; r <= 8; ++r) {
    bh += gh[static_cast<std::size_t>(r)];
    bz += gz[static_cast<std::size_t>(r)];
  }
  CHECK(bh > bz);
  for (int r = 5; r <= 10; ++r) CHECK(gh[static_cast<std::size_t>(r)] > gz[static_cast<std::size_t>(r)]);
  CHECK_THROWS_AS(ball(h, 10, 100), ResourceLimit);
  CHECK_THROWS_AS(ball(h, -1), PreconditionFailed);
}
