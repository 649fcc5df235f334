#include <doctest.h>

#include <random>

#include "ztel/kernels.hpp"
#include "ztel/pipeline.hpp"

using namespace ztel;

TEST_CASE("bfs serial and parallel agree") {
  for (const auto& aut : {heisenberg(), sol(), Automorphism::identity(3)}) {
    const auto s = kernels::serial::bfs_spheres(aut, 9, kDefaultElementBudget);
    const auto p = kernels::parallel::bfs_spheres(aut, 9, kDefaultElementBudget);
    CHECK(s == p);
  }
}

TEST_CASE("bfs overflow is reported") {
  const auto big = Automorphism::make({{1LL << 40, (1LL << 40) - 1}, {1, 1}});
  CHECK_THROWS_AS(kernels::serial::bfs_spheres(big, 3, kDefaultElementBudget), Overflow);
  CHECK_THROWS_AS(kernels::parallel::bfs_spheres(big, 3, kDefaultElementBudget), Overflow);
}

TEST_CASE("diameter kernels agree with brute force") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd(0.0, 10.0);
  std::vector<ProductPoint> pts;
  std::vector<Vec> vecs;
  for (int i = 0; i < 300; ++i) {
    pts.push_back({{nd(rng), nd(rng)}, nd(rng)});
    vecs.push_back({nd(rng), nd(rng), nd(rng)});
  }
  double brute = 0.0;
  for (const auto& a : pts)
    for (const auto& b : pts)
      brute = std::max(brute, std::abs(a.x[0] - b.x[0]) + std::abs(a.x[1] - b.x[1]) + std::abs(a.r - b.r));
  CHECK(kernels::serial::l1_diameter(pts) == doctest::Approx(brute).epsilon(1e-12));
  CHECK(kernels::parallel::l1_diameter(pts) == kernels::serial::l1_diameter(pts));
  CHECK(kernels::parallel::max_pairwise_distance(vecs) == kernels::serial::max_pairwise_distance(vecs));
  CHECK(kernels::serial::l1_diameter(std::vector<ProductPoint>{}) == 0.0);
}

TEST_CASE("straightened translates serial and parallel agree") {
  const auto aut = sol();
  const auto dom = fundamental_domain(aut, 0.25);
  for (const auto& a : {GroupElement::from_ints(5, std::vector<long long>{3, -2}),
                        GroupElement::from_ints(-7, std::vector<long long>{0, 1})}) {
    const auto s = kernels::serial::straightened_translates(aut, a, dom.samples);
    const auto p = kernels::parallel::straightened_translates(aut, a, dom.samples);
    CHECK(s == p);
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == v_map(aut, act(aut, a, dom.samples[i])));
  }
}
