#include <doctest.h>

#include "ztel/boundary_action.hpp"
#include "ztel/checks.hpp"
#include "ztel/pipeline.hpp"

using namespace ztel;

TEST_CASE("boundary action examples") {
  const auto h = heisenberg();
  const auto b = BoundaryPoint::make({0.6, 0.8}, 0.3);
  const auto g = GroupElement::from_ints(0, std::vector<long long>{17, -4});
  CHECK(same_boundary_point(boundary_act(h, g, b), b));
  const auto tb = boundary_act(h, GroupElement::t_power(2, 1), BoundaryPoint::make({0, 1}, 0.7));
  CHECK(tb.z[0] == doctest::Approx(-1 / std::sqrt(2.0)));
  CHECK(tb.z[1] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(tb.mu == 0.7);
  const auto pole = BoundaryPoint::pole(2, +1);
  CHECK(boundary_act(h, GroupElement::t_power(2, 1), pole).kind == BoundaryPoint::Kind::plus_pole);
  CHECK(boundary_act(h, GroupElement::t_power(2, -3), BoundaryPoint::pole(2, -1)).kind ==
        BoundaryPoint::Kind::minus_pole);
}

TEST_CASE("relator on the boundary") {
  const auto h = heisenberg();
  const auto b = BoundaryPoint::make({0.6, 0.8}, -1.2);
  CHECK(relator_check(h, GroupElement::from_ints(0, std::vector<long long>{3, 5}), b));
  CHECK(relator_check(h, GroupElement::t_power(2, 1), b));
  CHECK(relator_check(h, GroupElement::from_ints(2, std::vector<long long>{1, -1}), b));
  // h and h^{-1} both replaced by m.
  const std::vector<double> m(h.matrix_real().begin(), h.matrix_real().end());
  const BoundaryAction broken(2, m, m);
  CHECK_FALSE(relator_check(h, broken, GroupElement::t_power(2, 1), b));
}

TEST_CASE("boundary properties") {
  for (const auto& aut : {heisenberg(), sol()}) {
    const auto reports = boundary_properties(aut, 9, 200);
    for (const auto& r : reports) {
      INFO(r.name);
      CHECK(r.pass);
    }
    CHECK(reports[2].cases == 720);
  }
}

TEST_CASE("convergence along prescribed sequences") {
  for (const auto& aut : {heisenberg(), sol()}) {
    const auto fx = make_fixture(aut, SlopeMode::standard, 0.25, 64);
    const auto seqs = prescribed_sequences(fx.spec, aut);
    REQUIRE(seqs.size() == 3);
    for (const auto& s : seqs) {
      INFO(s.name);
      CHECK(convergence_check(fx.spec, aut, s.a, s.points, s.limit) < kConvergenceTolerance);
      // The identity leaves the deviation as it was.
      CHECK(convergence_check(fx.spec, aut, GroupElement::identity(2), s.points, s.limit) ==
            doctest::Approx(sequence_deviation(fx.spec, aut, s.points, s.limit)));
    }
  }
}

TEST_CASE("convergence check rejects a sequence that does not converge") {
  const auto fx = make_fixture(heisenberg(), SlopeMode::standard, 0.25, 16);
  std::vector<TelescopePoint> seq;
  for (int i = 0; i < 20; ++i) seq.push_back({{i % 2 ? 1e6 : -1e6, 0.0}, 0.0});
  CHECK_THROWS_AS(convergence_check(fx.spec, fx.aut, GroupElement::identity(2), seq, BoundaryPoint::make({1, 0}, 0)),
                  NotConverging);
}

TEST_CASE("stable level cap") {
  CHECK(stable_level_cap(heisenberg()) == 200);
  const int cap = stable_level_cap(sol());
  CHECK(cap >= 5);
  CHECK(cap <= 12);
}
