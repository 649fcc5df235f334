#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ztel/algebra.hpp"
#include "ztel/coarse.hpp"

namespace ztel {

// One randomized or grid property check. max_error is the largest violation
// found (0 for exact identities that held everywhere).
struct PropertyReport {
  std::string name;
  std::size_t cases = 0;
  double max_error = 0.0;
  bool pass = true;
};

bool all_pass(const std::vector<PropertyReport>& reports);

// Associativity, inverses and the relator on random elements with
// coordinates in [-50, 50]; word-length symmetry on the radius-4 ball.
std::vector<PropertyReport> algebra_properties(const Automorphism& aut, std::uint64_t seed, int cases);

// Action axiom, relator on Y, integral equivariance and level preservation
// on `cases` random dyadic points; u/v round trips on `roundtrip` points.
std::vector<PropertyReport> telescope_properties(const Automorphism& aut, std::uint64_t seed, int cases,
                                                 int roundtrip);

// Unit vectors: the circle at 720 angles for n = 2, a Fibonacci lattice on
// the first three coordinates for n >= 3, and +-1 for n = 1.
std::vector<Vec> sphere_grid(int n, int count);

// Action axiom and mu preservation on `cases` random inputs, invertibility of
// t on a 720-point sphere grid, the relator, and a mutation probe (h and
// h^{-1} both replaced by m) that must break the relator.
std::vector<PropertyReport> boundary_properties(const Automorphism& aut, std::uint64_t seed, int cases);

struct CoarseReport {
  QIConstants qi;
  std::vector<PropertyReport> properties;
  std::vector<double> limit_deviations;  // theta = id, log, log(1 + psi^{-1})
  ControlFunction psi_inverse;            // built from rho(x) = 3x
};

// The coarse toolkit on the automorphism and on the synthetic rho(x) = 3x.
// Includes both bounds psi^{-1}(x) <= log3(x) + 1 and <= log3(x) + 2 on x >= 3.
CoarseReport coarse_report(const Automorphism& aut, std::uint64_t seed);

}  // namespace ztel
