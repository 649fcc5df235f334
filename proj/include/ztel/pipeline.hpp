#pragma once

#include <string>
#include <vector>

#include "ztel/algebra.hpp"
#include "ztel/boundary_action.hpp"
#include "ztel/compactification.hpp"
#include "ztel/config.hpp"
#include "ztel/telescope.hpp"

namespace ztel {

struct Fixture {
  Automorphism aut;
  FundamentalDomain domain;
  SampledFunction eta;
  PsiSpec spec;
};

Fixture make_fixture(const Automorphism& aut, SlopeMode mode, double domain_step, int eta_kmax);
Fixture make_fixture(const ExperimentConfig& cfg);

inline Automorphism heisenberg() { return Automorphism::make({{1, 1}, {0, 1}}); }
inline Automorphism sol() { return Automorphism::make({{2, 1}, {1, 1}}); }

// Grid of B[center, radius] x [k, k+1] in X x R: the center, `rings` circles
// of `directions` points each (first two coordinates; the rest are held at
// the center), at heights k, k + 1/2, k + 1.
std::vector<ProductPoint> box_samples(const Vec& center, double radius, double k, int directions = 48,
                                      int rings = 6);

struct PrescribedSequence {
  std::string name;
  GroupElement a;
  std::vector<FarTelescopePoint> points;
  BoundaryPoint limit;
};

// Points [x_i, r_i] whose straightened images v[x_i, r_i] = (y_i, r_i) lie on
// the ray toward <z, mu>: |y_i| chosen so that p(y_i) = i/|mu|, r_i = sign(mu) i.
std::vector<FarTelescopePoint> slope_ray_sequence(const PsiSpec& spec, const Automorphism& aut, const Vec& z,
                                                  double mu, int count);

// Largest r <= limit with |M^r| |M^{-r}| <= max_condition (Frobenius norms).
// Telescope coordinates at higher levels do not survive a round trip in doubles.
int stable_level_cap(const Automorphism& aut, double max_condition = 1e8, int limit = 200);

// The three sequences used to check that the action extends continuously:
//   translation  x_i = 2^i z0 at height 0, acted on by a translation;
//   t_shift      slope-2 ray, acted on by t;
//   mixed        slope -2 ray, acted on by t^{-2} g.
// Ray heights stop at stable_level_cap.
std::vector<PrescribedSequence> prescribed_sequences(const PsiSpec& spec, const Automorphism& aut);

}  // namespace ztel
