#pragma once

#include <span>
#include <vector>

#include "ztel/algebra.hpp"
#include "ztel/common.hpp"

namespace ztel {

// Canonical representative [x, r] of a point of the mapping telescope of the
// linear map f = phi on R^n. The coordinate x is taken from the domain end of
// the cylinder over [floor(r), floor(r) + 1].
struct TelescopePoint {
  Vec x;
  double r = 0.0;
  bool operator==(const TelescopePoint&) const = default;
};

// A point (x, r) of X x R.
struct ProductPoint {
  Vec x;
  double r = 0.0;
  bool operator==(const ProductPoint&) const = default;
};

struct FundamentalDomain {
  std::vector<TelescopePoint> samples;
  double step = 1.0;
};

// Exact integer matrix power m^power as a row-major double matrix (entries are
// computed in exact arithmetic and rounded once).
std::vector<double> real_power(const Automorphism& aut, long long power);

// y = M x for a row-major n x n matrix.
Vec mat_vec(std::span<const double> m, std::span<const double> x);

// Group action: t [x, r] = [x, r + 1] and g [x, r] = [phi^{floor r}(g) + x, r].
// For a = t^k g this gives [x + phi^{floor r}(g), r + k].
TelescopePoint act(const Automorphism& aut, const GroupElement& a, const TelescopePoint& p);

// Straightening map. In the linear case h = f^{-1} exactly, so the homotopies
// used for general phi-variant maps are identities and v[x, r] = (f^{-floor r} x, r).
ProductPoint v_map(const Automorphism& aut, const TelescopePoint& p);

// Inverse of v_map: u(x, r) = [f^{floor r} x, r].
TelescopePoint u_map(const Automorphism& aut, const ProductPoint& q);

// Translation of X x R by g in the first factor.
ProductPoint act_product(std::span<const mpz_class> g, const ProductPoint& q);

// Each cylinder line x x [k, k+1] sent linearly onto the segment from (x, k) to
// (f(x), k + 1). Returns the point of R^{n+1}.
Vec embed_straightline(const Automorphism& aut, const TelescopePoint& p);

// Grid of the sub-cylinder over [0,1]^n x [0,1] with the given pitch. The
// r = 1 face is the range end, stored canonically as [f(x), 1].
FundamentalDomain fundamental_domain(const Automorphism& aut, double step);

// e^{log_norm} * unit. Used for points too far out to hold in a double; linear
// maps and translations act on it without overflow.
struct ScaledVector {
  Vec unit;
  double log_norm = -kInf;  // -inf encodes the zero vector

  static ScaledVector from_vector(std::span<const double> x);
  static ScaledVector from_polar(Vec direction, double log_norm);
  Vec to_vector() const;
  ScaledVector transformed(std::span<const double> m) const;
  ScaledVector translated(std::span<const double> g) const;
};

struct FarTelescopePoint {
  ScaledVector x;
  double r = 0.0;
};

struct FarProductPoint {
  ScaledVector x;
  double r = 0.0;
};

TelescopePoint to_telescope_point(const FarTelescopePoint& p);
FarTelescopePoint to_far(const TelescopePoint& p);
FarTelescopePoint act(const Automorphism& aut, const GroupElement& a, const FarTelescopePoint& p);
FarProductPoint v_map(const Automorphism& aut, const FarTelescopePoint& p);
FarTelescopePoint u_map(const Automorphism& aut, const FarProductPoint& q);

}  // namespace ztel
