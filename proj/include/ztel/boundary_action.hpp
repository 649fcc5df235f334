#pragma once

#include <span>
#include <vector>

#include "ztel/algebra.hpp"
#include "ztel/compactification.hpp"
#include "ztel/telescope.hpp"

namespace ztel {

// Action of Z^n x_phi Z on the suspension SZ. Translations fix the sphere at
// infinity; t acts on the sphere by the projectivized h = phi^{-1} and leaves
// mu alone; the poles are fixed by everything.
class BoundaryAction {
 public:
  explicit BoundaryAction(const Automorphism& aut);
  // h and h_inv injected directly (row-major n x n); used by mutation tests.
  BoundaryAction(int n, std::vector<double> h, std::vector<double> h_inv);

  BoundaryPoint act(const GroupElement& a, const BoundaryPoint& b) const;
  int n() const { return n_; }

 private:
  int n_;
  std::vector<double> h_;
  std::vector<double> h_inv_;
};

BoundaryPoint boundary_act(const Automorphism& aut, const GroupElement& a, const BoundaryPoint& b);

inline constexpr double kBoundaryTolerance = 1e-12;

// Same kind, |dz| <= tol and |dmu| <= tol (exact match at the poles).
bool same_boundary_point(const BoundaryPoint& a, const BoundaryPoint& b, double tol = kBoundaryTolerance);

// Compares t^{-1} o g o t (three separate boundary maps) with phi(g) = t^{-1} g t
// computed in the group.
bool relator_check(const Automorphism& aut, const BoundaryAction& action, const GroupElement& g,
                   const BoundaryPoint& b);
bool relator_check(const Automorphism& aut, const GroupElement& g, const BoundaryPoint& b);

inline constexpr double kConvergenceTolerance = 0.05;

// Max chart distance from v[x_i, floor r_i] to the limit over the last quarter
// of the sequence.
double sequence_deviation(const PsiSpec& spec, const Automorphism& aut, std::span<const TelescopePoint> seq,
                          const BoundaryPoint& limit);
double sequence_deviation(const PsiSpec& spec, const Automorphism& aut, std::span<const FarTelescopePoint> seq,
                          const BoundaryPoint& limit);

// Max chart distance from v(a [x_i, floor r_i]) to a . limit over the last
// quarter. Throws NotConverging if the input's own deviation exceeds tol.
double convergence_check(const PsiSpec& spec, const Automorphism& aut, const GroupElement& a,
                         std::span<const TelescopePoint> seq, const BoundaryPoint& limit,
                         double tol = kConvergenceTolerance);
double convergence_check(const PsiSpec& spec, const Automorphism& aut, const GroupElement& a,
                         std::span<const FarTelescopePoint> seq, const BoundaryPoint& limit,
                         double tol = kConvergenceTolerance);

}  // namespace ztel
