#include "ztel/boundary_action.hpp"

#include <algorithm>

namespace ztel {

BoundaryAction::BoundaryAction(const Automorphism& aut)
    : n_(aut.n()), h_(aut.inverse_real().begin(), aut.inverse_real().end()),
      h_inv_(aut.matrix_real().begin(), aut.matrix_real().end()) {}

BoundaryAction::BoundaryAction(int n, std::vector<double> h, std::vector<double> h_inv)
    : n_(n), h_(std::move(h)), h_inv_(std::move(h_inv)) {
  const auto size = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (h_.size() != size || h_inv_.size() != size) throw PreconditionFailed("boundary matrices have wrong size");
}

BoundaryPoint BoundaryAction::act(const GroupElement& a, const BoundaryPoint& b) const {
  if (b.is_pole()) return b;
  const auto& m = a.k >= 0 ? h_ : h_inv_;
  Vec z = b.z;
  // Normalizing every step keeps long powers in range.
  for (long long s = 0; s < std::abs(a.k); ++s) z = normalized(mat_vec(m, z));
  return BoundaryPoint::make(std::move(z), b.mu);
}

BoundaryPoint boundary_act(const Automorphism& aut, const GroupElement& a, const BoundaryPoint& b) {
  return BoundaryAction(aut).act(a, b);
}

bool same_boundary_point(const BoundaryPoint& a, const BoundaryPoint& b, double tol) {
  if (a.kind != b.kind) return false;
  if (a.is_pole()) return true;
  return distance(a.z, b.z) <= tol && std::abs(a.mu - b.mu) <= tol;
}

bool relator_check(const Automorphism& aut, const BoundaryAction& action, const GroupElement& g,
                   const BoundaryPoint& b) {
  const int n = aut.n();
  const GroupElement t = GroupElement::t_power(n, 1);
  const GroupElement t_inv = GroupElement::t_power(n, -1);
  const BoundaryPoint lhs = action.act(t_inv, action.act(g, action.act(t, b)));
  const GroupElement phi_g = multiply(aut, t_inv, multiply(aut, g, t));
  return same_boundary_point(lhs, action.act(phi_g, b));
}

bool relator_check(const Automorphism& aut, const GroupElement& g, const BoundaryPoint& b) {
  return relator_check(aut, BoundaryAction(aut), g, b);
}

namespace {

std::size_t tail_start(std::size_t size) {
  if (size == 0) throw PreconditionFailed("empty sequence");
  return size - std::max<std::size_t>(1, size / 4);
}

TelescopePoint integral(const TelescopePoint& p) { return {p.x, std::floor(p.r)}; }
FarTelescopePoint integral(const FarTelescopePoint& p) { return {p.x, std::floor(p.r)}; }

template <typename Point>
double tail_deviation(const PsiSpec& spec, const Automorphism& aut, const GroupElement& a,
                      std::span<const Point> seq, const BoundaryPoint& target) {
  double worst = 0.0;
  for (std::size_t i = tail_start(seq.size()); i < seq.size(); ++i) {
    const auto q = v_map(aut, act(aut, a, integral(seq[i])));
    worst = std::max(worst, chart_distance(chart(spec, q), target));
  }
  return worst;
}

template <typename Point>
double checked_convergence(const PsiSpec& spec, const Automorphism& aut, const GroupElement& a,
                           std::span<const Point> seq, const BoundaryPoint& limit, double tol) {
  const GroupElement id = GroupElement::identity(aut.n());
  const double own = tail_deviation(spec, aut, id, seq, limit);
  if (!(own <= tol))
    throw NotConverging("NotConverging: input sequence is " + std::to_string(own) + " from its limit");
  return tail_deviation(spec, aut, a, seq, boundary_act(aut, a, limit));
}

}  // namespace

double sequence_deviation(const PsiSpec& spec, const Automorphism& aut, std::span<const TelescopePoint> seq,
                          const BoundaryPoint& limit) {
  return tail_deviation(spec, aut, GroupElement::identity(aut.n()), seq, limit);
}

double sequence_deviation(const PsiSpec& spec, const Automorphism& aut, std::span<const FarTelescopePoint> seq,
                          const BoundaryPoint& limit) {
  return tail_deviation(spec, aut, GroupElement::identity(aut.n()), seq, limit);
}

double convergence_check(const PsiSpec& spec, const Automorphism& aut, const GroupElement& a,
                         std::span<const TelescopePoint> seq, const BoundaryPoint& limit, double tol) {
  return checked_convergence(spec, aut, a, seq, limit, tol);
}

double convergence_check(const PsiSpec& spec, const Automorphism& aut, const GroupElement& a,
                         std::span<const FarTelescopePoint> seq, const BoundaryPoint& limit, double tol) {
  return checked_convergence(spec, aut, a, seq, limit, tol);
}

}  // namespace ztel
