#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ztel/algebra.hpp"
#include "ztel/common.hpp"
#include "ztel/telescope.hpp"

namespace ztel {

// Uniformly sampled function on [0, end()], linear between samples and
// linearly extrapolated past the last sample.
struct SampledFunction {
  double step = 1.0;
  std::vector<double> values;

  static SampledFunction constant(double value, double end, double step = 1.0);
  double operator()(double s) const;
  double end() const { return values.empty() ? 0.0 : step * static_cast<double>(values.size() - 1); }
  bool is_monotone() const;
};

enum class SlopeMode { standard, exponential };

std::string to_string(SlopeMode mode);
SlopeMode parse_slope_mode(const std::string& text);

// The bundle (lambda, eta, psi, x0) defining p(x) and the slope function.
//
// psi(s) = M(s) 3^s where M is the running maximum of max(eta, lambda, 1)/3^s,
// linearly interpolated on a fine grid and frozen past the sampled range.
// M is nondecreasing, so psi(s + 1) >= 3 psi(s) holds for every s.
class PsiSpec {
 public:
  PsiSpec(Vec x0, SampledFunction lambda, SampledFunction eta, SampledFunction envelope, SlopeMode mode);

  const Vec& x0() const { return x0_; }
  SlopeMode mode() const { return mode_; }
  const SampledFunction& lambda() const { return lambda_; }
  const SampledFunction& eta() const { return eta_; }
  const SampledFunction& envelope() const { return envelope_; }

  double log_psi(double s) const;
  double psi(double s) const { return std::exp(log_psi(s)); }
  // Smallest s >= 0 with log psi(s) = value (0 below psi(0)); accurate to 1e-12.
  double psi_inverse_of_log(double log_value) const;
  double psi_inverse(double value) const { return psi_inverse_of_log(std::log(value)); }

 private:
  Vec x0_;
  SampledFunction lambda_;
  SampledFunction eta_;
  SampledFunction envelope_;
  SlopeMode mode_;
  std::vector<double> node_log_psi_;
};

inline constexpr double kEnvelopeStep = 1.0 / 32.0;

// Largest d-bar diameter of a Euclidean ball of radius s centered at distance
// `center` from the origin, after the radial map x -> x/(1+|x|).
double radial_ball_diameter(double center, double s, int directions = 360);

// lambda(s) = c (2 s^2 + 2 s) sampled on [0, end], with c doubled until both
// lambda conditions hold for the radial compactification on the sample grid.
SampledFunction radial_lambda(double end, double step = 0.25);

// Throws EtaTooFast if eta grows faster than 3^s at the end of its table.
PsiSpec build_psi(const SampledFunction& lambda, const SampledFunction& eta, SlopeMode mode, Vec x0 = {});
PsiSpec build_psi(const Automorphism& aut, const SampledFunction& eta, SlopeMode mode);

// Standard: p = log(psi^{-1}(d + psi(0)) + 1).
// Exponential (psi replaced by Psi = e^psi): p = log(psi^{-1}(log(d + Psi(0))) + 1).
double p_value(const PsiSpec& spec, std::span<const double> x);
double p_from_log_distance(const PsiSpec& spec, double log_distance);
// Inverse of p as a function of d; +inf when d overflows log-space doubles.
double log_distance_from_p(const PsiSpec& spec, double p);

inline constexpr double kPoleTolerance = 1e-9;
inline constexpr double kHeightScale = 10.0;

// A point of X x R given by its direction from x0, its p-value and height.
// Contraction rays run far past the range of a double, so p is the
// authoritative radial coordinate here.
struct RayPoint {
  Vec direction;
  double p = 0.0;
  double r = 0.0;
};

// Finite rays only; throws Overflow when the distance does not fit a double.
ProductPoint to_product_point(const PsiSpec& spec, const RayPoint& q);

// r / p; +-inf on the axis above and below x0, 0 at (x0, 0).
double slope_from_p(double p, double r);
double slope(const PsiSpec& spec, const ProductPoint& q);
double slope(const PsiSpec& spec, const FarProductPoint& q);
double slope(const PsiSpec& spec, const RayPoint& q);

// A point <z, mu> of the suspension SZ.
struct BoundaryPoint {
  enum class Kind { finite, plus_pole, minus_pole };
  Kind kind = Kind::finite;
  Vec z;  // unit vector; zero sentinel at the poles
  double mu = 0.0;

  static BoundaryPoint make(Vec z, double mu);
  static BoundaryPoint pole(int dim, int sign);
  bool is_pole() const { return kind != Kind::finite; }
};

struct ChartPoint {
  Vec xbar;
  double s = 0.0;
  double rho = 0.0;
};

Vec radial_compactify(std::span<const double> x);

ChartPoint chart(const PsiSpec& spec, const ProductPoint& q);
ChartPoint chart(const PsiSpec& spec, const FarProductPoint& q);
ChartPoint chart(const PsiSpec& spec, const RayPoint& q);
ChartPoint chart(const BoundaryPoint& b);

// Distance to a boundary point in the coordinates its basic sets constrain:
// (xbar, tanh mu) for finite mu, (tanh mu, tanh(r/10)) at the poles.
double chart_distance(const ChartPoint& c, const BoundaryPoint& b);
double chart_distance(const ChartPoint& a, const ChartPoint& b);

struct FitResult {
  enum class Candidate { plus_pole, minus_pole, finite, none };
  double delta = kInf;
  Candidate candidate = Candidate::none;
  std::optional<BoundaryPoint> witness;

  bool fittable() const { return candidate != Candidate::none; }
};

// Smallest delta among the pole and finite candidates such that every point
// lies in U(<z, mu>, delta). delta = +inf when no candidate applies.
FitResult fits_in_basic(const PsiSpec& spec, std::span<const ProductPoint> points);

// Points of the ray from (x0, 0): p along it equals the time parameter
// (rescaled by sqrt(mu^2 + 1)), clamped at interior targets.
RayPoint contraction_ray(const PsiSpec& spec, const BoundaryPoint& target, double t);
RayPoint contraction_ray(const PsiSpec& spec, const ProductPoint& target, double t);

}  // namespace ztel
