#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ztel/algebra.hpp"
#include "ztel/common.hpp"

namespace ztel {

// Continuous nondecreasing piecewise-linear function on [0, inf), given by
// breakpoints and extended linearly past the last one. Flat segments are
// allowed; inverse() needs strict increase.
class ControlFunction {
 public:
  ControlFunction() = default;
  // xs strictly increasing starting at 0, ys nondecreasing.
  static ControlFunction from_points(std::vector<double> xs, std::vector<double> ys);
  // Samples fn at 0 and on a geometric grid from xmin to xmax.
  static ControlFunction sample(const std::function<double(double)>& fn, double xmax, double ratio = 1.1,
                                double xmin = 1e-3);
  static ControlFunction identity() { return from_points({0.0, 1.0}, {0.0, 1.0}); }
  static ControlFunction linear(double slope) { return from_points({0.0, 1.0}, {0.0, slope}); }

  double operator()(double x) const;
  // Exact inverse of a strictly increasing function.
  ControlFunction inverse() const;
  // Smallest x with f(x) >= y (generalized inverse, valid with flat segments).
  double inverse_at(double y) const;

  bool strictly_increasing() const;
  double final_slope() const;
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

// Pointwise minimum, exact: breakpoints of both plus the crossings.
ControlFunction pointwise_min(const ControlFunction& a, const ControlFunction& b);

struct QIConstants {
  double K = 1.0;
  double eps = 0.0;
};

// Largest singular value of a row-major n x n matrix, by power iteration on M^T M.
double operator_norm(std::span<const double> m, int n);

// K = max(|m|, |m^{-1}|), eps = 0: (1/K) d(x,y) <= d(f x, f y) <= K d(x,y).
QIConstants qi_constants(const Automorphism& aut);

// rho = min(rho_minus, rho_plus^{-1}). Throws InvalidPair if rho_minus > rho_plus
// at a breakpoint of either function.
ControlFunction normalize_controls(const ControlFunction& rho_minus, const ControlFunction& rho_plus);

// phi*(x) = 1 if x <= 1, else 1 + phi*(phi(x)). Throws NotContracting unless
// phi(x) <= x/2 everywhere (checked exactly at the breakpoints and the tail).
long long star(const ControlFunction& phi, double x);

// The piecewise-linear function through (0, 0) and (k, (rho^{-1})*(k)) for
// integers 1 <= k <= xmax. Only the jumps of the star function carry
// breakpoints; the interpolant is flat between them. Throws
// PreconditionFailed unless rho(x) >= 3x.
ControlFunction psi_inv_from_star(const ControlFunction& rho, double xmax = 1e15);

// max |theta(log(A1 x + B1)) / theta(log(A2 x + B2)) - 1| over xs >= xs.back()/10.
// Throws PreconditionFailed if theta decreases along the arguments or has
// secant slope > 1 on the top half of them.
double limit_ratio_check(const std::function<double(double)>& theta, double a1, double b1, double a2, double b2,
                         std::span<const double> xs);

}  // namespace ztel
