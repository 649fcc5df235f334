#include "ztel/coarse.hpp"

#include <algorithm>
#include <cmath>

namespace ztel {

ControlFunction ControlFunction::from_points(std::vector<double> xs, std::vector<double> ys) {
  if (xs.size() < 2 || xs.size() != ys.size()) throw PreconditionFailed("control function needs >= 2 breakpoints");
  if (xs.front() != 0.0) throw PreconditionFailed("control function must start at x = 0");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw PreconditionFailed("control breakpoints must strictly increase");
    if (ys[i] < ys[i - 1]) throw PreconditionFailed("control function must be nondecreasing");
  }
  ControlFunction f;
  f.xs_ = std::move(xs);
  f.ys_ = std::move(ys);
  return f;
}

ControlFunction ControlFunction::sample(const std::function<double(double)>& fn, double xmax, double ratio,
                                        double xmin) {
  std::vector<double> xs{0.0};
  for (double x = xmin; x < xmax * ratio; x *= ratio) xs.push_back(std::min(x, xmax));
  if (xs.back() != xmax) xs.push_back(xmax);
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (double x : xs) ys.push_back(fn(x));
  return from_points(std::move(xs), std::move(ys));
}

double ControlFunction::operator()(double x) const {
  if (x <= 0.0) return ys_.front() + (x == 0.0 ? 0.0 : (ys_[1] - ys_[0]) / (xs_[1] - xs_[0]) * x);
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t hi = static_cast<std::size_t>(it - xs_.begin());
  if (hi >= xs_.size()) hi = xs_.size() - 1;
  const std::size_t lo = hi - 1;
  const double t = (x - xs_[lo]) / (xs_[hi] - xs_[lo]);
  return ys_[lo] + t * (ys_[hi] - ys_[lo]);
}

double ControlFunction::final_slope() const {
  const std::size_t n = xs_.size();
  return (ys_[n - 1] - ys_[n - 2]) / (xs_[n - 1] - xs_[n - 2]);
}

bool ControlFunction::strictly_increasing() const {
  for (std::size_t i = 1; i < ys_.size(); ++i)
    if (!(ys_[i] > ys_[i - 1])) return false;
  return true;
}

ControlFunction ControlFunction::inverse() const {
  if (!strictly_increasing()) throw PreconditionFailed("inverse needs a strictly increasing control function");
  if (ys_.front() != 0.0) throw PreconditionFailed("inverse needs f(0) = 0");
  return from_points(ys_, xs_);
}

double ControlFunction::inverse_at(double y) const {
  if (y <= ys_.front()) return 0.0;
  if (y > ys_.back()) {
    const double slope = final_slope();
    if (!(slope > 0.0)) return kInf;
    return xs_.back() + (y - ys_.back()) / slope;
  }
  const auto it = std::lower_bound(ys_.begin(), ys_.end(), y);
  const auto hi = static_cast<std::size_t>(it - ys_.begin());
  const std::size_t lo = hi - 1;
  const double t = (y - ys_[lo]) / (ys_[hi] - ys_[lo]);
  return xs_[lo] + t * (xs_[hi] - xs_[lo]);
}

ControlFunction pointwise_min(const ControlFunction& a, const ControlFunction& b) {
  std::vector<double> xs = a.xs();
  xs.insert(xs.end(), b.xs().begin(), b.xs().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  // Past the last breakpoint both pieces are linear; one probe point catches
  // a crossing in the tail.
  xs.push_back(2.0 * xs.back() + 1.0);
  std::vector<double> out_x, out_y;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) {
      const double d0 = a(xs[i - 1]) - b(xs[i - 1]);
      const double d1 = a(xs[i]) - b(xs[i]);
      if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
        const double x = xs[i - 1] + (xs[i] - xs[i - 1]) * d0 / (d0 - d1);
        if (x > out_x.back()) {
          out_x.push_back(x);
          out_y.push_back(std::min(a(x), b(x)));
        }
      }
    }
    out_x.push_back(xs[i]);
    out_y.push_back(std::min(a(xs[i]), b(xs[i])));
  }
  for (std::size_t i = 1; i < out_y.size(); ++i) out_y[i] = std::max(out_y[i], out_y[i - 1]);
  return ControlFunction::from_points(std::move(out_x), std::move(out_y));
}

double operator_norm(std::span<const double> m, int n) {
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> v(un);
  for (std::size_t i = 0; i < un; ++i) v[i] = 1.0 / static_cast<double>(i + 1);
  double lambda = 0.0;
  for (int iter = 0; iter < 100000; ++iter) {
    std::vector<double> mv(un, 0.0), w(un, 0.0);
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = 0; j < un; ++j) mv[i] += m[i * un + j] * v[j];
    for (std::size_t i = 0; i < un; ++i)
      for (std::size_t j = 0; j < un; ++j) w[j] += m[i * un + j] * mv[i];
    const double nw = norm(w);
    if (nw == 0.0) return 0.0;
    for (std::size_t i = 0; i < un; ++i) v[i] = w[i] / nw;
    const double prev = lambda;
    lambda = nw;
    if (std::abs(lambda - prev) <= 1e-15 * lambda) break;
  }
  return std::sqrt(lambda);
}

QIConstants qi_constants(const Automorphism& aut) {
  const double a = operator_norm(aut.matrix_real(), aut.n());
  const double b = operator_norm(aut.inverse_real(), aut.n());
  return {std::max({a, b, 1.0}), 0.0};
}

ControlFunction normalize_controls(const ControlFunction& rho_minus, const ControlFunction& rho_plus) {
  std::vector<double> grid = rho_minus.xs();
  grid.insert(grid.end(), rho_plus.xs().begin(), rho_plus.xs().end());
  for (double x : grid)
    if (rho_minus(x) > rho_plus(x) + 1e-12 * (1.0 + std::abs(rho_plus(x))))
      throw InvalidPair("InvalidPair: rho_minus exceeds rho_plus at x = " + std::to_string(x));
  if (rho_minus.final_slope() > rho_plus.final_slope())
    throw InvalidPair("InvalidPair: rho_minus eventually exceeds rho_plus");
  return pointwise_min(rho_minus, rho_plus.inverse());
}

namespace {

void require_contracting(const ControlFunction& phi) {
  // phi(x) - x/2 is piecewise linear, so breakpoints plus the tail slope decide it.
  for (std::size_t i = 0; i < phi.xs().size(); ++i)
    if (phi.ys()[i] > 0.5 * phi.xs()[i] + 1e-12 * (1.0 + phi.xs()[i]))
      throw NotContracting("NotContracting: phi(x) > x/2 at x = " + std::to_string(phi.xs()[i]));
  if (phi.final_slope() > 0.5 + 1e-12) throw NotContracting("NotContracting: phi eventually exceeds x/2");
}

long long star_unchecked(const ControlFunction& phi, double x) {
  long long count = 1;
  while (x > 1.0) {
    x = phi(x);
    ++count;
  }
  return count;
}

}  // namespace

long long star(const ControlFunction& phi, double x) {
  require_contracting(phi);
  if (!std::isfinite(x)) throw PreconditionFailed("star needs a finite argument");
  return star_unchecked(phi, x);
}

ControlFunction psi_inv_from_star(const ControlFunction& rho, double xmax) {
  for (std::size_t i = 0; i < rho.xs().size(); ++i)
    if (rho.ys()[i] < 3.0 * rho.xs()[i] - 1e-12 * (1.0 + rho.xs()[i]))
      throw PreconditionFailed("rho(x) < 3x at x = " + std::to_string(rho.xs()[i]));
  if (rho.final_slope() < 3.0 - 1e-12) throw PreconditionFailed("rho eventually drops below 3x");
  const ControlFunction phi = rho.inverse();
  require_contracting(phi);

  // star(x) > m exactly when x > T_m, with T_1 = 1 and T_{m+1} = rho(T_m).
  std::vector<double> ks{1.0};
  for (double T = 1.0; T <= xmax; T = rho(T)) {
    const double j = std::floor(T);
    for (double k = j - 1.0; k <= j + 2.0; k += 1.0)
      if (k >= 1.0 && k <= xmax) ks.push_back(k);
  }
  ks.push_back(std::floor(xmax));
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  std::vector<double> xs{0.0}, ys{0.0};
  for (double k : ks) {
    xs.push_back(k);
    ys.push_back(static_cast<double>(star_unchecked(phi, k)));
  }
  return ControlFunction::from_points(std::move(xs), std::move(ys));
}

double limit_ratio_check(const std::function<double(double)>& theta, double a1, double b1, double a2, double b2,
                         std::span<const double> xs) {
  if (xs.empty()) throw PreconditionFailed("empty sample ladder");
  if (!(a1 > 0.0 && a2 > 0.0)) throw PreconditionFailed("A1 and A2 must be positive");
  std::vector<double> args;
  for (double x : xs) {
    args.push_back(std::log(a1 * x + b1));
    args.push_back(std::log(a2 * x + b2));
  }
  std::sort(args.begin(), args.end());
  for (std::size_t i = 1; i < args.size(); ++i) {
    const double d = theta(args[i]) - theta(args[i - 1]);
    if (d < -1e-12) throw PreconditionFailed("theta is not monotone on the sample arguments");
    if (i >= args.size() / 2 && args[i] > args[i - 1] && d / (args[i] - args[i - 1]) > 1.0 + 1e-9)
      throw PreconditionFailed("theta has slope > 1 on the top half of the sample arguments");
  }
  const double cut = xs.back() / 10.0;
  double worst = 0.0;
  for (double x : xs) {
    if (x < cut) continue;
    const double ratio = theta(std::log(a1 * x + b1)) / theta(std::log(a2 * x + b2));
    worst = std::max(worst, std::abs(ratio - 1.0));
  }
  return worst;
}

}  // namespace ztel
