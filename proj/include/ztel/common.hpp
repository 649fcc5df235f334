#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ztel {

using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Error hierarchy. Every failure named by an operation contract maps to one
// of these; callers that only care about "something went wrong" catch Error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotUnimodular : Error {
  using Error::Error;
};
struct Overflow : Error {
  using Error::Error;
};
struct ResourceLimit : Error {
  using Error::Error;
};
struct EtaTooFast : Error {
  using Error::Error;
};
struct InvalidPair : Error {
  using Error::Error;
};
struct NotContracting : Error {
  using Error::Error;
};
struct PreconditionFailed : Error {
  using Error::Error;
};
struct NotConverging : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline Vec normalized(std::span<const double> a) {
  const double n = norm(a);
  Vec out(a.begin(), a.end());
  if (n > 0.0)
    for (double& v : out) v /= n;
  return out;
}

// log(exp(a) + exp(b)) without overflow; either argument may be -inf.
inline double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// Mathematical floor as an integer level index (floor(-0.5) == -1).
inline long long level_of(double r) { return static_cast<long long>(std::floor(r)); }

}  // namespace ztel
