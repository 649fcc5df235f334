#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "ztel/common.hpp"

namespace ztel {

using IntVector = std::vector<mpz_class>;

// A unimodular integer matrix together with its exact integer inverse.
// This is the automorphism phi of Z^n; the semidirect product relation is
// t^{-1} g t = phi(g) = m * g.
class Automorphism {
 public:
  // Throws NotUnimodular unless |det| == 1, PreconditionFailed on a ragged or
  // empty matrix.
  static Automorphism make(const std::vector<std::vector<std::int64_t>>& rows);
  static Automorphism identity(int n);

  int n() const { return n_; }
  std::int64_t at(int i, int j) const { return m_[static_cast<std::size_t>(i * n_ + j)]; }
  std::int64_t inv_at(int i, int j) const { return m_inv_[static_cast<std::size_t>(i * n_ + j)]; }
  int det() const { return det_; }

  std::span<const std::int64_t> matrix() const { return m_; }
  std::span<const std::int64_t> inverse_matrix() const { return m_inv_; }
  std::vector<std::vector<std::int64_t>> rows() const;
  std::vector<std::vector<std::int64_t>> inverse_rows() const;

  // Row-major double copies used by the real-valued (telescope) side.
  std::span<const double> matrix_real() const { return m_real_; }
  std::span<const double> inverse_real() const { return m_inv_real_; }

  bool operator==(const Automorphism& o) const { return n_ == o.n_ && m_ == o.m_; }

 private:
  int n_ = 0;
  int det_ = 1;
  std::vector<std::int64_t> m_;
  std::vector<std::int64_t> m_inv_;
  std::vector<double> m_real_;
  std::vector<double> m_inv_real_;
};

// m^power * g, exact. Negative powers use the inverse matrix.
IntVector apply_phi(const Automorphism& aut, long long power, std::span<const mpz_class> g);

// Normal form t^k g of an element of Z^n x|_phi Z.
struct GroupElement {
  long long k = 0;
  IntVector g;

  static GroupElement identity(int n) { return {0, IntVector(static_cast<std::size_t>(n), 0)}; }
  static GroupElement t_power(int n, long long k) { return {k, IntVector(static_cast<std::size_t>(n), 0)}; }
  static GroupElement embed(IntVector g) { return {0, std::move(g)}; }
  static GroupElement from_ints(long long k, std::span<const long long> g);

  bool operator==(const GroupElement&) const = default;
  std::string to_string() const;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& a) const;
};

// Derivation of the law: from t^{-1} g t = phi(g) we get g t = t phi(g), hence
// g t^m = t^m phi^m(g) and
//   (t^k g)(t^m h) = t^k (g t^m) h = t^{k+m} (phi^m(g) + h).
GroupElement multiply(const Automorphism& aut, const GroupElement& a, const GroupElement& b);

// (t^k g)^{-1} = t^{-k} (-phi^{-k}(g)).
GroupElement inverse(const Automorphism& aut, const GroupElement& a);

inline constexpr std::size_t kDefaultElementBudget = 10'000'000;

struct WordBall {
  std::vector<GroupElement> elements;  // sorted by (length, k, g)
  std::vector<int> lengths;

  std::size_t size() const { return elements.size(); }
  // -1 when the element is not in the ball.
  int length_of(const GroupElement& a) const;
};

// Exact word lengths with respect to {e_1..e_n, t}^{+-1} for every element of
// length <= radius. Throws ResourceLimit past the element budget.
WordBall ball(const Automorphism& aut, int radius, std::size_t budget = kDefaultElementBudget);

// counts[r] = number of elements of word length exactly r, for r = 0..max_radius.
std::vector<std::uint64_t> growth_series(const Automorphism& aut, int max_radius,
                                         std::size_t budget = kDefaultElementBudget);

}  // namespace ztel
