#include "ztel/algebra.hpp"

#include <algorithm>
#include <sstream>

#include "ztel/kernels.hpp"

namespace ztel {

namespace {

std::int64_t to_int64(const mpz_class& v) {
  if (!v.fits_slong_p()) throw Overflow("matrix entry does not fit in 64 bits");
  return v.get_si();
}

}  // namespace

Automorphism Automorphism::make(const std::vector<std::vector<std::int64_t>>& rows) {
  const auto n = rows.size();
  if (n == 0) throw PreconditionFailed("automorphism matrix is empty");
  for (const auto& row : rows)
    if (row.size() != n) throw PreconditionFailed("automorphism matrix is not square");

  // Gauss-Jordan over Q on [M | I]; gives det and the inverse together.
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = mpz_class(static_cast<long>(rows[i][j]));
    a[i][n + i] = 1;
  }
  mpq_class det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw NotUnimodular("NotUnimodular: matrix is singular (det = 0)");
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    const mpq_class p = a[col][col];
    det *= p;
    for (auto& v : a[col]) v /= p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const mpq_class f = a[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  if (det != 1 && det != -1) {
    std::ostringstream msg;
    msg << "NotUnimodular: |det| = " << mpq_class(abs(det)).get_str() << ", expected 1";
    throw NotUnimodular(msg.str());
  }

  Automorphism out;
  out.n_ = static_cast<int>(n);
  out.det_ = det == 1 ? 1 : -1;
  out.m_.reserve(n * n);
  out.m_inv_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.m_.push_back(rows[i][j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // With |det| = 1 the inverse is the adjugate up to sign, hence integral.
      out.m_inv_.push_back(to_int64(a[i][n + j].get_num()));
    }
  out.m_real_.assign(out.m_.begin(), out.m_.end());
  out.m_inv_real_.assign(out.m_inv_.begin(), out.m_inv_.end());
  return out;
}

Automorphism Automorphism::identity(int n) {
  std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(n),
                                              std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return make(rows);
}

std::vector<std::vector<std::int64_t>> Automorphism::rows() const {
  std::vector<std::vector<std::int64_t>> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)].push_back(at(i, j));
  return out;
}

std::vector<std::vector<std::int64_t>> Automorphism::inverse_rows() const {
  std::vector<std::vector<std::int64_t>> out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)].push_back(inv_at(i, j));
  return out;
}

IntVector apply_phi(const Automorphism& aut, long long power, std::span<const mpz_class> g) {
  const int n = aut.n();
  const auto mat = power >= 0 ? aut.matrix() : aut.inverse_matrix();
  IntVector cur(g.begin(), g.end());
  IntVector next(static_cast<std::size_t>(n));
  const long long steps = power >= 0 ? power : -power;
  for (long long s = 0; s < steps; ++s) {
    for (int i = 0; i < n; ++i) {
      mpz_class acc = 0;
      for (int j = 0; j < n; ++j) {
        const auto e = mat[static_cast<std::size_t>(i * n + j)];
        if (e != 0) acc += mpz_class(static_cast<long>(e)) * cur[static_cast<std::size_t>(j)];
      }
      next[static_cast<std::size_t>(i)] = std::move(acc);
    }
    cur.swap(next);
  }
  return cur;
}

GroupElement GroupElement::from_ints(long long k, std::span<const long long> g) {
  GroupElement out{k, {}};
  out.g.reserve(g.size());
  for (long long v : g) out.g.emplace_back(static_cast<long>(v));
  return out;
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << "(" << k << ",(";
  for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i].get_str();
  os << "))";
  return os.str();
}

std::size_t GroupElementHash::operator()(const GroupElement& a) const {
  std::size_t h = std::hash<long long>{}(a.k);
  for (const auto& v : a.g) {
    const std::size_t hv = std::hash<std::string>{}(v.get_str(16));
    h ^= hv + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

GroupElement multiply(const Automorphism& aut, const GroupElement& a, const GroupElement& b) {
  GroupElement out{a.k + b.k, apply_phi(aut, b.k, a.g)};
  for (std::size_t i = 0; i < out.g.size(); ++i) out.g[i] += b.g[i];
  return out;
}

GroupElement inverse(const Automorphism& aut, const GroupElement& a) {
  GroupElement out{-a.k, apply_phi(aut, -a.k, a.g)};
  for (auto& v : out.g) v = -v;
  return out;
}

int WordBall::length_of(const GroupElement& a) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == a) return lengths[i];
  return -1;
}

WordBall ball(const Automorphism& aut, int radius, std::size_t budget) {
  if (radius < 0) throw PreconditionFailed("ball radius must be >= 0");
  const auto spheres = kernels::parallel::bfs_spheres(aut, radius, budget);
  WordBall out;
  for (std::size_t r = 0; r < spheres.size(); ++r) {
    for (const auto& e : spheres[r]) {
      GroupElement a{e[0], {}};
      for (int i = 0; i < aut.n(); ++i) a.g.emplace_back(static_cast<long>(e[static_cast<std::size_t>(i + 1)]));
      out.elements.push_back(std::move(a));
      out.lengths.push_back(static_cast<int>(r));
    }
  }
  return out;
}

std::vector<std::uint64_t> growth_series(const Automorphism& aut, int max_radius, std::size_t budget) {
  if (max_radius < 0) throw PreconditionFailed("growth radius must be >= 0");
  const auto spheres = kernels::parallel::bfs_spheres(aut, max_radius, budget);
  std::vector<std::uint64_t> counts;
  counts.reserve(spheres.size());
  for (const auto& s : spheres) counts.push_back(s.size());
  return counts;
}

}  // namespace ztel
