#include "ztel/telescope.hpp"

#include <algorithm>
#include <cmath>

namespace ztel {

namespace {

std::vector<mpz_class> identity_matrix(int n) {
  std::vector<mpz_class> id(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i * n + i)] = 1;
  return id;
}

Vec translation_at_level(const Automorphism& aut, long long level, std::span<const mpz_class> g) {
  const IntVector moved = apply_phi(aut, level, g);
  Vec out;
  out.reserve(moved.size());
  for (const auto& v : moved) out.push_back(v.get_d());
  return out;
}

}  // namespace

std::vector<double> real_power(const Automorphism& aut, long long power) {
  const int n = aut.n();
  const auto base = power >= 0 ? aut.matrix() : aut.inverse_matrix();
  const long long steps = power >= 0 ? power : -power;
  std::vector<mpz_class> acc = identity_matrix(n);
  std::vector<mpz_class> next(acc.size());
  for (long long s = 0; s < steps; ++s) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        mpz_class v = 0;
        for (int l = 0; l < n; ++l) {
          const auto e = base[static_cast<std::size_t>(i * n + l)];
          if (e != 0) v += mpz_class(static_cast<long>(e)) * acc[static_cast<std::size_t>(l * n + j)];
        }
        next[static_cast<std::size_t>(i * n + j)] = std::move(v);
      }
    acc.swap(next);
  }
  std::vector<double> out;
  out.reserve(acc.size());
  for (const auto& v : acc) out.push_back(v.get_d());
  return out;
}

Vec mat_vec(std::span<const double> m, std::span<const double> x) {
  const std::size_t n = x.size();
  Vec y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += m[i * n + j] * x[j];
    y[i] = s;
  }
  return y;
}

TelescopePoint act(const Automorphism& aut, const GroupElement& a, const TelescopePoint& p) {
  const Vec shift = translation_at_level(aut, level_of(p.r), a.g);
  TelescopePoint out{p.x, p.r + static_cast<double>(a.k)};
  for (std::size_t i = 0; i < out.x.size(); ++i) out.x[i] += shift[i];
  return out;
}

ProductPoint v_map(const Automorphism& aut, const TelescopePoint& p) {
  const long long k = level_of(p.r);
  if (k == 0) return {p.x, p.r};
  return {mat_vec(real_power(aut, -k), p.x), p.r};
}

TelescopePoint u_map(const Automorphism& aut, const ProductPoint& q) {
  const long long k = level_of(q.r);
  if (k == 0) return {q.x, q.r};
  return {mat_vec(real_power(aut, k), q.x), q.r};
}

ProductPoint act_product(std::span<const mpz_class> g, const ProductPoint& q) {
  ProductPoint out = q;
  for (std::size_t i = 0; i < out.x.size(); ++i) out.x[i] += g[i].get_d();
  return out;
}

Vec embed_straightline(const Automorphism& aut, const TelescopePoint& p) {
  const double k = std::floor(p.r);
  const double s = p.r - k;
  const Vec fx = mat_vec(aut.matrix_real(), p.x);
  Vec out(p.x.size() + 1);
  for (std::size_t i = 0; i < p.x.size(); ++i) out[i] = (1.0 - s) * p.x[i] + s * fx[i];
  out.back() = p.r;
  return out;
}

FundamentalDomain fundamental_domain(const Automorphism& aut, double step) {
  if (!(step > 0.0 && step <= 1.0)) throw PreconditionFailed("domain step must lie in (0, 1]");
  std::vector<double> ticks;
  const int count = static_cast<int>(std::floor(1.0 / step + 1e-9));
  for (int j = 0; j <= count; ++j) ticks.push_back(std::min(1.0, j * step));
  if (ticks.back() < 1.0 - 1e-12) ticks.push_back(1.0);

  const auto n = static_cast<std::size_t>(aut.n());
  FundamentalDomain dom;
  dom.step = step;
  std::vector<std::size_t> idx(n, 0);
  // Odometer over the cube grid; r is the outermost coordinate.
  for (double r : ticks) {
    std::fill(idx.begin(), idx.end(), 0);
    while (true) {
      Vec x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = ticks[idx[i]];
      if (r == 1.0) x = mat_vec(aut.matrix_real(), x);
      dom.samples.push_back({std::move(x), r});
      std::size_t i = 0;
      while (i < n && ++idx[i] == ticks.size()) idx[i++] = 0;
      if (i == n) break;
    }
  }
  return dom;
}

ScaledVector ScaledVector::from_vector(std::span<const double> x) {
  const double nx = norm(x);
  ScaledVector out;
  if (nx == 0.0) {
    out.unit.assign(x.size(), 0.0);
    out.log_norm = -kInf;
    return out;
  }
  out.unit.assign(x.begin(), x.end());
  for (double& v : out.unit) v /= nx;
  out.log_norm = std::log(nx);
  return out;
}

ScaledVector ScaledVector::from_polar(Vec direction, double log_norm) {
  ScaledVector out{normalized(direction), log_norm};
  return out;
}

Vec ScaledVector::to_vector() const {
  Vec out = unit;
  const double scale = std::exp(log_norm);
  for (double& v : out) v *= scale;
  return out;
}

ScaledVector ScaledVector::transformed(std::span<const double> m) const {
  if (log_norm == -kInf) return *this;
  const Vec w = mat_vec(m, unit);
  const double nw = norm(w);
  if (nw == 0.0) return {Vec(unit.size(), 0.0), -kInf};
  ScaledVector out{w, log_norm + std::log(nw)};
  for (double& v : out.unit) v /= nw;
  return out;
}

ScaledVector ScaledVector::translated(std::span<const double> g) const {
  if (log_norm == -kInf) return from_vector(g);
  // e^L u + g = e^L (u + e^{-L} g)
  const double shrink = std::exp(-log_norm);
  Vec w = unit;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += shrink * g[i];
  const double nw = norm(w);
  if (nw == 0.0) return {Vec(unit.size(), 0.0), -kInf};
  ScaledVector out{w, log_norm + std::log(nw)};
  for (double& v : out.unit) v /= nw;
  return out;
}

TelescopePoint to_telescope_point(const FarTelescopePoint& p) { return {p.x.to_vector(), p.r}; }

FarTelescopePoint to_far(const TelescopePoint& p) { return {ScaledVector::from_vector(p.x), p.r}; }

FarTelescopePoint act(const Automorphism& aut, const GroupElement& a, const FarTelescopePoint& p) {
  const Vec shift = translation_at_level(aut, level_of(p.r), a.g);
  return {p.x.translated(shift), p.r + static_cast<double>(a.k)};
}

FarProductPoint v_map(const Automorphism& aut, const FarTelescopePoint& p) {
  const long long k = level_of(p.r);
  if (k == 0) return {p.x, p.r};
  return {p.x.transformed(real_power(aut, -k)), p.r};
}

FarTelescopePoint u_map(const Automorphism& aut, const FarProductPoint& q) {
  const long long k = level_of(q.r);
  if (k == 0) return {q.x, q.r};
  return {q.x.transformed(real_power(aut, k)), q.r};
}

}  // namespace ztel
