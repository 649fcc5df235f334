#include "ztel/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <unordered_set>

#include <omp.h>

namespace ztel::kernels {

std::size_t PackedHash::operator()(const PackedElement& e) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::int64_t v : e) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

void configure_threads_from_env() {
  if (const char* env = std::getenv("ZTEL_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

namespace {

using VisitedSet = std::unordered_set<PackedElement, PackedHash>;

struct BfsContext {
  int n;
  std::vector<std::int64_t> fwd;
  std::vector<std::int64_t> inv;
};

BfsContext make_context(const Automorphism& aut) {
  if (aut.n() > kMaxBfsRank)
    throw PreconditionFailed("BFS supports rank <= " + std::to_string(kMaxBfsRank));
  return {aut.n(), {aut.matrix().begin(), aut.matrix().end()},
          {aut.inverse_matrix().begin(), aut.inverse_matrix().end()}};
}

// Right multiplication by a generator: (k, g) e_i^{+-1} = (k, g +- e_i) and
// (k, g) t^{+-1} = (k +- 1, phi^{+-1}(g)). Returns false on 64-bit overflow.
bool neighbor(const BfsContext& ctx, const PackedElement& e, int gen, PackedElement& out) {
  out = e;
  const int n = ctx.n;
  if (gen < 2 * n) {
    const int axis = gen / 2;
    const std::int64_t delta = (gen % 2 == 0) ? 1 : -1;
    return !__builtin_add_overflow(e[static_cast<std::size_t>(axis + 1)], delta,
                                   &out[static_cast<std::size_t>(axis + 1)]);
  }
  const bool forward = gen == 2 * n;
  const auto& m = forward ? ctx.fwd : ctx.inv;
  if (__builtin_add_overflow(e[0], forward ? 1 : -1, &out[0])) return false;
  for (int i = 0; i < n; ++i) {
    std::int64_t acc = 0;
    for (int j = 0; j < n; ++j) {
      std::int64_t prod = 0;
      if (__builtin_mul_overflow(m[static_cast<std::size_t>(i * n + j)], e[static_cast<std::size_t>(j + 1)], &prod))
        return false;
      if (__builtin_add_overflow(acc, prod, &acc)) return false;
    }
    out[static_cast<std::size_t>(i + 1)] = acc;
  }
  return true;
}

void finish_level(std::vector<PackedElement>& next, VisitedSet& visited, std::size_t& total, std::size_t budget) {
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  total += next.size();
  if (total > budget)
    throw ResourceLimit("ResourceLimit: ball exceeds element budget of " + std::to_string(budget));
  visited.insert(next.begin(), next.end());
}

struct SampleCache {
  std::map<long long, Vec> shift;                  // phi^L(g) by source level L
  std::map<long long, std::vector<double>> unwind;  // f^{-L'} by target level L'
};

SampleCache build_cache(const Automorphism& aut, const GroupElement& a, std::span<const TelescopePoint> samples) {
  SampleCache cache;
  for (const auto& s : samples) {
    const long long level = level_of(s.r);
    if (!cache.shift.contains(level)) {
      const IntVector moved = apply_phi(aut, level, a.g);
      Vec v;
      for (const auto& c : moved) v.push_back(c.get_d());
      cache.shift.emplace(level, std::move(v));
    }
    const long long target = level_of(s.r + static_cast<double>(a.k));
    if (!cache.unwind.contains(target)) cache.unwind.emplace(target, real_power(aut, -target));
  }
  return cache;
}

ProductPoint map_one(const SampleCache& cache, const GroupElement& a, const TelescopePoint& s) {
  const Vec& shift = cache.shift.at(level_of(s.r));
  Vec y = s.x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += shift[i];
  const double r = s.r + static_cast<double>(a.k);
  return {mat_vec(cache.unwind.at(level_of(r)), y), r};
}

std::vector<std::vector<double>> sign_patterns(std::size_t dim) {
  // First sign fixed to +1: sigma and -sigma give the same spread.
  std::vector<std::vector<double>> out;
  const std::size_t count = std::size_t{1} << (dim - 1);
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<double> s(dim, 1.0);
    for (std::size_t b = 1; b < dim; ++b)
      if (mask & (std::size_t{1} << (b - 1))) s[b] = -1.0;
    out.push_back(std::move(s));
  }
  return out;
}

double signed_sum(const ProductPoint& p, const std::vector<double>& sigma) {
  double s = sigma.back() * p.r;
  for (std::size_t i = 0; i < p.x.size(); ++i) s += sigma[i] * p.x[i];
  return s;
}

}  // namespace

namespace serial {

Spheres bfs_spheres(const Automorphism& aut, int radius, std::size_t budget) {
  const BfsContext ctx = make_context(aut);
  Spheres spheres(1, {PackedElement{}});
  VisitedSet visited{PackedElement{}};
  std::size_t total = 1;
  if (total > budget) throw ResourceLimit("ResourceLimit: budget smaller than one element");
  const int gens = 2 * ctx.n + 2;
  for (int r = 1; r <= radius; ++r) {
    std::vector<PackedElement> next;
    PackedElement nb;
    for (const auto& e : spheres.back())
      for (int gen = 0; gen < gens; ++gen) {
        if (!neighbor(ctx, e, gen, nb)) throw Overflow("Overflow: BFS coordinate exceeds 64 bits");
        if (!visited.contains(nb)) next.push_back(nb);
      }
    finish_level(next, visited, total, budget);
    spheres.push_back(std::move(next));
  }
  return spheres;
}

double l1_diameter(std::span<const ProductPoint> points) {
  if (points.empty()) return 0.0;
  double best = 0.0;
  for (const auto& sigma : sign_patterns(points.front().x.size() + 1)) {
    double lo = kInf, hi = -kInf;
    for (const auto& p : points) {
      const double s = signed_sum(p, sigma);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    best = std::max(best, hi - lo);
  }
  return best;
}

double max_pairwise_distance(std::span<const Vec> points) {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, distance(points[i], points[j]));
  return best;
}

std::vector<ProductPoint> straightened_translates(const Automorphism& aut, const GroupElement& a,
                                                  std::span<const TelescopePoint> samples) {
  const SampleCache cache = build_cache(aut, a, samples);
  std::vector<ProductPoint> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(map_one(cache, a, s));
  return out;
}

}  // namespace serial

namespace parallel {

Spheres bfs_spheres(const Automorphism& aut, int radius, std::size_t budget) {
  const BfsContext ctx = make_context(aut);
  Spheres spheres(1, {PackedElement{}});
  VisitedSet visited{PackedElement{}};
  std::size_t total = 1;
  if (total > budget) throw ResourceLimit("ResourceLimit: budget smaller than one element");
  const int gens = 2 * ctx.n + 2;
  for (int r = 1; r <= radius; ++r) {
    const auto& frontier = spheres.back();
    const auto count = static_cast<std::ptrdiff_t>(frontier.size());
    std::vector<std::vector<PackedElement>> local(static_cast<std::size_t>(omp_get_max_threads()));
    bool overflow = false;
    // The visited set is only read inside the region; all inserts happen in
    // finish_level after the join.
#pragma omp parallel reduction(|| : overflow)
    {
      auto& mine = local[static_cast<std::size_t>(omp_get_thread_num())];
      PackedElement nb;
#pragma omp for schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i)
        for (int gen = 0; gen < gens; ++gen) {
          if (!neighbor(ctx, frontier[static_cast<std::size_t>(i)], gen, nb)) {
            overflow = true;
            continue;
          }
          if (!visited.contains(nb)) mine.push_back(nb);
        }
    }
    if (overflow) throw Overflow("Overflow: BFS coordinate exceeds 64 bits");
    std::vector<PackedElement> next;
    for (auto& l : local) next.insert(next.end(), l.begin(), l.end());
    finish_level(next, visited, total, budget);
    spheres.push_back(std::move(next));
  }
  return spheres;
}

double l1_diameter(std::span<const ProductPoint> points) {
  if (points.empty()) return 0.0;
  double best = 0.0;
  const auto count = static_cast<std::ptrdiff_t>(points.size());
  for (const auto& sigma : sign_patterns(points.front().x.size() + 1)) {
    double lo = kInf, hi = -kInf;
#pragma omp parallel for reduction(min : lo) reduction(max : hi) schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const double s = signed_sum(points[static_cast<std::size_t>(i)], sigma);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    best = std::max(best, hi - lo);
  }
  return best;
}

double max_pairwise_distance(std::span<const Vec> points) {
  double best = 0.0;
  const auto count = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for reduction(max : best) schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < points.size(); ++j)
      best = std::max(best, distance(points[static_cast<std::size_t>(i)], points[j]));
  return best;
}

std::vector<ProductPoint> straightened_translates(const Automorphism& aut, const GroupElement& a,
                                                  std::span<const TelescopePoint> samples) {
  const SampleCache cache = build_cache(aut, a, samples);
  std::vector<ProductPoint> out(samples.size());
  const auto count = static_cast<std::ptrdiff_t>(samples.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i)
    out[static_cast<std::size_t>(i)] = map_one(cache, a, samples[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace parallel

}  // namespace ztel::kernels
