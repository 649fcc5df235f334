#pragma once

// Data-parallel kernels. Each kernel has a serial reference implementation
// and an OpenMP implementation with identical results; the tests compare the
// two and bench/ times them.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ztel/algebra.hpp"
#include "ztel/telescope.hpp"

namespace ztel::kernels {

inline constexpr int kMaxBfsRank = 7;

// Packed element t^k g: slot 0 is k, slots 1..n hold g, the rest are zero.
using PackedElement = std::array<std::int64_t, kMaxBfsRank + 1>;

struct PackedHash {
  std::size_t operator()(const PackedElement& e) const noexcept;
};

// spheres[r] holds the elements of word length exactly r, sorted.
using Spheres = std::vector<std::vector<PackedElement>>;

// Sets the OpenMP worker count from ZTEL_THREADS when it is set.
void configure_threads_from_env();

namespace serial {

Spheres bfs_spheres(const Automorphism& aut, int radius, std::size_t budget);
double l1_diameter(std::span<const ProductPoint> points);
double max_pairwise_distance(std::span<const Vec> points);
std::vector<ProductPoint> straightened_translates(const Automorphism& aut, const GroupElement& a,
                                                  std::span<const TelescopePoint> samples);

}  // namespace serial

namespace parallel {

Spheres bfs_spheres(const Automorphism& aut, int radius, std::size_t budget);
double l1_diameter(std::span<const ProductPoint> points);
double max_pairwise_distance(std::span<const Vec> points);
std::vector<ProductPoint> straightened_translates(const Automorphism& aut, const GroupElement& a,
                                                  std::span<const TelescopePoint> samples);

}  // namespace parallel

}  // namespace ztel::kernels
