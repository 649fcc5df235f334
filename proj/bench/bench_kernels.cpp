#include <random>

#include <benchmark/benchmark.h>

#include "ztel/kernels.hpp"
#include "ztel/pipeline.hpp"

using namespace ztel;

namespace {

std::vector<ProductPoint> cloud(std::size_t count) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd(0.0, 100.0);
  std::vector<ProductPoint> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({{nd(rng), nd(rng)}, nd(rng)});
  return out;
}

std::vector<Vec> vectors(std::size_t count) {
  std::vector<Vec> out;
  for (const auto& p : cloud(count)) out.push_back({p.x[0], p.x[1], p.r});
  return out;
}

template <auto Fn>
void bfs(benchmark::State& state) {
  const auto aut = sol();
  for (auto _ : state) benchmark::DoNotOptimize(Fn(aut, static_cast<int>(state.range(0)), kDefaultElementBudget));
}

template <auto Fn>
void l1(benchmark::State& state) {
  const auto pts = cloud(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(pts));
}

template <auto Fn>
void pairwise(benchmark::State& state) {
  const auto pts = vectors(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Fn(pts));
}

template <auto Fn>
void translates(benchmark::State& state) {
  const auto aut = heisenberg();
  const auto dom = fundamental_domain(aut, 1.0 / static_cast<double>(state.range(0)));
  const auto a = GroupElement::from_ints(12, std::vector<long long>{5, -3});
  for (auto _ : state) benchmark::DoNotOptimize(Fn(aut, a, dom.samples));
}

}  // namespace

BENCHMARK(bfs<kernels::serial::bfs_spheres>)->Name("bfs/serial")->Arg(8)->Arg(11);
BENCHMARK(bfs<kernels::parallel::bfs_spheres>)->Name("bfs/parallel")->Arg(8)->Arg(11);
BENCHMARK(l1<kernels::serial::l1_diameter>)->Name("l1_diameter/serial")->Arg(1 << 14)->Arg(1 << 20);
BENCHMARK(l1<kernels::parallel::l1_diameter>)->Name("l1_diameter/parallel")->Arg(1 << 14)->Arg(1 << 20);
BENCHMARK(pairwise<kernels::serial::max_pairwise_distance>)->Name("max_pairwise/serial")->Arg(500)->Arg(4000);
BENCHMARK(pairwise<kernels::parallel::max_pairwise_distance>)->Name("max_pairwise/parallel")->Arg(500)->Arg(4000);
BENCHMARK(translates<kernels::serial::straightened_translates>)->Name("translates/serial")->Arg(4)->Arg(32);
BENCHMARK(translates<kernels::parallel::straightened_translates>)->Name("translates/parallel")->Arg(4)->Arg(32);

BENCHMARK_MAIN();
