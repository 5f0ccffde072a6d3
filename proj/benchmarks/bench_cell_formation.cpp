#include <benchmark/benchmark.h>

#include <random>

#include "cellgroup/cell_formation.hpp"

namespace {

using namespace cellgroup;

UsageMatrix random_usage(std::size_t machines, std::size_t families, unsigned seed) {
  std::mt19937 rng(seed);
  UsageMatrix u(machines, families);
  for (std::size_t m = 0; m < machines; ++m) {
    for (std::size_t r = 0; r < families; ++r) u(m, r) = static_cast<int>(rng() % 4);
  }
  return u;
}

void BM_Qap(benchmark::State& state) {
  const auto families = static_cast<std::size_t>(state.range(0));
  const auto u = random_usage(2 * families, families, 3);
  const auto cells = static_cast<int>(std::min<std::size_t>(families, 3));
  const CellConfig config{cells, default_cell_capacity(static_cast<int>(u.machine_count()), cells)};
  for (auto _ : state) benchmark::DoNotOptimize(solve_qap(u, config));
}
BENCHMARK(BM_Qap)->DenseRange(2, 6, 1);

void BM_Heuristic(benchmark::State& state) {
  const auto families = static_cast<std::size_t>(state.range(0));
  const auto u = random_usage(2 * families, families, 3);
  const auto cells = static_cast<int>(std::min<std::size_t>(families, 3));
  const CellConfig config{cells, default_cell_capacity(static_cast<int>(u.machine_count()), cells)};
  for (auto _ : state) benchmark::DoNotOptimize(run_heuristic(u, config));
}
BENCHMARK(BM_Heuristic)->RangeMultiplier(2)->Range(2, 32);

}  // namespace
