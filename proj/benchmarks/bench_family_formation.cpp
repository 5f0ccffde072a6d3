#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include "cellgroup/dissimilarity.hpp"
#include "cellgroup/family_formation.hpp"
#include "cellgroup/instance_io.hpp"

namespace {

using namespace cellgroup;

Instance load(const char* name) { return load_instance(std::filesystem::path(CELLGROUP_DATA_DIR) / name); }

// K parts with `routes` alternatives each over M machines, fixed seed.
Instance random_instance(int parts, int routes, int machines, unsigned seed) {
  std::mt19937 rng(seed);
  RawInstance raw;
  raw.machine_count = machines;
  for (int k = 0; k < parts; ++k) {
    auto& ids = raw.part_routes.emplace_back();
    while (static_cast<int>(ids.size()) < routes) {
      std::vector<int> row(static_cast<std::size_t>(machines), 0);
      for (auto& x : row) x = static_cast<int>(rng() % 3 == 0);
      row[rng() % row.size()] = 1;
      raw.incidence.push_back(row);
      ids.push_back(static_cast<int>(raw.incidence.size()));
    }
  }
  return validate_instance(raw);
}

void BM_SolveExampleOne(benchmark::State& state) {
  const auto instance = load("example1.cms");
  const auto d = dissimilarity_matrix(instance);
  for (auto _ : state) benchmark::DoNotOptimize(solve_family_formation(instance, d));
}
BENCHMARK(BM_SolveExampleOne);

void BM_SolvePartialExampleTwo(benchmark::State& state) {
  const auto instance = load("example2_partial.cms");
  const auto d = dissimilarity_matrix(instance);
  for (auto _ : state) benchmark::DoNotOptimize(solve_family_formation(instance, d));
}
BENCHMARK(BM_SolvePartialExampleTwo);

void BM_SolveRandom(benchmark::State& state) {
  const auto instance = random_instance(static_cast<int>(state.range(0)), 3, 12, 17);
  const auto d = dissimilarity_matrix(instance);
  for (auto _ : state) benchmark::DoNotOptimize(solve_family_formation(instance, d));
}
BENCHMARK(BM_SolveRandom)->DenseRange(4, 12, 2)->Unit(benchmark::kMillisecond);

void BM_BruteForceRandom(benchmark::State& state) {
  const auto instance = random_instance(static_cast<int>(state.range(0)), 3, 12, 17);
  const auto d = dissimilarity_matrix(instance);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_families(instance, d));
}
BENCHMARK(BM_BruteForceRandom)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_BuildNetwork(benchmark::State& state) {
  const auto instance = random_instance(static_cast<int>(state.range(0)), 3, 12, 5);
  const auto d = dissimilarity_matrix(instance);
  for (auto _ : state) benchmark::DoNotOptimize(build_network(instance, d));
}
BENCHMARK(BM_BuildNetwork)->Range(8, 64);

}  // namespace
