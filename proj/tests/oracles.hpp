#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "cellgroup/cell_formation.hpp"
#include "cellgroup/family_formation.hpp"
#include "cellgroup/instance.hpp"
#include "cellgroup/instance_io.hpp"

namespace cellgroup::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(CELLGROUP_DATA_DIR) / name;
}

inline Instance example1() { return load_instance(data_path("example1.cms")); }

inline std::vector<RouteId> routes(std::initializer_list<int> ids) {
  std::vector<RouteId> out;
  for (int i : ids) out.emplace_back(i);
  return out;
}

// Instance from machine sets: parts[k][r] lists the machines of route r of
// part k+1. Routes are numbered in order.
inline Instance make_instance(int machines, const std::vector<std::vector<std::vector<int>>>& parts) {
  RawInstance raw;
  raw.machine_count = machines;
  for (const auto& part : parts) {
    auto& ids = raw.part_routes.emplace_back();
    for (const auto& set : part) {
      std::vector<int> row(static_cast<std::size_t>(machines), 0);
      for (int m : set) row[static_cast<std::size_t>(m - 1)] = 1;
      raw.incidence.push_back(row);
      ids.push_back(static_cast<int>(raw.incidence.size()));
    }
  }
  return validate_instance(raw);
}

struct RandomShape {
  int min_parts = 2, max_parts = 6;
  int min_routes = 1, max_routes = 3;
  int min_machines = 3, max_machines = 8;
};

inline Instance random_instance(std::mt19937& rng, const RandomShape& shape = {}) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int machines = pick(shape.min_machines, shape.max_machines);
  const int parts = pick(shape.min_parts, shape.max_parts);
  std::vector<std::vector<std::vector<int>>> sets(static_cast<std::size_t>(parts));
  for (auto& part : sets) {
    part.resize(static_cast<std::size_t>(pick(shape.min_routes, shape.max_routes)));
    for (auto& set : part) {
      while (set.empty()) {
        for (int m = 1; m <= machines; ++m) {
          if (pick(0, 1) == 1) set.push_back(m);
        }
      }
    }
  }
  return make_instance(machines, sets);
}

inline UsageMatrix random_usage(std::mt19937& rng, int max_machines, int max_families, int max_value = 3) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  UsageMatrix u(static_cast<std::size_t>(pick(1, max_machines)), static_cast<std::size_t>(pick(1, max_families)));
  for (std::size_t m = 0; m < u.machine_count(); ++m) {
    for (std::size_t r = 0; r < u.family_count(); ++r) u(m, r) = pick(0, max_value);
  }
  return u;
}

// Exhaustive optimum of the cell formation model: every machine-to-cell and
// family-to-cell map, capacity checked, no symmetry reduction.
inline std::int64_t exhaustive_qap(const UsageMatrix& u, const CellConfig& config) {
  const auto cells = static_cast<std::size_t>(config.max_cells);
  const std::size_t machines = u.machine_count();
  const std::size_t families = u.family_count();
  std::int64_t best = -1;
  std::vector<std::size_t> z(machines, 0), y(families, 0);
  auto next = [&](std::vector<std::size_t>& v) {
    for (auto& x : v) {
      if (++x < cells) return true;
      x = 0;
    }
    return false;
  };
  do {
    std::vector<int> load(cells, 0);
    bool fits = true;
    for (auto c : z) fits = fits && ++load[c] <= config.max_per_cell;
    if (!fits) continue;
    do {
      std::int64_t total = 0;
      for (std::size_t m = 0; m < machines; ++m) {
        for (std::size_t r = 0; r < families; ++r) {
          if (z[m] == y[r]) total += u(m, r);
        }
      }
      best = std::max(best, total);
    } while (next(y));
  } while (next(z));
  return best;
}

}  // namespace cellgroup::testing
