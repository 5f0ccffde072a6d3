#include "cellgroup/cell_formation.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "cellgroup/assignment.hpp"
#include "cellgroup/errors.hpp"

namespace cellgroup {

UsageMatrix::UsageMatrix(std::size_t machines, std::size_t families)
    : machines_(machines), families_(families), values_(machines * families, 0) {}

UsageMatrix usage_factors(const Instance& instance, const FamilySolution& families) {
  UsageMatrix u(static_cast<std::size_t>(instance.machine_count()), families.families.size());
  for (std::size_t r = 0; r < families.families.size(); ++r) {
    for (auto route : families.families[r]) {
      for (auto m : instance.machines(route)) ++u(m.index(), r);
    }
  }
  return u;
}

std::int64_t utilization(const UsageMatrix& u, const std::vector<std::size_t>& machine_cell,
                         const std::vector<std::size_t>& family_cell) {
  std::int64_t total = 0;
  for (std::size_t m = 0; m < u.machine_count(); ++m) {
    for (std::size_t r = 0; r < u.family_count(); ++r) {
      if (machine_cell[m] == family_cell[r]) total += u(m, r);
    }
  }
  return total;
}

CellSolution canonicalize(const UsageMatrix& u, std::vector<std::size_t> machine_cell,
                          std::vector<std::size_t> family_cell) {
  std::map<std::size_t, std::size_t> relabel;
  std::size_t next = 0;
  for (auto c : machine_cell) {
    if (!relabel.contains(c)) relabel[c] = next++;
  }
  for (auto c : family_cell) {
    if (!relabel.contains(c)) relabel[c] = next++;
  }
  for (auto& c : machine_cell) c = relabel[c];
  for (auto& c : family_cell) c = relabel[c];
  CellSolution out;
  out.utilization = utilization(u, machine_cell, family_cell);
  out.machine_cell = std::move(machine_cell);
  out.family_cell = std::move(family_cell);
  out.cell_count_used = next;
  return out;
}

void check_config(const CellConfig& config, std::size_t machine_count) {
  if (config.max_cells < 1 || config.max_per_cell < 1) {
    throw Error(ErrorCode::kInfeasibleConfig, "cell_formation: cell count and cell capacity must be positive");
  }
  if (static_cast<std::size_t>(config.max_cells) * static_cast<std::size_t>(config.max_per_cell) < machine_count) {
    throw Error(ErrorCode::kInfeasibleConfig,
                "cell_formation: " + std::to_string(config.max_cells) + " cells of at most " +
                    std::to_string(config.max_per_cell) + " machines cannot hold " + std::to_string(machine_count) +
                    " machines");
  }
}

int default_cell_capacity(int machine_count, int max_cells) {
  if (max_cells < 1) return std::max(machine_count, 1);
  return std::max(1, (machine_count + max_cells - 1) / max_cells);
}

namespace {

class QapSearch {
 public:
  QapSearch(const UsageMatrix& u, const CellConfig& config, const QapOptions& options)
      : u_(u),
        cells_(static_cast<std::size_t>(config.max_cells)),
        slots_(std::min<std::size_t>(static_cast<std::size_t>(config.max_per_cell), u.machine_count())),
        options_(options),
        family_cell_(u.family_count(), 0) {
    for (std::size_t m = 0; m < u.machine_count(); ++m) {
      for (std::size_t r = 0; r < u.family_count(); ++r) upper_bound_ += u(m, r);
    }
  }

  void run() {
    assign_family(0, 0);
    if (!best_) throw Error(ErrorCode::kInfeasibleConfig, "cell_formation: no feasible machine assignment");
  }

  CellSolution result() const { return canonicalize(u_, best_machine_cell_, best_family_cell_); }

 private:
  // Families take cells in first-use order, which removes relabelled copies.
  void assign_family(std::size_t r, std::size_t opened) {
    if (r == u_.family_count()) {
      evaluate();
      return;
    }
    const std::size_t limit = std::min(opened + 1, cells_);
    for (std::size_t c = 0; c < limit; ++c) {
      family_cell_[r] = c;
      assign_family(r + 1, std::max(opened, c + 1));
    }
  }

  void evaluate() {
    if (++nodes_ > options_.node_limit) {
      throw TimeoutError("cell_formation: QAP node limit of " + std::to_string(options_.node_limit) + " exceeded",
                         best_, upper_bound_);
    }
    const std::size_t machines = u_.machine_count();
    std::vector<std::int64_t> profit(machines * cells_, 0);
    std::int64_t optimistic = 0;
    for (std::size_t m = 0; m < machines; ++m) {
      for (std::size_t r = 0; r < u_.family_count(); ++r) profit[m * cells_ + family_cell_[r]] += u_(m, r);
      optimistic += *std::max_element(profit.begin() + static_cast<std::ptrdiff_t>(m * cells_),
                                      profit.begin() + static_cast<std::ptrdiff_t>((m + 1) * cells_));
    }
    if (best_ && optimistic <= *best_) return;

    CostMatrix costs(machines, cells_ * slots_);
    for (std::size_t m = 0; m < machines; ++m) {
      for (std::size_t s = 0; s < cells_ * slots_; ++s) costs.set(m, s, -profit[m * cells_ + s / slots_]);
    }
    const auto assignment = solve_assignment(costs);
    if (!assignment) return;
    const std::int64_t value = -assignment->cost;
    if (best_ && value <= *best_) return;
    best_ = value;
    best_family_cell_ = family_cell_;
    best_machine_cell_.assign(machines, 0);
    for (std::size_t m = 0; m < machines; ++m) best_machine_cell_[m] = assignment->column_of_row[m] / slots_;
  }

  const UsageMatrix& u_;
  std::size_t cells_;
  std::size_t slots_;
  QapOptions options_;
  std::vector<std::size_t> family_cell_;
  std::optional<std::int64_t> best_;
  std::vector<std::size_t> best_family_cell_;
  std::vector<std::size_t> best_machine_cell_;
  std::int64_t upper_bound_ = 0;
  std::uint64_t nodes_ = 0;
};

std::vector<std::size_t> machine_support(const UsageMatrix& u, std::size_t r) {
  std::vector<std::size_t> ms;
  for (std::size_t m = 0; m < u.machine_count(); ++m) {
    if (u(m, r) > 0) ms.push_back(m);
  }
  return ms;
}

bool nested(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return std::includes(a.begin(), a.end(), b.begin(), b.end()) || std::includes(b.begin(), b.end(), a.begin(), a.end());
}

struct Cell {
  std::vector<std::size_t> families;
  std::vector<std::size_t> machines;
};

std::int64_t contribution(const UsageMatrix& u, std::size_t machine, const Cell& cell) {
  std::int64_t total = 0;
  for (auto r : cell.families) total += u(machine, r);
  return total;
}

std::int64_t internal_utilization(const UsageMatrix& u, const Cell& cell) {
  std::int64_t total = 0;
  for (auto m : cell.machines) total += contribution(u, m, cell);
  return total;
}

std::int64_t movement(const UsageMatrix& u, const Cell& a, const Cell& b) {
  std::int64_t total = 0;
  for (auto m : b.machines) total += contribution(u, m, a);
  for (auto m : a.machines) total += contribution(u, m, b);
  return total;
}

// Cell with spare room where the machine contributes most; smallest index on
// ties. nullopt if every cell other than `skip` is full.
std::optional<std::size_t> best_host(const UsageMatrix& u, const std::vector<Cell>& cells, std::size_t machine,
                                     std::size_t capacity, std::size_t skip) {
  std::optional<std::size_t> host;
  std::int64_t host_value = -1;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    if (c == skip || cells[c].machines.size() >= capacity) continue;
    const auto value = contribution(u, machine, cells[c]);
    if (value > host_value) {
      host = c;
      host_value = value;
    }
  }
  return host;
}

void relieve_overfull_cells(const UsageMatrix& u, std::vector<Cell>& cells, std::size_t capacity) {
  for (std::size_t c = 0; c < cells.size(); ++c) {
    while (cells[c].machines.size() > capacity) {
      // Evict the machine this cell needs least; larger index on ties.
      auto& ms = cells[c].machines;
      std::size_t pick = 0;
      for (std::size_t k = 1; k < ms.size(); ++k) {
        if (contribution(u, ms[k], cells[c]) <= contribution(u, ms[pick], cells[c])) pick = k;
      }
      const std::size_t machine = ms[pick];
      ms.erase(ms.begin() + static_cast<std::ptrdiff_t>(pick));
      auto host = best_host(u, cells, machine, capacity, c);
      if (!host) {
        cells.push_back({});
        host = cells.size() - 1;
      }
      cells[*host].machines.push_back(machine);
      std::sort(cells[*host].machines.begin(), cells[*host].machines.end());
    }
  }
}

void merge_moving_cells(const UsageMatrix& u, std::vector<Cell>& cells, std::size_t capacity) {
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> pick;
    std::int64_t pick_movement = 0;
    for (std::size_t a = 0; a < cells.size(); ++a) {
      for (std::size_t b = a + 1; b < cells.size(); ++b) {
        if (cells[a].machines.size() + cells[b].machines.size() > capacity) continue;
        const auto moves = movement(u, cells[a], cells[b]);
        if (moves > pick_movement) {
          pick = {a, b};
          pick_movement = moves;
        }
      }
    }
    if (!pick) return;
    auto& into = cells[pick->first];
    auto& from = cells[pick->second];
    into.families.insert(into.families.end(), from.families.begin(), from.families.end());
    into.machines.insert(into.machines.end(), from.machines.begin(), from.machines.end());
    std::sort(into.families.begin(), into.families.end());
    std::sort(into.machines.begin(), into.machines.end());
    cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(pick->second));
  }
}

void enforce_cell_count(const UsageMatrix& u, std::vector<Cell>& cells, std::size_t max_cells,
                        std::size_t capacity) {
  while (cells.size() > max_cells) {
    // Dissolve the cell with least internal utilization; last one on ties.
    std::size_t victim = 0;
    for (std::size_t c = 1; c < cells.size(); ++c) {
      if (internal_utilization(u, cells[c]) <= internal_utilization(u, cells[victim])) victim = c;
    }
    Cell dissolved = std::move(cells[victim]);
    cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(victim));
    for (auto r : dissolved.families) {
      std::size_t host = 0;
      std::int64_t host_value = -1;
      for (std::size_t c = 0; c < cells.size(); ++c) {
        std::int64_t value = 0;
        for (auto m : cells[c].machines) value += u(m, r);
        if (value > host_value) {
          host = c;
          host_value = value;
        }
      }
      cells[host].families.push_back(r);
      std::sort(cells[host].families.begin(), cells[host].families.end());
    }
    for (auto m : dissolved.machines) {
      const auto host = best_host(u, cells, m, capacity, cells.size());
      if (!host) throw Error(ErrorCode::kInfeasibleConfig, "cell_formation: no room left for machine");
      cells[*host].machines.push_back(m);
      std::sort(cells[*host].machines.begin(), cells[*host].machines.end());
    }
  }
}

}  // namespace

CellSolution solve_qap(const UsageMatrix& u, const CellConfig& config, const QapOptions& options) {
  check_config(config, u.machine_count());
  QapSearch search(u, config, options);
  search.run();
  return search.result();
}

MergedFamilies merge_nested_families(const UsageMatrix& u) {
  MergedFamilies merged;
  std::vector<std::vector<std::size_t>> supports;
  for (std::size_t r = 0; r < u.family_count(); ++r) {
    merged.groups.push_back({r});
    supports.push_back(machine_support(u, r));
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < supports.size() && !changed; ++a) {
      for (std::size_t b = a + 1; b < supports.size() && !changed; ++b) {
        if (!nested(supports[a], supports[b])) continue;
        auto& group = merged.groups[a];
        group.insert(group.end(), merged.groups[b].begin(), merged.groups[b].end());
        std::sort(group.begin(), group.end());
        std::vector<std::size_t> joined;
        std::set_union(supports[a].begin(), supports[a].end(), supports[b].begin(), supports[b].end(),
                       std::back_inserter(joined));
        supports[a] = std::move(joined);
        merged.groups.erase(merged.groups.begin() + static_cast<std::ptrdiff_t>(b));
        supports.erase(supports.begin() + static_cast<std::ptrdiff_t>(b));
        changed = true;
      }
    }
  }
  return merged;
}

MergedFamilies heuristic_step1_merge_families(const Instance& instance, const FamilySolution& families) {
  return merge_nested_families(usage_factors(instance, families));
}

UsageMatrix merge_usage(const UsageMatrix& u, const MergedFamilies& merged) {
  UsageMatrix out(u.machine_count(), merged.groups.size());
  for (std::size_t g = 0; g < merged.groups.size(); ++g) {
    for (auto r : merged.groups[g]) {
      for (std::size_t m = 0; m < u.machine_count(); ++m) out(m, g) += u(m, r);
    }
  }
  return out;
}

MachineAssignment heuristic_step2_assign_machines(const UsageMatrix& u) {
  if (u.family_count() == 0) throw Error(ErrorCode::kInconsistentSolutions, "cell_formation: no families to assign");
  MachineAssignment out;
  out.family_of_machine.assign(u.machine_count(), 0);
  for (std::size_t m = 0; m < u.machine_count(); ++m) {
    std::size_t best = 0;
    for (std::size_t r = 1; r < u.family_count(); ++r) {
      if (u(m, r) > u(m, best)) best = r;
    }
    if (u(m, best) == 0) out.orphans.push_back(MachineId::from_index(m));
    out.family_of_machine[m] = best;
  }
  return out;
}

CellSolution heuristic_step3_merge_cells(const UsageMatrix& u, const MachineAssignment& assignment,
                                         const CellConfig& config) {
  check_config(config, u.machine_count());
  const auto capacity = static_cast<std::size_t>(config.max_per_cell);
  std::vector<Cell> cells(u.family_count());
  for (std::size_t r = 0; r < u.family_count(); ++r) cells[r].families.push_back(r);
  for (std::size_t m = 0; m < u.machine_count(); ++m) cells[assignment.family_of_machine[m]].machines.push_back(m);

  relieve_overfull_cells(u, cells, capacity);
  merge_moving_cells(u, cells, capacity);
  enforce_cell_count(u, cells, static_cast<std::size_t>(config.max_cells), capacity);

  std::vector<std::size_t> machine_cell(u.machine_count(), 0), family_cell(u.family_count(), 0);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (auto m : cells[c].machines) machine_cell[m] = c;
    for (auto r : cells[c].families) family_cell[r] = c;
  }
  return canonicalize(u, std::move(machine_cell), std::move(family_cell));
}

CellSolution run_heuristic(const UsageMatrix& u, const CellConfig& config) {
  check_config(config, u.machine_count());
  const auto merged = merge_nested_families(u);
  const auto merged_u = merge_usage(u, merged);
  const auto assignment = heuristic_step2_assign_machines(merged_u);
  const auto cells = heuristic_step3_merge_cells(merged_u, assignment, config);
  std::vector<std::size_t> family_cell(u.family_count(), 0);
  for (std::size_t g = 0; g < merged.groups.size(); ++g) {
    for (auto r : merged.groups[g]) family_cell[r] = cells.family_cell[g];
  }
  return canonicalize(u, cells.machine_cell, std::move(family_cell));
}

CellSolution run_heuristic(const Instance& instance, const FamilySolution& families, const CellConfig& config) {
  return run_heuristic(usage_factors(instance, families), config);
}

}  // namespace cellgroup
