#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cellgroup/family_formation.hpp"
#include "cellgroup/ids.hpp"
#include "cellgroup/instance.hpp"

namespace cellgroup {

// u(m, r): number of routes of family r that use machine m. Machine and
// family positions are zero-based.
class UsageMatrix {
 public:
  UsageMatrix() = default;
  UsageMatrix(std::size_t machines, std::size_t families);

  std::size_t machine_count() const { return machines_; }
  std::size_t family_count() const { return families_; }

  int operator()(std::size_t machine, std::size_t family) const { return values_[machine * families_ + family]; }
  int& operator()(std::size_t machine, std::size_t family) { return values_[machine * families_ + family]; }
  int at(MachineId m, std::size_t family) const { return (*this)(m.index(), family); }

  friend bool operator==(const UsageMatrix&, const UsageMatrix&) = default;

 private:
  std::size_t machines_ = 0;
  std::size_t families_ = 0;
  std::vector<int> values_;
};

UsageMatrix usage_factors(const Instance& instance, const FamilySolution& families);

struct CellConfig {
  int max_cells = 1;
  int max_per_cell = 1;
};

// Zero-based cell of every machine and every family. Cells are numbered
// canonically: by smallest machine, then cells holding no machine by
// smallest family.
struct CellSolution {
  std::vector<std::size_t> machine_cell;
  std::vector<std::size_t> family_cell;
  std::int64_t utilization = 0;
  std::size_t cell_count_used = 0;

  friend bool operator==(const CellSolution&, const CellSolution&) = default;
};

// Sum over cells of u(m, r) for machines and families sharing the cell.
std::int64_t utilization(const UsageMatrix& u, const std::vector<std::size_t>& machine_cell,
                         const std::vector<std::size_t>& family_cell);

// Renumbers cells canonically and recomputes utilization and the used-cell
// count.
CellSolution canonicalize(const UsageMatrix& u, std::vector<std::size_t> machine_cell,
                          std::vector<std::size_t> family_cell);

// Throws kInfeasibleConfig unless max_cells * max_per_cell >= machine_count
// and both are positive.
void check_config(const CellConfig& config, std::size_t machine_count);

// ceil(M / C), at least 1.
int default_cell_capacity(int machine_count, int max_cells);

struct QapOptions {
  std::uint64_t node_limit = 5'000'000;
};

// Exact maximizer of total utilization over machine-to-cell and
// family-to-cell assignments with at most max_per_cell machines per cell.
// Enumerates family-to-cell partitions up to cell relabelling; for each, the
// machine side is a capacitated transportation problem solved as an
// assignment of machines to cell slots. Throws kInfeasibleConfig or
// TimeoutError.
CellSolution solve_qap(const UsageMatrix& u, const CellConfig& config, const QapOptions& options = {});

// --- Three-step heuristic --------------------------------------------------

// Groups of original family indices, one group per merged family.
struct MergedFamilies {
  std::vector<std::vector<std::size_t>> groups;
  friend bool operator==(const MergedFamilies&, const MergedFamilies&) = default;
};

// Step 1 on usage support: repeatedly merge the first pair (a < b) of
// families whose machine sets are nested, restarting the scan after every
// merge.
MergedFamilies merge_nested_families(const UsageMatrix& u);
MergedFamilies heuristic_step1_merge_families(const Instance& instance, const FamilySolution& families);

// Column sums of u over each group.
UsageMatrix merge_usage(const UsageMatrix& u, const MergedFamilies& merged);

struct MachineAssignment {
  std::vector<std::size_t> family_of_machine;
  // Machines no family uses; they go to the first family.
  std::vector<MachineId> orphans;
};

// Step 2: every machine joins the family using it most (smallest index on
// ties).
MachineAssignment heuristic_step2_assign_machines(const UsageMatrix& u);

// Step 3: one cell per family with its machines, then merge the pair of
// cells with the most inter-cell movement while the merged cell fits
// max_per_cell. Cells over capacity, or more cells than max_cells, are
// repaired so the result always satisfies the configuration.
CellSolution heuristic_step3_merge_cells(const UsageMatrix& u, const MachineAssignment& assignment,
                                         const CellConfig& config);

// Steps 1-3 on a bare usage matrix; family_cell is indexed by the columns of u.
CellSolution run_heuristic(const UsageMatrix& u, const CellConfig& config);
// Steps 1-3 for a family solution; family_cell is indexed by its families.
CellSolution run_heuristic(const Instance& instance, const FamilySolution& families, const CellConfig& config);

}  // namespace cellgroup
