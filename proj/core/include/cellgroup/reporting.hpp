#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cellgroup/cell_formation.hpp"
#include "cellgroup/family_formation.hpp"
#include "cellgroup/instance.hpp"

namespace cellgroup {

struct ReportRow {
  PartId part;
  int route_in_part;  // 1-based position of the route within PR(k)
  RouteId route;
  std::size_t family;
  std::size_t cell;
};

// Selected routes against machines, rearranged into block-diagonal form.
struct GroupingReport {
  std::vector<ReportRow> rows;
  std::vector<RouteId> row_order;
  std::vector<MachineId> column_order;
  std::vector<std::size_t> column_cell;  // cell of each column
  std::vector<std::vector<std::uint8_t>> matrix;
  std::int64_t exceptional_elements = 0;
  std::int64_t utilization = 0;
  std::int64_t objective = 0;
  std::vector<int> family_dissimilarities;

  // Copies of the solutions the report was built from, for serialization.
  FamilySolution families;
  CellSolution cells;
};

// Rows: cells ascending, families ascending within a cell, routes ascending
// within a family. Columns: machines grouped by cell, ascending within one.
// Throws kInconsistentSolutions when the two solutions do not fit together.
GroupingReport build_report(const Instance& instance, const FamilySolution& families, const CellSolution& cells);

// Selected (route, machine) incidences whose machine sits outside the cell
// hosting the route's family.
std::int64_t count_exceptional_elements(const Instance& instance, const FamilySolution& families,
                                        const CellSolution& cells);

enum class ReportFormat { kTable, kJson };

std::string render_table(const GroupingReport& report);
std::string render_json(const GroupingReport& report);
std::string render(const GroupingReport& report, ReportFormat format);

}  // namespace cellgroup
