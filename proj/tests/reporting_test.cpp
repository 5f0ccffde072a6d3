#include <gtest/gtest.h>

#include <json.hpp>
#include <random>

#include "cellgroup/errors.hpp"
#include "cellgroup/reporting.hpp"
#include "test_support.hpp"

namespace cellgroup {
namespace {

using testing::example1;
using testing::routes;

struct Pipeline {
  Instance instance;
  FamilySolution families;
  CellSolution cells;
};

Pipeline example1_pipeline() {
  auto instance = example1();
  auto families = solve_family_formation(instance, dissimilarity_matrix(instance)).families;
  auto cells = solve_qap(usage_factors(instance, families), CellConfig{2, 2});
  return {std::move(instance), std::move(families), std::move(cells)};
}

TEST(BuildReport, ExampleOneBlockDiagonal) {
  const auto p = example1_pipeline();
  const auto report = build_report(p.instance, p.families, p.cells);
  EXPECT_EQ(report.row_order, routes({5, 9, 11, 2, 7}));
  EXPECT_EQ(report.column_order, (std::vector<MachineId>{MachineId{1}, MachineId{3}, MachineId{2}, MachineId{4}}));
  EXPECT_EQ(report.exceptional_elements, 0);
  EXPECT_EQ(report.utilization, 9);
  EXPECT_EQ(report.objective, 2);
  EXPECT_EQ(report.family_dissimilarities, (std::vector<int>{0, 2}));
  // Body of the block-diagonal table, machine columns 1 3 2 4.
  const std::vector<std::vector<std::uint8_t>> body = {
      {1, 1, 0, 0}, {1, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}};
  EXPECT_EQ(report.matrix, body);
  EXPECT_EQ(report.rows[0].part, PartId{2});
  EXPECT_EQ(report.rows[0].route_in_part, 2);
}

TEST(CountExceptionalElements, ExampleOneIsZero) {
  const auto p = example1_pipeline();
  EXPECT_EQ(count_exceptional_elements(p.instance, p.families, p.cells), 0);
}

TEST(CountExceptionalElements, SingleCellIsZero) {
  const auto p = example1_pipeline();
  const auto u = usage_factors(p.instance, p.families);
  const auto one = canonicalize(u, {0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(count_exceptional_elements(p.instance, p.families, one), 0);
}

TEST(CountExceptionalElements, SwappedMachineCounts) {
  const auto p = example1_pipeline();
  const auto u = usage_factors(p.instance, p.families);
  // Machines 1 and 2 trade cells: routes 5, 9, 11 lose machine 1, routes 2, 7 lose machine 2.
  const auto swapped = canonicalize(u, {1, 0, 0, 1}, {1, 0});
  EXPECT_EQ(count_exceptional_elements(p.instance, p.families, swapped), 3 + 2);
}

TEST(BuildReport, InconsistentSolutions) {
  const auto p = example1_pipeline();
  auto cells = p.cells;
  cells.family_cell.push_back(0);
  try {
    build_report(p.instance, p.families, cells);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInconsistentSolutions);
  }
  auto families = p.families;
  families.families[0].clear();
  EXPECT_THROW(build_report(p.instance, families, p.cells), Error);
}

TEST(RenderTable, ExampleOneGrid) {
  const auto p = example1_pipeline();
  const auto text = render_table(build_report(p.instance, p.families, p.cells));
  const std::string grid =
      "part  route  serial | 1 3 | 2 4\n"
      "   2      2       5 | 1 1 | 0 0\n"
      "   4      2       9 | 1 1 | 0 0\n"
      "   5      2      11 | 1 0 | 0 0\n"
      "--------------------+-----+----\n"
      "   1      2       2 | 0 0 | 1 1\n"
      "   3      2       7 | 0 0 | 1 1\n";
  EXPECT_EQ(text.substr(0, grid.size()), grid);
  EXPECT_NE(text.find("exceptional elements: 0"), std::string::npos);
  EXPECT_EQ(text, render_table(build_report(p.instance, p.families, p.cells)));
}

TEST(RenderJson, SchemaAndKeyOrder) {
  const auto p = example1_pipeline();
  const auto text = render_json(build_report(p.instance, p.families, p.cells));
  const auto doc = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (const auto& item : doc.items()) keys.push_back(item.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"families", "selected_route", "cells", "objective", "utilization",
                                            "exceptional_elements", "family_dissimilarities"}));
  EXPECT_EQ(doc["families"], nlohmann::ordered_json::parse("[[2,7],[5,9,11]]"));
  EXPECT_EQ(doc["selected_route"]["1"], 2);
  EXPECT_EQ(doc["selected_route"]["4"], 9);
  EXPECT_EQ(doc["cells"], nlohmann::ordered_json::parse(R"([{"machines":[1,3],"families":[2]},{"machines":[2,4],"families":[1]}])"));
  EXPECT_EQ(doc["objective"], 2);
  EXPECT_EQ(doc["utilization"], 9);
  EXPECT_EQ(doc["exceptional_elements"], 0);
  EXPECT_EQ(text, render(build_report(p.instance, p.families, p.cells), ReportFormat::kJson));
}

TEST(BuildReport, RearrangementIsAPermutationOnRandomPipelines) {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    const auto instance = testing::random_instance(rng);
    const auto families = solve_family_formation(instance, dissimilarity_matrix(instance)).families;
    const auto u = usage_factors(instance, families);
    const int cells = static_cast<int>(families.families.size());
    const CellConfig config{cells, default_cell_capacity(instance.machine_count(), cells)};
    const auto solution = run_heuristic(u, config);
    const auto report = build_report(instance, families, solution);

    // Same multiset of (route, machine) incidences as the selected rows.
    std::multiset<std::vector<std::uint8_t>> before, after;
    for (const auto& [part, route] : families.selected_route) {
      const auto row = instance.row(route);
      before.emplace(row.begin(), row.end());
    }
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
      std::vector<std::uint8_t> row(static_cast<std::size_t>(instance.machine_count()), 0);
      for (std::size_t c = 0; c < report.column_order.size(); ++c) row[report.column_order[c].index()] = report.matrix[r][c];
      after.insert(row);
    }
    EXPECT_EQ(before, after);

    // Off-diagonal ones in the matrix are the exceptional elements.
    std::int64_t off_block = 0;
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
      for (std::size_t c = 0; c < report.column_order.size(); ++c) {
        if (report.matrix[r][c] && report.column_cell[c] != report.rows[r].cell) ++off_block;
      }
    }
    EXPECT_EQ(off_block, report.exceptional_elements);

    bool contained = true;
    for (std::size_t f = 0; f < families.families.size(); ++f) {
      for (auto route : families.families[f]) {
        for (auto m : instance.machines(route)) contained = contained && solution.machine_cell[m.index()] == solution.family_cell[f];
      }
    }
    EXPECT_EQ(report.exceptional_elements == 0, contained);
  }
}

}  // namespace
}  // namespace cellgroup
