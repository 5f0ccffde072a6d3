#include "cellgroup/reporting.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "cellgroup/dissimilarity.hpp"
#include "cellgroup/errors.hpp"

namespace cellgroup {

namespace {

[[noreturn]] void inconsistent(const std::string& message) {
  throw Error(ErrorCode::kInconsistentSolutions, "reporting: " + message);
}

void check_consistent(const Instance& instance, const FamilySolution& families, const CellSolution& cells) {
  if (families.families.empty()) inconsistent("no families");
  if (cells.family_cell.size() != families.families.size()) {
    inconsistent("cell solution places " + std::to_string(cells.family_cell.size()) + " families, family solution has " +
                 std::to_string(families.families.size()));
  }
  if (cells.machine_cell.size() != static_cast<std::size_t>(instance.machine_count())) {
    inconsistent("cell solution places " + std::to_string(cells.machine_cell.size()) + " machines, instance has " +
                 std::to_string(instance.machine_count()));
  }
  for (std::size_t f = 0; f < families.families.size(); ++f) {
    if (families.families[f].empty()) inconsistent("family " + std::to_string(f + 1) + " has no routes");
    for (auto r : families.families[f]) {
      if (!instance.valid(r)) inconsistent("family " + std::to_string(f + 1) + " holds unknown route");
    }
  }
}

int position_in_part(const Instance& instance, RouteId route) {
  const auto& routes = instance.part(instance.part_of(route)).routes;
  auto sorted = routes;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<int>(std::find(sorted.begin(), sorted.end(), route) - sorted.begin()) + 1;
}

}  // namespace

std::int64_t count_exceptional_elements(const Instance& instance, const FamilySolution& families,
                                        const CellSolution& cells) {
  check_consistent(instance, families, cells);
  std::int64_t count = 0;
  for (std::size_t f = 0; f < families.families.size(); ++f) {
    for (auto route : families.families[f]) {
      for (auto m : instance.machines(route)) {
        if (cells.machine_cell[m.index()] != cells.family_cell[f]) ++count;
      }
    }
  }
  return count;
}

GroupingReport build_report(const Instance& instance, const FamilySolution& families, const CellSolution& cells) {
  check_consistent(instance, families, cells);
  GroupingReport report;
  report.families = families;
  report.cells = cells;
  report.objective = families.objective;

  std::size_t cell_count = 0;
  for (auto c : cells.machine_cell) cell_count = std::max(cell_count, c + 1);
  for (auto c : cells.family_cell) cell_count = std::max(cell_count, c + 1);

  for (std::size_t c = 0; c < cell_count; ++c) {
    for (std::size_t f = 0; f < families.families.size(); ++f) {
      if (cells.family_cell[f] != c) continue;
      for (auto route : families.families[f]) {
        report.rows.push_back({instance.part_of(route), position_in_part(instance, route), route, f, c});
        report.row_order.push_back(route);
      }
    }
    for (std::size_t m = 0; m < cells.machine_cell.size(); ++m) {
      if (cells.machine_cell[m] != c) continue;
      report.column_order.push_back(MachineId::from_index(m));
      report.column_cell.push_back(c);
    }
  }

  for (auto route : report.row_order) {
    auto& line = report.matrix.emplace_back();
    for (auto m : report.column_order) line.push_back(instance.uses(route, m) ? 1 : 0);
  }

  report.exceptional_elements = count_exceptional_elements(instance, families, cells);
  const auto u = usage_factors(instance, families);
  report.utilization = utilization(u, cells.machine_cell, cells.family_cell);

  const auto d = dissimilarity_matrix(instance);
  for (const auto& family : families.families) {
    report.family_dissimilarities.push_back(family_cyclic_dissimilarity(d, family));
  }
  return report;
}

std::string render_table(const GroupingReport& report) {
  std::ostringstream out;
  std::size_t width = 1;
  for (auto m : report.column_order) width = std::max(width, std::to_string(m.value()).size());

  const std::string head_part = "part";
  const std::string head_route = "route";
  const std::string head_serial = "serial";
  out << head_part << "  " << head_route << "  " << head_serial << " |";
  for (std::size_t col = 0; col < report.column_order.size(); ++col) {
    if (col > 0 && report.column_cell[col] != report.column_cell[col - 1]) out << " |";
    out << ' ' << std::setw(static_cast<int>(width)) << report.column_order[col].value();
  }
  out << '\n';

  for (std::size_t row = 0; row < report.rows.size(); ++row) {
    if (row > 0 && report.rows[row].cell != report.rows[row - 1].cell) {
      out << std::string(head_part.size() + head_route.size() + head_serial.size() + 4, '-') << "-+";
      for (std::size_t col = 0; col < report.column_order.size(); ++col) {
        if (col > 0 && report.column_cell[col] != report.column_cell[col - 1]) out << "-+";
        out << std::string(width + 1, '-');
      }
      out << '\n';
    }
    const auto& r = report.rows[row];
    out << std::setw(static_cast<int>(head_part.size())) << r.part.value() << "  "
        << std::setw(static_cast<int>(head_route.size())) << r.route_in_part << "  "
        << std::setw(static_cast<int>(head_serial.size())) << r.route.value() << " |";
    for (std::size_t col = 0; col < report.column_order.size(); ++col) {
      if (col > 0 && report.column_cell[col] != report.column_cell[col - 1]) out << " |";
      out << ' ' << std::setw(static_cast<int>(width)) << static_cast<int>(report.matrix[row][col]);
    }
    out << '\n';
  }

  out << '\n';
  for (std::size_t f = 0; f < report.families.families.size(); ++f) {
    out << "family " << f + 1 << ": routes";
    for (auto r : report.families.families[f]) out << ' ' << r.value();
    out << "  (cyclic dissimilarity " << report.family_dissimilarities[f] << ", cell "
        << report.cells.family_cell[f] + 1 << ")\n";
  }
  std::size_t cell_count = 0;
  for (auto c : report.cells.machine_cell) cell_count = std::max(cell_count, c + 1);
  for (auto c : report.cells.family_cell) cell_count = std::max(cell_count, c + 1);
  for (std::size_t c = 0; c < cell_count; ++c) {
    out << "cell " << c + 1 << ": machines";
    for (std::size_t m = 0; m < report.cells.machine_cell.size(); ++m) {
      if (report.cells.machine_cell[m] == c) out << ' ' << m + 1;
    }
    out << "; families";
    for (std::size_t f = 0; f < report.cells.family_cell.size(); ++f) {
      if (report.cells.family_cell[f] == c) out << ' ' << f + 1;
    }
    out << '\n';
  }
  out << "objective: " << report.objective << '\n';
  out << "utilization: " << report.utilization << '\n';
  out << "exceptional elements: " << report.exceptional_elements << '\n';
  return out.str();
}

namespace {

nlohmann::ordered_json to_json(const GroupingReport& report) {
  nlohmann::ordered_json doc;
  auto families = nlohmann::ordered_json::array();
  for (const auto& family : report.families.families) {
    auto ids = nlohmann::ordered_json::array();
    for (auto r : family) ids.push_back(r.value());
    families.push_back(std::move(ids));
  }
  doc["families"] = std::move(families);

  auto selected = nlohmann::ordered_json::object();
  for (const auto& [part, route] : report.families.selected_route) selected[std::to_string(part.value())] = route.value();
  doc["selected_route"] = std::move(selected);

  std::size_t cell_count = 0;
  for (auto c : report.cells.machine_cell) cell_count = std::max(cell_count, c + 1);
  for (auto c : report.cells.family_cell) cell_count = std::max(cell_count, c + 1);
  auto cells = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < cell_count; ++c) {
    nlohmann::ordered_json cell;
    cell["machines"] = nlohmann::ordered_json::array();
    cell["families"] = nlohmann::ordered_json::array();
    for (std::size_t m = 0; m < report.cells.machine_cell.size(); ++m) {
      if (report.cells.machine_cell[m] == c) cell["machines"].push_back(m + 1);
    }
    for (std::size_t f = 0; f < report.cells.family_cell.size(); ++f) {
      if (report.cells.family_cell[f] == c) cell["families"].push_back(f + 1);
    }
    cells.push_back(std::move(cell));
  }
  doc["cells"] = std::move(cells);
  doc["objective"] = report.objective;
  doc["utilization"] = report.utilization;
  doc["exceptional_elements"] = report.exceptional_elements;
  doc["family_dissimilarities"] = report.family_dissimilarities;
  return doc;
}

}  // namespace

std::string render_json(const GroupingReport& report) { return to_json(report).dump(2) + "\n"; }

std::string render(const GroupingReport& report, ReportFormat format) {
  return format == ReportFormat::kJson ? render_json(report) : render_table(report);
}

}  // namespace cellgroup
