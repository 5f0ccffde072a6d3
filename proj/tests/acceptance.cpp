// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cellgroup/cell_formation.hpp"
#include "cellgroup/dissimilarity.hpp"
#include "cellgroup/family_formation.hpp"
#include "cellgroup/flow_network.hpp"
#include "cellgroup/reporting.hpp"
#include "cli.hpp"
#include "oracles.hpp"

namespace cg = cellgroup;
using Clock = std::chrono::steady_clock;

namespace {

// Collects failed checks of one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  bool ok() const { return count_ == 0; }
  std::string summary() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    if (count_ > failures_.size()) s += "; ... " + std::to_string(count_) + " failures in total";
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::set<int> ids(const std::vector<cg::RouteId>& v) {
  std::set<int> s;
  for (auto r : v) s.insert(r.value());
  return s;
}

std::set<std::set<int>> machine_cells(const cg::CellSolution& s) {
  std::vector<std::set<int>> cells;
  for (std::size_t m = 0; m < s.machine_cell.size(); ++m) {
    if (cells.size() <= s.machine_cell[m]) cells.resize(s.machine_cell[m] + 1);
    cells[s.machine_cell[m]].insert(static_cast<int>(m + 1));
  }
  std::set<std::set<int>> out;
  for (auto& c : cells) {
    if (!c.empty()) out.insert(c);
  }
  return out;
}

// Every flow the solver hands back goes through here (criterion 5).
Check g_flow_check;
int g_flows_checked = 0;

// Families and cells of every pipeline output go through here (criterion 7).
Check g_structure_check;
int g_structures_checked = 0;

void audit_flow(const cg::FamilyFormationResult& result) {
  ++g_flows_checked;
  const auto violations = cg::check_flow(result.network, result.flow);
  g_flow_check.expect(violations.empty(), violations.empty() ? "" : violations.front());
  g_flow_check.expect(result.flow.objective == cg::relational_cost(result.network, result.flow),
                      "objective differs from relational arc cost");
  g_flow_check.expect(result.flow.objective == result.families.objective, "flow and family objectives differ");
}

void audit_families(const cg::Instance& instance, const cg::FamilySolution& s) {
  ++g_structures_checked;
  auto& c = g_structure_check;
  c.expect(s.selected_route.size() == static_cast<std::size_t>(instance.part_count()), "not one route per part");
  std::set<cg::RouteId> selected, covered;
  for (const auto& [part, route] : s.selected_route) {
    c.expect(instance.part_of(route) == part, "selected route belongs to another part");
    selected.insert(route);
  }
  for (const auto& family : s.families) {
    std::set<cg::PartId> parts;
    for (auto r : family) {
      parts.insert(instance.part_of(r));
      c.expect(covered.insert(r).second, "route in two families");
    }
    c.expect(parts.size() == family.size(), "family repeats a part");
    c.expect(parts.size() >= 2, "family spans fewer than two parts");
  }
  c.expect(covered == selected, "families do not partition the selected routes");
}

void audit_cells(const cg::UsageMatrix& u, const cg::CellConfig& config, const cg::CellSolution& s) {
  ++g_structures_checked;
  auto& c = g_structure_check;
  c.expect(s.machine_cell.size() == u.machine_count() && s.family_cell.size() == u.family_count(),
           "cell solution has wrong dimensions");
  std::vector<int> load(static_cast<std::size_t>(config.max_cells), 0);
  for (auto cell : s.machine_cell) {
    c.expect(cell < load.size(), "machine cell index out of range");
    if (cell < load.size()) ++load[cell];
  }
  for (auto cell : s.family_cell) c.expect(cell < load.size(), "family cell index out of range");
  for (int l : load) c.expect(l <= config.max_per_cell, "cell capacity exceeded");
  c.expect(s.utilization == cg::utilization(u, s.machine_cell, s.family_cell), "utilization misreported");
}

cg::FamilyFormationResult solve_families(const cg::Instance& instance) {
  auto result = cg::solve_family_formation(instance, cg::dissimilarity_matrix(instance));
  audit_flow(result);
  audit_families(instance, result.families);
  return result;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome ac1_example_one() {
  Check c;
  const auto start = Clock::now();
  const auto instance = cg::testing::example1();
  const auto formed = solve_families(instance);
  const auto& f = formed.families;
  c.expect(f.objective == 2, "objective " + std::to_string(f.objective) + " != 2");
  std::set<std::set<int>> families;
  for (const auto& family : f.families) families.insert(ids(family));
  c.expect(families == std::set<std::set<int>>{{2, 7}, {5, 9, 11}}, "families differ from {2,7},{5,9,11}");

  const auto u = cg::usage_factors(instance, f);
  const cg::CellConfig config{2, 2};
  const auto qap = cg::solve_qap(u, config);
  const auto heuristic = cg::run_heuristic(instance, f, config);
  audit_cells(u, config, qap);
  audit_cells(u, config, heuristic);
  c.expect(qap.utilization == 9, "QAP utilization " + std::to_string(qap.utilization) + " != 9");
  c.expect(machine_cells(qap) == std::set<std::set<int>>{{1, 3}, {2, 4}}, "QAP cells differ from {1,3},{2,4}");
  c.expect(heuristic == qap, "heuristic cell solution differs from QAP");
  c.expect(cg::count_exceptional_elements(instance, f, qap) == 0, "exceptional elements != 0");
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  std::ostringstream detail;
  detail << "objective " << f.objective << ", utilization " << qap.utilization << ", " << elapsed << " s";
  return {c.ok(), c.ok() ? detail.str() : c.summary()};
}

Outcome ac2_block_diagonal_report() {
  Check c;
  const auto instance = cg::testing::example1();
  const auto f = solve_families(instance).families;
  const auto cells = cg::solve_qap(cg::usage_factors(instance, f), cg::CellConfig{2, 2});
  const auto report = cg::build_report(instance, f, cells);
  std::vector<int> rows, cols;
  for (auto r : report.row_order) rows.push_back(r.value());
  for (auto m : report.column_order) cols.push_back(m.value());
  c.expect(rows == std::vector<int>{5, 9, 11, 2, 7}, "row order differs from 5 9 11 | 2 7");
  c.expect(cols == std::vector<int>{1, 3, 2, 4}, "column order differs from 1 3 | 2 4");
  c.expect(report.exceptional_elements == 0, "exceptional elements != 0");
  return {c.ok(), c.ok() ? "rows 5 9 11 | 2 7, columns 1 3 | 2 4" : c.summary()};
}

Outcome ac3_partial_example_two() {
  Check c;
  const auto instance = cg::load_instance(cg::testing::data_path("example2_partial.cms"));
  const auto solved = solve_families(instance).families;
  const auto oracle = cg::brute_force_families(instance, cg::dissimilarity_matrix(instance));
  audit_families(instance, oracle);
  c.expect(solved.objective == oracle.objective, "solver " + std::to_string(solved.objective) + " != oracle " +
                                                     std::to_string(oracle.objective));
  return {c.ok(), c.ok() ? "objective " + std::to_string(solved.objective) + " equals oracle" : c.summary()};
}

Outcome ac4_oracle_equivalence() {
  Check c;
  const auto start = Clock::now();
  std::mt19937 rng(20240601);
  const int trials = 150;
  for (int t = 0; t < trials; ++t) {
    const auto instance = cg::testing::random_instance(rng);
    const auto d = cg::dissimilarity_matrix(instance);
    const auto solved = solve_families(instance).families;
    const auto oracle = cg::brute_force_families(instance, d);
    c.expect(solved.objective == oracle.objective, "instance " + std::to_string(t) + ": solver " +
                                                       std::to_string(solved.objective) + " != oracle " +
                                                       std::to_string(oracle.objective));
  }
  const double elapsed = seconds_since(start);
  c.expect(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s");
  std::ostringstream detail;
  detail << trials << " instances, " << elapsed << " s";
  return {c.ok(), c.ok() ? detail.str() : c.summary()};
}

Outcome ac6_qap_exactness() {
  Check c;
  std::mt19937 rng(7);
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    const auto u = cg::testing::random_usage(rng, 6, 3);
    const int max_cells = std::uniform_int_distribution<int>(1, 3)(rng);
    const int machines = static_cast<int>(u.machine_count());
    const int min_cap = (machines + max_cells - 1) / max_cells;
    const cg::CellConfig config{max_cells, std::uniform_int_distribution<int>(min_cap, machines)(rng)};
    const auto qap = cg::solve_qap(u, config);
    const auto heuristic = cg::run_heuristic(u, config);
    audit_cells(u, config, qap);
    audit_cells(u, config, heuristic);
    const auto exact = cg::testing::exhaustive_qap(u, config);
    const auto label = "matrix " + std::to_string(t) + ": ";
    c.expect(qap.utilization == exact, label + "QAP " + std::to_string(qap.utilization) + " != exhaustive " +
                                           std::to_string(exact));
    c.expect(heuristic.utilization <= qap.utilization, label + "heuristic above QAP");
  }
  return {c.ok(), c.ok() ? std::to_string(trials) + " matrices" : c.summary()};
}

// Full pipeline on random instances, feeding the structural audit.
void random_pipelines() {
  std::mt19937 rng(99);
  for (int t = 0; t < 60; ++t) {
    const auto instance = cg::testing::random_instance(rng);
    const auto f = solve_families(instance).families;
    const auto u = cg::usage_factors(instance, f);
    const int cells = std::uniform_int_distribution<int>(1, static_cast<int>(f.families.size()))(rng);
    const cg::CellConfig config{cells, cg::default_cell_capacity(instance.machine_count(), cells)};
    const auto qap = cg::solve_qap(u, config);
    audit_cells(u, config, qap);
    audit_cells(u, config, cg::run_heuristic(instance, f, config));
    cg::build_report(instance, f, qap);
  }
}

Outcome ac8_determinism() {
  Check c;
  const auto example1 = cg::testing::data_path("example1.cms").string();
  const auto example2 = cg::testing::data_path("example2_partial.cms").string();
  const std::vector<std::vector<std::string>> invocations = {
      {"solve", "--instance", example1, "--cells", "2", "--cell-cap", "2", "--method", "both"},
      {"solve", "--instance", example1, "--format", "json", "--seed-check"},
      {"solve", "--instance", example2, "--method", "both"},
      {"export-network", "--instance", example1},
      {"oracle", "--instance", example2, "--compare"},
  };
  std::string dimacs;
  for (const auto& args : invocations) {
    std::string outputs[2];
    for (auto& output : outputs) {
      std::ostringstream out, err;
      const int code = cellgroup::cli::run(args, out, err);
      c.expect(code == cellgroup::cli::kExitOk, args[0] + " exited " + std::to_string(code) + ": " + err.str());
      output = out.str();
    }
    c.expect(outputs[0] == outputs[1], args[0] + " output differs between runs");
    if (args[0] == "export-network") dimacs = outputs[0];
  }
  c.expect(dimacs.find("\np min 32 129\n") != std::string::npos, "DIMACS header is not 'p min 32 129'");
  return {c.ok(), c.ok() ? std::to_string(invocations.size()) + " invocations repeated, header p min 32 129"
                         : c.summary()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1 example I end to end", ac1_example_one},
      {"AC2 block-diagonal report", ac2_block_diagonal_report},
      {"AC3 example II sub-instance vs oracle", ac3_partial_example_two},
      {"AC4 oracle equivalence on random instances", ac4_oracle_equivalence},
      {"AC5 flow invariants on every solver output",
       [] {
         random_pipelines();
         return Outcome{g_flow_check.ok(), g_flow_check.ok() ? std::to_string(g_flows_checked) + " flows checked"
                                                             : g_flow_check.summary()};
       }},
      {"AC6 QAP exactness and heuristic bound", ac6_qap_exactness},
      {"AC7 structural invariants on pipeline outputs",
       [] {
         return Outcome{g_structure_check.ok(), g_structure_check.ok()
                                                    ? std::to_string(g_structures_checked) + " outputs checked"
                                                    : g_structure_check.summary()};
       }},
      {"AC8 CLI determinism and DIMACS header", ac8_determinism},
  };

  int failed = 0;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failed;
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << criterion.name << " -- " << outcome.detail << '\n';
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
