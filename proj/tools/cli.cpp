#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "cellgroup/cell_formation.hpp"
#include "cellgroup/dissimilarity.hpp"
#include "cellgroup/errors.hpp"
#include "cellgroup/family_formation.hpp"
#include "cellgroup/instance_io.hpp"
#include "cellgroup/reporting.hpp"

namespace cellgroup::cli {

namespace {

struct SolveFlags {
  std::string instance;
  std::optional<int> cells;
  std::optional<int> cell_cap;
  std::string method = "both";
  std::string format = "table";
  bool seed_check = false;
  std::uint64_t node_limit = FamilySolverOptions{}.node_limit;
};

struct ExportFlags {
  std::string instance;
  std::string out;
};

struct OracleFlags {
  std::string instance;
  bool compare = false;
};

std::string describe_families(const FamilySolution& families) {
  std::ostringstream out;
  for (std::size_t c = 0; c < families.cycles.size(); ++c) {
    out << "cycle " << c + 1 << ":";
    for (auto r : families.cycles[c]) out << ' ' << r.value() << " ->";
    out << ' ' << families.cycles[c].front().value() << '\n';
  }
  for (std::size_t f = 0; f < families.families.size(); ++f) {
    out << "family " << f + 1 << ": routes";
    for (auto r : families.families[f]) out << ' ' << r.value();
    out << '\n';
  }
  out << "objective: " << families.objective << '\n';
  return out.str();
}

int cmd_solve(const SolveFlags& flags, std::ostream& out) {
  const auto instance = load_instance(flags.instance);
  const auto d = dissimilarity_matrix(instance);
  const auto formed = solve_family_formation(instance, d, FamilySolverOptions{flags.node_limit});
  const auto& families = formed.families;

  CellConfig config;
  config.max_cells = flags.cells.value_or(static_cast<int>(families.families.size()));
  config.max_per_cell = flags.cell_cap.value_or(default_cell_capacity(instance.machine_count(), config.max_cells));
  check_config(config, static_cast<std::size_t>(instance.machine_count()));

  const bool want_qap = flags.method != "heuristic";
  const bool want_heuristic = flags.method != "qap";
  const auto u = usage_factors(instance, families);
  std::optional<GroupingReport> qap, heuristic;
  if (want_qap) qap = build_report(instance, families, solve_qap(u, config));
  if (want_heuristic) heuristic = build_report(instance, families, run_heuristic(instance, families, config));
  const bool both = qap && heuristic;
  const bool match = both && qap->cells == heuristic->cells;

  std::optional<bool> oracle_equal;
  std::int64_t oracle_objective = 0;
  if (flags.seed_check) {
    oracle_objective = brute_force_families(instance, d).objective;
    oracle_equal = oracle_objective == families.objective;
  }

  std::ostringstream text;
  if (flags.format == "json") {
    nlohmann::ordered_json doc;
    if (both) {
      doc["qap"] = nlohmann::ordered_json::parse(render_json(*qap));
      doc["heuristic"] = nlohmann::ordered_json::parse(render_json(*heuristic));
      doc["match"] = match;
    } else {
      doc = nlohmann::ordered_json::parse(render_json(qap ? *qap : *heuristic));
    }
    if (oracle_equal) {
      doc["oracle_objective"] = oracle_objective;
      doc["oracle"] = *oracle_equal ? "EQUAL" : "DIFFERENT";
    }
    text << doc.dump(2) << '\n';
  } else {
    text << "== family formation ==\n" << describe_families(families);
    text << "cells: at most " << config.max_cells << " of at most " << config.max_per_cell << " machines\n";
    if (qap) text << "\n== cell formation: qap ==\n" << render_table(*qap);
    if (heuristic) text << "\n== cell formation: heuristic ==\n" << render_table(*heuristic);
    if (both) text << '\n' << (match ? "MATCH" : "MISMATCH") << '\n';
    if (oracle_equal) {
      text << "oracle: " << (*oracle_equal ? "EQUAL" : "DIFFERENT") << " (objective " << oracle_objective << ")\n";
    }
  }
  out << text.str();
  return oracle_equal.value_or(true) ? kExitOk : kExitMismatch;
}

int cmd_export_network(const ExportFlags& flags, std::ostream& out) {
  const auto instance = load_instance(flags.instance);
  const auto network = build_network(instance, dissimilarity_matrix(instance));
  const auto dimacs = to_dimacs(network);
  if (flags.out.empty()) {
    out << dimacs;
    return kExitOk;
  }
  std::ofstream file(flags.out, std::ios::binary);
  if (!file) throw std::runtime_error("cli: cannot write '" + flags.out + "'");
  file << dimacs;
  if (!file.flush()) throw std::runtime_error("cli: failed writing '" + flags.out + "'");
  return kExitOk;
}

int cmd_oracle(const OracleFlags& flags, std::ostream& out) {
  const auto instance = load_instance(flags.instance);
  const auto d = dissimilarity_matrix(instance);
  const auto oracle = brute_force_families(instance, d);
  std::ostringstream text;
  text << describe_families(oracle);
  int code = kExitOk;
  if (flags.compare) {
    const auto solved = solve_family_formation(instance, d);
    const bool equal = solved.families.objective == oracle.objective;
    text << "solver objective: " << solved.families.objective << '\n' << (equal ? "EQUAL" : "DIFFERENT") << '\n';
    if (!equal) code = kExitMismatch;
  }
  out << text.str();
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized grouping: route families by min-cost flow, machine cells by QAP or heuristic",
               "cellgroup"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Form route families and machine cells, print the report");
  solve_cmd->add_option("--instance", solve.instance, "Instance file")->required();
  solve_cmd->add_option("--cells", solve.cells, "Maximum number of cells (default: number of families)")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--cell-cap", solve.cell_cap, "Maximum machines per cell (default: ceil(M / cells))")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--method", solve.method, "Cell formation method")
      ->check(CLI::IsMember({"qap", "heuristic", "both"}));
  solve_cmd->add_option("--format", solve.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  solve_cmd->add_flag("--seed-check", solve.seed_check, "Also run the brute-force oracle and compare objectives");
  solve_cmd->add_option("--node-limit", solve.node_limit, "Branch-and-bound node budget for family formation")
      ->check(CLI::PositiveNumber);

  ExportFlags export_flags;
  auto* export_cmd = app.add_subcommand("export-network", "Write the route-selection network in DIMACS form");
  export_cmd->add_option("--instance", export_flags.instance, "Instance file")->required();
  export_cmd->add_option("--out", export_flags.out, "Output path (default: stdout)");

  OracleFlags oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Solve family formation by exhaustive enumeration");
  oracle_cmd->add_option("--instance", oracle.instance, "Instance file")->required();
  oracle_cmd->add_flag("--compare", oracle.compare, "Compare with the branch-and-bound solver");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve, out);
    if (export_cmd->parsed()) return cmd_export_network(export_flags, out);
    if (oracle_cmd->parsed()) return cmd_oracle(oracle, out);
  } catch (const TimeoutError& e) {
    err << "error: " << e.what();
    if (e.incumbent()) err << " (incumbent " << *e.incumbent() << ", bound " << e.bound() << ")";
    err << '\n';
    return kExitTimeout;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kMalformedFlow ? kExitMismatch : kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace cellgroup::cli
