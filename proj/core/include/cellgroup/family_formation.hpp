#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cellgroup/dissimilarity.hpp"
#include "cellgroup/flow_network.hpp"
#include "cellgroup/ids.hpp"
#include "cellgroup/instance.hpp"

namespace cellgroup {

// One route per part, grouped into families. Each family is one cycle of
// the optimal flow; `cycles` keeps the traversal order, `families` the same
// routes sorted, with families ordered by their smallest route.
struct FamilySolution {
  std::map<PartId, RouteId> selected_route;
  std::vector<std::vector<RouteId>> families;
  std::vector<std::vector<RouteId>> cycles;
  std::int64_t objective = 0;

  // Index into `families` of the family holding route i, if any.
  std::optional<std::size_t> family_of(RouteId i) const;
};

struct FamilySolverOptions {
  // Branch-and-bound nodes (bound evaluations) before giving up with a
  // TimeoutError.
  std::uint64_t node_limit = 20'000'000;
};

struct FamilySolverStats {
  std::uint64_t nodes = 0;
  std::int64_t root_bound = 0;
};

struct FamilyFormationResult {
  FlowNetwork network;
  FlowSolution flow;
  FamilySolution families;
  FamilySolverStats stats;
};

// Exact solution of the side-constrained 0-1 flow model.
//
// With the side constraint in force every part leaves exactly one route
// unsupplied, and those routes must be covered by cycles of relational arcs.
// The search branches on the unsupplied ("selected") route of each part in
// part order; the bound is a linear assignment over parts in which every
// still-open part may enter and leave through its cheapest route. Once all
// parts are fixed the assignment is the exact minimum cycle cover.
//
// Ties: the lexicographically smallest selected-route vector wins, then the
// lexicographically smallest successor vector over the selected routes.
// Throws TimeoutError once options.node_limit is exceeded.
FamilyFormationResult solve_family_formation(const Instance& instance, const DissimilarityMatrix& d,
                                             const FamilySolverOptions& options = {});

// Reads the families off a feasible flow by following relational arcs with
// unit flow from every route whose supply arc is idle. Throws kMalformedFlow
// when a walk does not close into a cycle.
FamilySolution extract_cycles(const FlowNetwork& network, const FlowSolution& flow);

// Builds the 0-1 flow for a route selection and successor map
// (successor[p] = index of the part whose selected route follows part p's).
FlowSolution flow_from_cycles(const FlowNetwork& network, const std::vector<RouteId>& selected,
                              const std::vector<std::size_t>& successor);

struct OracleLimits {
  std::uint64_t max_selections = 100'000;
  int max_parts = 9;
};

// Independent reference: every selection of one route per part, each solved
// as a minimum cycle cover by dynamic programming over subsets of parts.
// Same tie rules as solve_family_formation. Throws kInstanceTooLarge beyond
// the limits.
FamilySolution brute_force_families(const Instance& instance, const DissimilarityMatrix& d,
                                    const OracleLimits& limits = {});

}  // namespace cellgroup
