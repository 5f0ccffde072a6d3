#include "cellgroup/family_formation.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "cellgroup/assignment.hpp"
#include "cellgroup/errors.hpp"

namespace cellgroup {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

[[noreturn]] void malformed(const std::string& message) {
  throw Error(ErrorCode::kMalformedFlow, "family_formation: malformed flow: " + message);
}

std::vector<std::vector<RouteId>> sorted_routes_by_part(const Instance& instance) {
  std::vector<std::vector<RouteId>> routes;
  for (const auto& part : instance.parts()) {
    auto& rs = routes.emplace_back(part.routes);
    std::sort(rs.begin(), rs.end());
  }
  return routes;
}

// Turns a successor map over parts into cycles of route ids, each starting
// at its smallest route and ordered by that route.
void fill_cycles(const std::vector<RouteId>& selected, const std::vector<std::size_t>& successor,
                 FamilySolution& out) {
  const std::size_t k = selected.size();
  std::vector<std::size_t> order(k);
  for (std::size_t p = 0; p < k; ++p) order[p] = p;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return selected[a] < selected[b]; });
  std::vector<char> seen(k, 0);
  for (std::size_t start : order) {
    if (seen[start]) continue;
    auto& cycle = out.cycles.emplace_back();
    for (std::size_t p = start; !seen[p]; p = successor[p]) {
      seen[p] = 1;
      cycle.push_back(selected[p]);
    }
    auto family = cycle;
    std::sort(family.begin(), family.end());
    out.families.push_back(std::move(family));
  }
}

class BranchAndBound {
 public:
  BranchAndBound(const Instance& instance, const DissimilarityMatrix& d, const FamilySolverOptions& options)
      : d_(d), options_(options), routes_(sorted_routes_by_part(instance)), parts_(routes_.size()) {
    const auto n = static_cast<std::size_t>(instance.route_count());
    // route_to_part_[i][q]: cheapest arc between route i and any route of part q.
    route_to_part_.assign(n, std::vector<std::int64_t>(parts_, kInf));
    for (std::size_t i = 0; i < n; ++i) {
      const auto from = RouteId::from_index(i);
      const auto own = instance.part_of(from).index();
      for (std::size_t q = 0; q < parts_; ++q) {
        if (q == own) continue;
        for (auto to : routes_[q]) route_to_part_[i][q] = std::min<std::int64_t>(route_to_part_[i][q], d(from, to));
      }
    }
    part_to_part_.assign(parts_, std::vector<std::int64_t>(parts_, kInf));
    for (std::size_t p = 0; p < parts_; ++p) {
      for (std::size_t q = 0; q < parts_; ++q) {
        if (p == q) continue;
        for (auto r : routes_[p]) part_to_part_[p][q] = std::min(part_to_part_[p][q], route_to_part_[r.index()][q]);
      }
    }
    selected_.resize(parts_);
  }

  void run() {
    root_bound_ = bound(0);
    descend(0);
  }

  std::int64_t best_cost() const { return best_cost_; }
  const std::vector<RouteId>& best_selection() const { return best_selection_; }
  std::uint64_t nodes() const { return nodes_; }
  std::int64_t root_bound() const { return root_bound_; }

 private:
  // Arc cost between parts p and q when parts [0, fixed) have their route
  // chosen and the rest may use any of theirs.
  std::int64_t arc(std::size_t p, std::size_t q, std::size_t fixed) const {
    const bool p_fixed = p < fixed;
    const bool q_fixed = q < fixed;
    if (p_fixed && q_fixed) return d_(selected_[p], selected_[q]);
    if (p_fixed) return route_to_part_[selected_[p].index()][q];
    if (q_fixed) return route_to_part_[selected_[q].index()][p];
    return part_to_part_[p][q];
  }

  std::int64_t bound(std::size_t fixed) const {
    CostMatrix costs(parts_, parts_);
    for (std::size_t p = 0; p < parts_; ++p) {
      for (std::size_t q = 0; q < parts_; ++q) {
        if (p == q) {
          costs.forbid(p, q);
        } else {
          costs.set(p, q, arc(p, q, fixed));
        }
      }
    }
    const auto result = solve_assignment(costs);
    return result ? result->cost : kInf;
  }

  void descend(std::size_t depth) {
    for (auto route : routes_[depth]) {
      if (++nodes_ > options_.node_limit) {
        throw TimeoutError("family_formation: node limit of " + std::to_string(options_.node_limit) + " exceeded",
                           best_cost_ < kInf ? std::optional<std::int64_t>(best_cost_) : std::nullopt, root_bound_);
      }
      selected_[depth] = route;
      const auto b = bound(depth + 1);
      // Later leaves are lexicographically larger, so ties are pruned too.
      if (b >= best_cost_) continue;
      if (depth + 1 == parts_) {
        best_cost_ = b;
        best_selection_ = selected_;
      } else {
        descend(depth + 1);
      }
    }
  }

  const DissimilarityMatrix& d_;
  FamilySolverOptions options_;
  std::vector<std::vector<RouteId>> routes_;
  std::size_t parts_;
  std::vector<std::vector<std::int64_t>> route_to_part_;
  std::vector<std::vector<std::int64_t>> part_to_part_;
  std::vector<RouteId> selected_;
  std::vector<RouteId> best_selection_;
  std::int64_t best_cost_ = kInf;
  std::int64_t root_bound_ = 0;
  std::uint64_t nodes_ = 0;
};

// Smallest successor vector among minimum cycle covers of the selection,
// fixing one part at a time and re-solving the remaining assignment.
std::vector<std::size_t> smallest_optimal_successors(const DissimilarityMatrix& d, const std::vector<RouteId>& selected,
                                                     std::int64_t optimum) {
  const std::size_t k = selected.size();
  std::vector<std::size_t> successor;
  std::vector<char> taken(k, 0);
  for (std::size_t p = 0; p < k; ++p) {
    bool placed = false;
    for (std::size_t q = 0; q < k && !placed; ++q) {
      if (q == p || taken[q]) continue;
      CostMatrix costs(k, k);
      for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) {
          const bool fixed_row = r < p;
          const bool allowed = r != c && (fixed_row ? successor[r] == c : (r == p ? c == q : !taken[c] && c != q));
          if (allowed) {
            costs.set(r, c, d(selected[r], selected[c]));
          } else {
            costs.forbid(r, c);
          }
        }
      }
      const auto result = solve_assignment(costs);
      if (result && result->cost == optimum) {
        successor.push_back(q);
        taken[q] = 1;
        placed = true;
      }
    }
    if (!placed) throw Error(ErrorCode::kMalformedFlow, "family_formation: lost the optimum while fixing successors");
  }
  return successor;
}

}  // namespace

std::optional<std::size_t> FamilySolution::family_of(RouteId i) const {
  for (std::size_t f = 0; f < families.size(); ++f) {
    if (std::find(families[f].begin(), families[f].end(), i) != families[f].end()) return f;
  }
  return std::nullopt;
}

FlowSolution flow_from_cycles(const FlowNetwork& network, const std::vector<RouteId>& selected,
                              const std::vector<std::size_t>& successor) {
  FlowSolution out;
  out.flow.assign(network.arcs.size(), 0);
  std::vector<char> is_selected(static_cast<std::size_t>(network.route_count()), 0);
  for (auto r : selected) is_selected[r.index()] = 1;
  for (int i = 1; i <= network.route_count(); ++i) {
    const RouteId r{i};
    out.flow[network.transshipment_arc(r)] = 1;
    if (!is_selected[r.index()]) {
      out.flow[network.supply_arc(r)] = 1;
      out.flow[network.demand_arc(r)] = 1;
    }
  }
  for (std::size_t p = 0; p < selected.size(); ++p) {
    const auto arc = network.relational_arc(selected[p], selected[successor[p]]);
    if (!arc) malformed("no relational arc between routes of one part");
    out.flow[*arc] = 1;
  }
  out.objective = relational_cost(network, out);
  return out;
}

FamilySolution extract_cycles(const FlowNetwork& network, const FlowSolution& flow) {
  if (flow.flow.size() != network.arcs.size()) malformed("flow size does not match the network");
  const auto n = static_cast<std::size_t>(network.route_count());
  auto supplied = [&](RouteId r) { return flow.flow[network.supply_arc(r)] != 0; };

  FamilySolution out;
  std::vector<int> unsupplied_per_part(static_cast<std::size_t>(network.part_count()), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = RouteId::from_index(i);
    if (!supplied(r)) {
      ++unsupplied_per_part[network.part_of(r).index()];
      out.selected_route[network.part_of(r)] = r;
    }
  }
  for (std::size_t k = 0; k < unsupplied_per_part.size(); ++k) {
    if (unsupplied_per_part[k] != 1) {
      malformed("part " + std::to_string(k + 1) + " has " + std::to_string(unsupplied_per_part[k]) +
                " routes without supply, expected exactly one");
    }
  }

  std::vector<char> visited(n, 0);
  std::size_t cycle_arcs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto start = RouteId::from_index(i);
    if (supplied(start) || visited[i]) continue;
    std::vector<RouteId> cycle{start};
    visited[i] = 1;
    for (auto cur = start;;) {
      std::optional<RouteId> next;
      for (auto a : network.relational_arcs_from(cur)) {
        if (flow.flow[a] == 0) continue;
        if (next) malformed("route " + std::to_string(cur.value()) + "_b ships on several relational arcs");
        next = network.route_of_node(network.arcs[a].head);
      }
      if (!next) malformed("cycle through route " + std::to_string(cur.value()) + " does not close");
      ++cycle_arcs;
      if (*next == start) break;
      if (supplied(*next)) malformed("indirect path through supplied route " + std::to_string(next->value()));
      if (visited[next->index()]) malformed("route " + std::to_string(next->value()) + " reached twice");
      visited[next->index()] = 1;
      cycle.push_back(*next);
      cur = *next;
    }
    if (cycle.size() < 2) malformed("cycle of a single route");
    auto family = cycle;
    std::sort(family.begin(), family.end());
    out.cycles.push_back(std::move(cycle));
    out.families.push_back(std::move(family));
  }

  std::size_t relational_arcs_used = 0;
  for (std::size_t a = 0; a < network.arcs.size(); ++a) {
    if (network.arcs[a].kind == ArcKind::kRelational && flow.flow[a] != 0) ++relational_arcs_used;
  }
  if (relational_arcs_used != cycle_arcs) malformed("relational flow outside the route cycles");
  out.objective = relational_cost(network, flow);
  return out;
}

FamilyFormationResult solve_family_formation(const Instance& instance, const DissimilarityMatrix& d,
                                             const FamilySolverOptions& options) {
  BranchAndBound search(instance, d, options);
  search.run();
  const auto& selected = search.best_selection();
  if (selected.empty()) throw Error(ErrorCode::kMalformedFlow, "family_formation: search found no cycle cover");

  const auto successor = smallest_optimal_successors(d, selected, search.best_cost());
  FamilyFormationResult result{build_network(instance, d), {}, {}, {}};
  result.flow = flow_from_cycles(result.network, selected, successor);
  result.families = extract_cycles(result.network, result.flow);
  result.stats.nodes = search.nodes();
  result.stats.root_bound = search.root_bound();
  if (result.flow.objective != search.best_cost()) {
    throw Error(ErrorCode::kMalformedFlow, "family_formation: flow objective disagrees with the search");
  }
  return result;
}

FamilySolution brute_force_families(const Instance& instance, const DissimilarityMatrix& d,
                                    const OracleLimits& limits) {
  const auto routes = sorted_routes_by_part(instance);
  const std::size_t k = routes.size();
  std::uint64_t selections = 1;
  for (const auto& rs : routes) {
    selections *= rs.size();
    if (selections > limits.max_selections) break;
  }
  if (static_cast<int>(k) > limits.max_parts || selections > limits.max_selections) {
    throw Error(ErrorCode::kInstanceTooLarge, "oracle: instance has " + std::to_string(k) + " parts and more than " +
                                                  std::to_string(limits.max_selections) +
                                                  " route selections or too many parts (limit " +
                                                  std::to_string(limits.max_parts) + " parts)");
  }

  const std::size_t full = std::size_t{1} << k;
  // cover[p * full + mask]: cheapest successors for parts p.. given the
  // successor columns already taken in mask.
  std::vector<std::int64_t> cover((k + 1) * full, kInf);
  std::vector<std::int64_t> cost(k * k, 0);
  auto solve_cover = [&](const std::vector<RouteId>& sel) {
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = 0; q < k; ++q) cost[p * k + q] = p == q ? kInf : d(sel[p], sel[q]);
    }
    std::fill(cover.begin(), cover.end(), kInf);
    cover[k * full + (full - 1)] = 0;
    for (std::size_t p = k; p-- > 0;) {
      for (std::size_t mask = 0; mask < full; ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) != p) continue;
        std::int64_t best = kInf;
        for (std::size_t q = 0; q < k; ++q) {
          if (q == p || (mask >> q & 1U)) continue;
          const auto rest = cover[(p + 1) * full + (mask | (std::size_t{1} << q))];
          if (rest < kInf) best = std::min(best, cost[p * k + q] + rest);
        }
        cover[p * full + mask] = best;
      }
    }
    return cover[0];
  };

  std::vector<std::size_t> pick(k, 0);
  std::vector<RouteId> sel(k), best_sel;
  std::int64_t best = kInf;
  for (;;) {
    for (std::size_t p = 0; p < k; ++p) sel[p] = routes[p][pick[p]];
    const auto value = solve_cover(sel);
    if (value < best) {
      best = value;
      best_sel = sel;
    }
    std::size_t p = k;
    while (p > 0 && ++pick[p - 1] == routes[p - 1].size()) pick[--p] = 0;
    if (p == 0) break;
  }

  solve_cover(best_sel);
  std::vector<std::size_t> successor(k);
  std::size_t mask = 0;
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = 0; q < k; ++q) {
      if (q == p || (mask >> q & 1U)) continue;
      const auto rest = cover[(p + 1) * full + (mask | (std::size_t{1} << q))];
      if (rest < kInf && cost[p * k + q] + rest == cover[p * full + mask]) {
        successor[p] = q;
        mask |= std::size_t{1} << q;
        break;
      }
    }
  }

  FamilySolution out;
  for (std::size_t p = 0; p < k; ++p) out.selected_route[PartId::from_index(p)] = best_sel[p];
  fill_cycles(best_sel, successor, out);
  out.objective = best;
  return out;
}

}  // namespace cellgroup
