#include "cellgroup/flow_network.hpp"

#include <algorithm>
#include <sstream>

#include "cellgroup/errors.hpp"

namespace cellgroup {

std::size_t FlowNetwork::supply_node(PartId k) const { return k.index(); }

std::size_t FlowNetwork::route_in_node(RouteId i) const { return route_count_by_part_.size() + i.index(); }

std::size_t FlowNetwork::route_out_node(RouteId i) const {
  return route_count_by_part_.size() + route_part_.size() + i.index();
}

std::size_t FlowNetwork::demand_node(PartId k) const {
  return route_count_by_part_.size() + 2 * route_part_.size() + k.index();
}

std::optional<std::size_t> FlowNetwork::relational_arc(RouteId from, RouteId to) const {
  const auto n = route_part_.size();
  const auto v = relational_index_[from.index() * n + to.index()];
  if (v < 0) return std::nullopt;
  return static_cast<std::size_t>(v);
}

FlowNetwork build_network(const Instance& instance, const DissimilarityMatrix& d) {
  FlowNetwork net;
  const int k_count = instance.part_count();
  const int n = instance.route_count();
  const auto nn = static_cast<std::size_t>(n);

  net.route_part_.resize(nn);
  for (int i = 1; i <= n; ++i) net.route_part_[RouteId{i}.index()] = instance.part_of(RouteId{i});
  for (const auto& part : instance.parts()) net.route_count_by_part_.push_back(static_cast<int>(part.routes.size()));

  for (int k = 1; k <= k_count; ++k) net.nodes.push_back({NodeKind::kSupply, k, net.route_count_by_part_[k - 1] - 1});
  for (int i = 1; i <= n; ++i) net.nodes.push_back({NodeKind::kRouteIn, i, 0});
  for (int i = 1; i <= n; ++i) net.nodes.push_back({NodeKind::kRouteOut, i, 0});
  for (int k = 1; k <= k_count; ++k) {
    net.nodes.push_back({NodeKind::kDemand, k, -(net.route_count_by_part_[k - 1] - 1)});
  }

  net.supply_arc_.resize(nn);
  net.transshipment_arc_.resize(nn);
  net.demand_arc_.resize(nn);
  net.relational_from_.resize(nn);
  net.relational_index_.assign(nn * nn, -1);

  for (const auto& part : instance.parts()) {
    auto routes = part.routes;
    std::sort(routes.begin(), routes.end());
    for (auto i : routes) {
      net.supply_arc_[i.index()] = net.arcs.size();
      net.arcs.push_back({net.supply_node(part.id), net.route_in_node(i), 1, 0, 0, ArcKind::kSupply});
    }
  }
  for (int i = 1; i <= n; ++i) {
    const RouteId r{i};
    net.transshipment_arc_[r.index()] = net.arcs.size();
    net.arcs.push_back({net.route_in_node(r), net.route_out_node(r), 1, 1, 0, ArcKind::kTransshipment});
  }
  // Demand arcs ordered by tail (i_b), so by route.
  for (int i = 1; i <= n; ++i) {
    const RouteId r{i};
    net.demand_arc_[r.index()] = net.arcs.size();
    net.arcs.push_back({net.route_out_node(r), net.demand_node(net.part_of(r)), 1, 0, 0, ArcKind::kDemand});
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const RouteId from{i}, to{j};
      const auto cost = d.at(from, to);
      if (!cost) continue;
      const auto pos = net.arcs.size();
      net.relational_index_[from.index() * nn + to.index()] = static_cast<std::int64_t>(pos);
      net.relational_from_[from.index()].push_back(pos);
      net.arcs.push_back({net.route_out_node(from), net.route_in_node(to), 1, 0, *cost, ArcKind::kRelational});
    }
  }
  return net;
}

std::size_t expected_arc_count(const Instance& instance) {
  const auto n = static_cast<std::size_t>(instance.route_count());
  std::size_t same_part = 0;
  for (const auto& part : instance.parts()) same_part += part.routes.size() * (part.routes.size() - 1);
  return 3 * n + n * (n - 1) - same_part;
}

std::int64_t relational_cost(const FlowNetwork& network, const FlowSolution& solution) {
  std::int64_t total = 0;
  for (std::size_t a = 0; a < network.arcs.size(); ++a) {
    if (network.arcs[a].kind == ArcKind::kRelational) total += std::int64_t{network.arcs[a].cost} * solution.flow[a];
  }
  return total;
}

std::vector<std::string> check_flow(const FlowNetwork& network, const FlowSolution& solution) {
  std::vector<std::string> problems;
  if (solution.flow.size() != network.arcs.size()) {
    problems.push_back("flow vector has " + std::to_string(solution.flow.size()) + " entries for " +
                       std::to_string(network.arcs.size()) + " arcs");
    return problems;
  }

  std::int64_t total_cost = 0;
  std::vector<int> inflow(network.nodes.size(), 0), outflow(network.nodes.size(), 0);
  for (std::size_t a = 0; a < network.arcs.size(); ++a) {
    const auto& arc = network.arcs[a];
    const int f = solution.flow[a];
    if (f != 0 && f != 1) problems.push_back("arc " + std::to_string(a + 1) + " flow is not 0-1");
    if (f < arc.lower || f > arc.upper) problems.push_back("arc " + std::to_string(a + 1) + " flow outside [L, U]");
    if (arc.kind != ArcKind::kRelational && arc.cost != 0) {
      problems.push_back("arc " + std::to_string(a + 1) + " is not relational but has nonzero cost");
    }
    total_cost += std::int64_t{arc.cost} * f;
    outflow[arc.tail] += f;
    inflow[arc.head] += f;
  }

  for (std::size_t v = 0; v < network.nodes.size(); ++v) {
    const auto& node = network.nodes[v];
    const std::string id = std::to_string(node.index);
    switch (node.kind) {
      case NodeKind::kSupply:
        if (outflow[v] - inflow[v] != node.balance) {
          problems.push_back("supply node " + id + "_s ships " + std::to_string(outflow[v]) + ", expected " +
                             std::to_string(node.balance));
        }
        break;
      case NodeKind::kRouteIn:
        if (inflow[v] != 1) problems.push_back("node " + id + "_a receives " + std::to_string(inflow[v]) + " units");
        if (inflow[v] != outflow[v]) problems.push_back("node " + id + "_a does not conserve flow");
        break;
      case NodeKind::kRouteOut:
        if (outflow[v] != 1) problems.push_back("node " + id + "_b ships " + std::to_string(outflow[v]) + " units");
        if (inflow[v] != outflow[v]) problems.push_back("node " + id + "_b does not conserve flow");
        break;
      case NodeKind::kDemand:
        if (outflow[v] - inflow[v] != node.balance) {
          problems.push_back("demand node " + id + "_d receives " + std::to_string(inflow[v]) + ", expected " +
                             std::to_string(-node.balance));
        }
        break;
    }
  }

  for (int i = 1; i <= network.route_count(); ++i) {
    const RouteId r{i};
    const auto& out = solution.flow;
    if (out[network.supply_arc(r)] != out[network.demand_arc(r)]) {
      problems.push_back("side constraint violated for route " + std::to_string(i) + ": f(k_s, " +
                         std::to_string(i) + "_a) != f(" + std::to_string(i) + "_b, k_d)");
    }
  }

  if (total_cost != solution.objective) {
    problems.push_back("objective " + std::to_string(solution.objective) + " differs from arc cost total " +
                       std::to_string(total_cost));
  }
  if (relational_cost(network, solution) != total_cost) problems.push_back("cost outside relational arcs");
  return problems;
}

std::string to_dimacs(const FlowNetwork& network) {
  std::ostringstream out;
  out << "c route-selection network: " << network.part_count() << " parts, " << network.route_count()
      << " routes\n";
  out << "c nodes 1.." << network.part_count() << " supply k_s, then route-in i_a, route-out i_b, demand k_d\n";
  out << "p min " << network.nodes.size() << ' ' << network.arcs.size() << '\n';
  for (std::size_t v = 0; v < network.nodes.size(); ++v) {
    if (network.nodes[v].balance != 0) out << "n " << v + 1 << ' ' << network.nodes[v].balance << '\n';
  }
  for (const auto& arc : network.arcs) {
    out << "a " << arc.tail + 1 << ' ' << arc.head + 1 << ' ' << arc.lower << ' ' << arc.upper << ' ' << arc.cost
        << '\n';
  }
  for (int i = 1; i <= network.route_count(); ++i) {
    const RouteId r{i};
    const auto k = network.part_of(r);
    out << "c side-constraint f(" << network.supply_node(k) + 1 << ',' << network.route_in_node(r) + 1 << ") = f("
        << network.route_out_node(r) + 1 << ',' << network.demand_node(k) + 1 << ")\n";
  }
  return out.str();
}

}  // namespace cellgroup
