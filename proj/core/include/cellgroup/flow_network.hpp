#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cellgroup/dissimilarity.hpp"
#include "cellgroup/ids.hpp"
#include "cellgroup/instance.hpp"

namespace cellgroup {

enum class NodeKind { kSupply, kRouteIn, kRouteOut, kDemand };
enum class ArcKind { kSupply, kTransshipment, kDemand, kRelational };

// Supply(k) / Demand(k) carry a part id in `index`; RouteIn(i) / RouteOut(i)
// carry a route id. Balance is signed: +supply, -demand.
struct FlowNode {
  NodeKind kind;
  int index;
  int balance;
};

struct FlowArc {
  std::size_t tail;  // positions in FlowNetwork::nodes
  std::size_t head;
  int upper;
  int lower;
  int cost;
  ArcKind kind;
};

// The unit-capacity route-selection network:
//   supply arcs       k_s -> i_a  [1,0,0]    for i in PR(k)
//   transshipment     i_a -> i_b  [1,1,0]    for every route
//   demand arcs       i_b -> k_d  [1,0,0]    for i in PR(k)
//   relational arcs   i_b -> j_a  [1,0,d_ij] for i, j of distinct parts
// Nodes are ordered supply, route-in, route-out, demand; arcs by kind and
// then (tail, head).
class FlowNetwork {
 public:
  std::vector<FlowNode> nodes;
  std::vector<FlowArc> arcs;

  int part_count() const { return static_cast<int>(route_count_by_part_.size()); }
  int route_count() const { return static_cast<int>(route_part_.size()); }
  PartId part_of(RouteId i) const { return route_part_[i.index()]; }
  int route_count_of(PartId k) const { return route_count_by_part_[k.index()]; }

  std::size_t supply_node(PartId k) const;
  std::size_t route_in_node(RouteId i) const;
  std::size_t route_out_node(RouteId i) const;
  std::size_t demand_node(PartId k) const;

  std::size_t supply_arc(RouteId i) const { return supply_arc_[i.index()]; }
  std::size_t transshipment_arc(RouteId i) const { return transshipment_arc_[i.index()]; }
  std::size_t demand_arc(RouteId i) const { return demand_arc_[i.index()]; }
  std::optional<std::size_t> relational_arc(RouteId from, RouteId to) const;
  // Relational arcs leaving i_b, ascending by head route.
  const std::vector<std::size_t>& relational_arcs_from(RouteId i) const { return relational_from_[i.index()]; }

  // Route id of a RouteIn/RouteOut node.
  RouteId route_of_node(std::size_t node) const { return RouteId{nodes[node].index}; }

 private:
  friend FlowNetwork build_network(const Instance& instance, const DissimilarityMatrix& d);

  std::vector<PartId> route_part_;
  std::vector<int> route_count_by_part_;
  std::vector<std::size_t> supply_arc_;
  std::vector<std::size_t> transshipment_arc_;
  std::vector<std::size_t> demand_arc_;
  std::vector<std::vector<std::size_t>> relational_from_;
  std::vector<std::int64_t> relational_index_;  // N x N, -1 where absent
};

FlowNetwork build_network(const Instance& instance, const DissimilarityMatrix& d);

// Number of arcs the construction rules produce:
// 3N + N(N-1) - sum_k TPR(k)(TPR(k)-1).
std::size_t expected_arc_count(const Instance& instance);

struct FlowSolution {
  std::vector<std::uint8_t> flow;  // parallel to FlowNetwork::arcs
  std::int64_t objective = 0;
};

// Every violated constraint of the 0-1 route-selection model, as readable
// messages: arc bounds and integrality, conservation at supply, route-in,
// route-out and demand nodes, the one-route-per-path side constraint
// f(k_s, i_a) = f(i_b, k_d), and the objective identity. Empty when feasible.
std::vector<std::string> check_flow(const FlowNetwork& network, const FlowSolution& solution);

// Sum of cost * flow over relational arcs.
std::int64_t relational_cost(const FlowNetwork& network, const FlowSolution& solution);

// Writes the network in DIMACS min-cost-flow form. The side constraint is
// not expressible in DIMACS and is emitted as comment lines.
std::string to_dimacs(const FlowNetwork& network);

}  // namespace cellgroup
