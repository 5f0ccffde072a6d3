#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cellgroup/ids.hpp"

namespace cellgroup {

// Unchecked instance data as read from a file or built by hand.
// `part_routes[k]` lists the 1-based route numbers of part k+1;
// `incidence[i]` is the machine row of route i+1 (M entries, 0 or 1).
struct RawInstance {
  int machine_count = 0;
  std::vector<std::vector<int>> part_routes;
  std::vector<std::vector<int>> incidence;
};

struct Part {
  PartId id;
  std::vector<RouteId> routes;
};

// A validated generalized-grouping instance: K parts, each with its
// alternative process routes, and the binary route x machine incidence.
// Immutable once built; obtain one through validate_instance().
class Instance {
 public:
  int machine_count() const { return machine_count_; }
  int part_count() const { return static_cast<int>(parts_.size()); }
  int route_count() const { return static_cast<int>(route_part_.size()); }

  std::span<const Part> parts() const { return parts_; }
  const Part& part(PartId k) const;
  PartId part_of(RouteId i) const;

  bool uses(RouteId i, MachineId m) const;
  // Machines used by route i, ascending.
  std::span<const MachineId> machines(RouteId i) const;
  // Raw incidence row of route i.
  std::span<const std::uint8_t> row(RouteId i) const;

  bool valid(RouteId i) const { return i.value() >= 1 && i.value() <= route_count(); }
  bool valid(MachineId m) const { return m.value() >= 1 && m.value() <= machine_count_; }
  bool valid(PartId k) const { return k.value() >= 1 && k.value() <= part_count(); }

 private:
  friend Instance validate_instance(const RawInstance& raw);
  Instance() = default;

  int machine_count_ = 0;
  std::vector<Part> parts_;
  std::vector<PartId> route_part_;
  std::vector<std::uint8_t> incidence_;  // row-major, N x M
  std::vector<std::vector<MachineId>> route_machines_;
};

// Checks every structural invariant and returns the immutable Instance.
// Throws cellgroup::Error with kEmptyRoute, kDuplicateRoute, kTooFewParts,
// kDimensionMismatch or kInvalidId.
Instance validate_instance(const RawInstance& raw);

std::vector<MachineId> machines_of(const Instance& instance, RouteId i);

// Inverse of validate_instance(), handy for round trips and generators.
RawInstance to_raw(const Instance& instance);

}  // namespace cellgroup
