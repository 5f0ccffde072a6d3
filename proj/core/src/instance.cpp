#include "cellgroup/instance.hpp"

#include <string>

#include "cellgroup/errors.hpp"

namespace cellgroup {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw Error(code, "core_model: " + message);
}

}  // namespace

const Part& Instance::part(PartId k) const {
  if (!valid(k)) fail(ErrorCode::kInvalidId, "part " + std::to_string(k.value()) + " out of range");
  return parts_[k.index()];
}

PartId Instance::part_of(RouteId i) const {
  if (!valid(i)) fail(ErrorCode::kInvalidId, "route " + std::to_string(i.value()) + " out of range");
  return route_part_[i.index()];
}

bool Instance::uses(RouteId i, MachineId m) const {
  if (!valid(m)) fail(ErrorCode::kInvalidId, "machine " + std::to_string(m.value()) + " out of range");
  return row(i)[m.index()] != 0;
}

std::span<const MachineId> Instance::machines(RouteId i) const {
  if (!valid(i)) fail(ErrorCode::kInvalidId, "route " + std::to_string(i.value()) + " out of range");
  return route_machines_[i.index()];
}

std::span<const std::uint8_t> Instance::row(RouteId i) const {
  if (!valid(i)) fail(ErrorCode::kInvalidId, "route " + std::to_string(i.value()) + " out of range");
  const auto m = static_cast<std::size_t>(machine_count_);
  return std::span<const std::uint8_t>(incidence_).subspan(i.index() * m, m);
}

Instance validate_instance(const RawInstance& raw) {
  if (raw.machine_count < 1) fail(ErrorCode::kDimensionMismatch, "machine count must be at least 1");
  if (raw.part_routes.size() < 2) {
    fail(ErrorCode::kTooFewParts,
         "at least two parts are required, got " + std::to_string(raw.part_routes.size()));
  }

  const auto n = raw.incidence.size();
  const auto m = static_cast<std::size_t>(raw.machine_count);

  Instance out;
  out.machine_count_ = raw.machine_count;
  out.route_part_.assign(n, PartId{});
  out.incidence_.assign(n * m, 0);
  out.route_machines_.resize(n);

  std::size_t listed = 0;
  for (std::size_t k = 0; k < raw.part_routes.size(); ++k) {
    const auto part = PartId::from_index(k);
    if (raw.part_routes[k].empty()) {
      fail(ErrorCode::kDimensionMismatch, "part " + std::to_string(part.value()) + " has no routes");
    }
    Part p{part, {}};
    for (int r : raw.part_routes[k]) {
      if (r < 1 || static_cast<std::size_t>(r) > n) {
        fail(ErrorCode::kDimensionMismatch, "route " + std::to_string(r) + " of part " +
                                                std::to_string(part.value()) + " has no incidence row");
      }
      const RouteId route{r};
      if (out.route_part_[route.index()].value() != 0) {
        fail(ErrorCode::kDuplicateRoute, "route " + std::to_string(r) + " assigned more than once");
      }
      out.route_part_[route.index()] = part;
      p.routes.push_back(route);
      ++listed;
    }
    out.parts_.push_back(std::move(p));
  }
  if (listed != n) {
    fail(ErrorCode::kDimensionMismatch,
         std::to_string(n) + " incidence rows but " + std::to_string(listed) + " routes listed under parts");
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = raw.incidence[i];
    if (row.size() != m) {
      fail(ErrorCode::kDimensionMismatch, "route " + std::to_string(i + 1) + " row has " +
                                              std::to_string(row.size()) + " entries, expected " +
                                              std::to_string(m));
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (row[j] != 0 && row[j] != 1) {
        fail(ErrorCode::kDimensionMismatch, "route " + std::to_string(i + 1) + " has non-binary entry");
      }
      if (row[j] == 1) {
        out.incidence_[i * m + j] = 1;
        out.route_machines_[i].push_back(MachineId::from_index(j));
      }
    }
    if (out.route_machines_[i].empty()) {
      fail(ErrorCode::kEmptyRoute, "route " + std::to_string(i + 1) + " uses no machine");
    }
  }
  return out;
}

std::vector<MachineId> machines_of(const Instance& instance, RouteId i) {
  const auto ms = instance.machines(i);
  return {ms.begin(), ms.end()};
}

RawInstance to_raw(const Instance& instance) {
  RawInstance raw;
  raw.machine_count = instance.machine_count();
  for (const auto& part : instance.parts()) {
    auto& routes = raw.part_routes.emplace_back();
    for (auto r : part.routes) routes.push_back(r.value());
  }
  for (int i = 1; i <= instance.route_count(); ++i) {
    const auto row = instance.row(RouteId{i});
    raw.incidence.emplace_back(row.begin(), row.end());
  }
  return raw;
}

}  // namespace cellgroup
