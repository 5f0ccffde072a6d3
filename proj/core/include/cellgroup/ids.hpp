#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <ostream>

namespace cellgroup {

// 1-based identifier. The tag keeps parts, machines and routes from mixing.
template <typename Tag>
class Id {
 public:
  constexpr Id() = default;
  constexpr explicit Id(int value) : value_(value) {}

  constexpr int value() const { return value_; }
  // Zero-based position, for indexing dense tables.
  constexpr std::size_t index() const { return static_cast<std::size_t>(value_ - 1); }

  static constexpr Id from_index(std::size_t index) { return Id(static_cast<int>(index) + 1); }

  friend constexpr auto operator<=>(Id, Id) = default;
  friend std::ostream& operator<<(std::ostream& os, Id id) { return os << id.value_; }

 private:
  int value_ = 0;
};

using PartId = Id<struct PartTag>;
using MachineId = Id<struct MachineTag>;
using RouteId = Id<struct RouteTag>;

}  // namespace cellgroup

template <typename Tag>
struct std::hash<cellgroup::Id<Tag>> {
  std::size_t operator()(cellgroup::Id<Tag> id) const noexcept { return std::hash<int>{}(id.value()); }
};
