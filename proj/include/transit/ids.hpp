#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace transit {

/// Dense index into one collection of the timetable. Valid values are [0, count).
template <class Tag>
class Id {
 public:
  using rep = std::uint32_t;

  constexpr Id() = default;
  constexpr explicit Id(rep value) : value_(value) {}

  [[nodiscard]] constexpr rep value() const { return value_; }
  [[nodiscard]] constexpr std::size_t index() const { return value_; }

  friend constexpr auto operator<=>(Id, Id) = default;

 private:
  rep value_ = 0;
};

using StopId = Id<struct StopTag>;
using RouteId = Id<struct RouteTag>;
using TripId = Id<struct TripTag>;
using VertexId = Id<struct VertexTag>;

/// Every stop is a vertex of the transfer graph, with the same index.
constexpr VertexId to_vertex(StopId stop) { return VertexId(stop.value()); }

}  // namespace transit

template <class Tag>
struct std::hash<transit::Id<Tag>> {
  std::size_t operator()(transit::Id<Tag> id) const noexcept { return std::hash<std::uint32_t>{}(id.value()); }
};
