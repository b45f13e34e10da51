#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "transit/timetable.hpp"

namespace transit {

enum class ViolationKind {
  kStopOutOfRange,
  kRouteTooShort,
  kRouteTripMismatch,
  kTripLength,
  kInfiniteTime,
  kDwellTime,
  kTravelTime,
  kTripOrdering,
  kRoutesByStop,
  kGraphTooSmall,
  kGraphSelfLoop,
  kGraphDuration,
  kGraphUnsorted,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string location;
  std::string detail;
};

/// Checks every timetable invariant and returns one entry per violation.
/// An empty result means the timetable is well-formed.
std::vector<Violation> validate(const Timetable& timetable);

}  // namespace transit
