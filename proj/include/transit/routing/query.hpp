#pragma once

#include <cstdint>
#include <string_view>

#include "transit/ids.hpp"
#include "transit/time.hpp"
#include "transit/timetable.hpp"

namespace transit::routing {

enum class Pruning { kOff, kEarly };

std::string_view to_string(Pruning pruning);

struct Query {
  StopId source;
  StopId target;
  Time departure;
  int max_rounds = 16;
  Pruning pruning = Pruning::kOff;
};

/// Transfer-phase bookkeeping. `edges_examined` counts edges whose candidate was
/// compared against labels (relaxed or skipped by domination); edges cut off by
/// Early Pruning are counted only in `edges_pruned`. Hence, for the same query,
/// examined(Early) + pruned(Early) == examined(Off).
struct Counters {
  std::uint64_t edges_examined = 0;
  std::uint64_t edges_relaxed = 0;
  std::uint64_t edges_skipped = 0;
  std::uint64_t edges_pruned = 0;
  std::uint64_t routes_scanned = 0;
  std::uint64_t rounds = 0;

  friend bool operator==(const Counters&, const Counters&) = default;
};

/// Throws QueryError for unknown stops or max_rounds < 1, and PreconditionError
/// when Early pruning is requested on a graph without the sorted flag.
void check_query(const Timetable& timetable, const Query& query);

}  // namespace transit::routing
