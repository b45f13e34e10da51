#include "transit/routing/query.hpp"

#include <fmt/format.h>

#include "transit/error.hpp"

namespace transit::routing {

std::string_view to_string(Pruning pruning) { return pruning == Pruning::kEarly ? "early" : "off"; }

void check_query(const Timetable& timetable, const Query& query) {
  if (query.source.index() >= timetable.stop_count() || query.target.index() >= timetable.stop_count()) {
    throw QueryError(fmt::format("unknown stop id (source {}, target {}, {} stops)", query.source.value(),
                                 query.target.value(), timetable.stop_count()));
  }
  if (query.max_rounds < 1) throw QueryError("max_rounds must be at least 1");
  if (query.departure.is_infinite()) throw QueryError("departure time must be finite");
  if (query.pruning == Pruning::kEarly && !timetable.transfer_graph().sorted()) {
    throw PreconditionError("early pruning requires a transfer graph with sorted adjacency (run sort_edges)");
  }
}

}  // namespace transit::routing
