#include "transit/validate.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace transit {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kStopOutOfRange: return "stop-out-of-range";
    case ViolationKind::kRouteTooShort: return "route-too-short";
    case ViolationKind::kRouteTripMismatch: return "route-trip-mismatch";
    case ViolationKind::kTripLength: return "trip-length";
    case ViolationKind::kInfiniteTime: return "infinite-time";
    case ViolationKind::kDwellTime: return "dwell-time";
    case ViolationKind::kTravelTime: return "travel-time";
    case ViolationKind::kTripOrdering: return "trip-ordering";
    case ViolationKind::kRoutesByStop: return "routes-by-stop";
    case ViolationKind::kGraphTooSmall: return "graph-too-small";
    case ViolationKind::kGraphSelfLoop: return "graph-self-loop";
    case ViolationKind::kGraphDuration: return "graph-duration";
    case ViolationKind::kGraphUnsorted: return "graph-unsorted";
  }
  return "unknown";
}

namespace {

class Collector {
 public:
  void add(ViolationKind kind, std::string location, std::string detail) {
    out.push_back({kind, std::move(location), std::move(detail)});
  }
  std::vector<Violation> out;
};

void check_graph(const Timetable& tt, Collector& c) {
  const auto& g = tt.transfer_graph();
  if (g.vertex_count() < tt.stop_count()) {
    c.add(ViolationKind::kGraphTooSmall, "transfer graph",
          fmt::format("{} vertices for {} stops", g.vertex_count(), tt.stop_count()));
  }
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    const auto edges = g.out_edges(VertexId(static_cast<VertexId::rep>(u)));
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].target.index() == u) {
        c.add(ViolationKind::kGraphSelfLoop, fmt::format("vertex {}", u), "self-loop edge");
      }
      if (edges[i].duration.seconds() == 0) {
        c.add(ViolationKind::kGraphDuration, fmt::format("edge ({},{})", u, edges[i].target.value()),
              "zero duration");
      }
      if (g.sorted() && i + 1 < edges.size() && edges[i + 1].duration < edges[i].duration) {
        c.add(ViolationKind::kGraphUnsorted, fmt::format("vertex {} edge {}", u, i + 1),
              "sorted flag set but durations decrease");
      }
    }
  }
}

bool stop_valid(const Timetable& tt, StopId s) { return s.index() < tt.stop_count(); }

void check_trip_events(const Trip& trip, std::size_t t, Collector& c) {
  for (std::size_t i = 0; i < trip.events.size(); ++i) {
    const auto& ev = trip.events[i];
    const auto where = fmt::format("trip {} ('{}') position {}", t, trip.id, i);
    if (ev.arrival.is_infinite() || ev.departure.is_infinite()) {
      c.add(ViolationKind::kInfiniteTime, where, "stop event time is not finite");
      continue;
    }
    if (ev.departure < ev.arrival) {
      c.add(ViolationKind::kDwellTime, where,
            fmt::format("arrival {} after departure {}", format_time(ev.arrival), format_time(ev.departure)));
    }
    if (i + 1 < trip.events.size() && trip.events[i + 1].arrival < ev.departure) {
      c.add(ViolationKind::kTravelTime, where,
            fmt::format("next arrival {} before departure {}", format_time(trip.events[i + 1].arrival),
                        format_time(ev.departure)));
    }
  }
}

void check_routes(const Timetable& tt, Collector& c) {
  std::vector<int> owner_count(tt.trip_count(), 0);
  for (std::size_t r = 0; r < tt.route_count(); ++r) {
    const auto& route = tt.routes()[r];
    const auto where = fmt::format("route {} ('{}')", r, route.id);
    if (route.stops.size() < 2) {
      c.add(ViolationKind::kRouteTooShort, where, fmt::format("{} stops", route.stops.size()));
    }
    for (std::size_t i = 0; i < route.stops.size(); ++i) {
      if (!stop_valid(tt, route.stops[i])) {
        c.add(ViolationKind::kStopOutOfRange, fmt::format("{} position {}", where, i),
              fmt::format("stop {} >= {}", route.stops[i].value(), tt.stop_count()));
      }
    }
    const Trip* prev = nullptr;
    for (const auto tid : route.trips) {
      if (tid.index() >= tt.trip_count()) {
        c.add(ViolationKind::kRouteTripMismatch, where, fmt::format("trip {} does not exist", tid.value()));
        prev = nullptr;
        continue;
      }
      ++owner_count[tid.index()];
      const auto& trip = tt.trip(tid);
      if (trip.route.index() != r) {
        c.add(ViolationKind::kRouteTripMismatch, where,
              fmt::format("lists trip {} whose route is {}", tid.value(), trip.route.value()));
      }
      if (trip.events.size() != route.stops.size()) {
        prev = nullptr;
        continue;  // reported per trip below
      }
      if (prev != nullptr) {
        for (std::size_t i = 0; i < trip.events.size(); ++i) {
          if (trip.events[i].departure < prev->events[i].departure ||
              trip.events[i].arrival < prev->events[i].arrival) {
            c.add(ViolationKind::kTripOrdering, where,
                  fmt::format("trip '{}' overtakes or precedes '{}' at position {}", trip.id, prev->id, i));
            break;
          }
        }
      }
      prev = &trip;
    }
  }
  for (std::size_t t = 0; t < tt.trip_count(); ++t) {
    const auto& trip = tt.trips()[t];
    const auto where = fmt::format("trip {} ('{}')", t, trip.id);
    if (trip.route.index() >= tt.route_count()) {
      c.add(ViolationKind::kRouteTripMismatch, where, fmt::format("route {} does not exist", trip.route.value()));
    } else {
      if (trip.events.size() != tt.route(trip.route).stops.size()) {
        c.add(ViolationKind::kTripLength, where,
              fmt::format("{} events for {} route stops", trip.events.size(), tt.route(trip.route).stops.size()));
      }
      if (owner_count[t] != 1) {
        c.add(ViolationKind::kRouteTripMismatch, where,
              fmt::format("listed by {} routes instead of exactly one", owner_count[t]));
      }
    }
    check_trip_events(trip, t, c);
  }
}

void check_routes_by_stop(const Timetable& tt, Collector& c) {
  std::vector<std::vector<RouteStop>> expected(tt.stop_count());
  for (std::size_t r = 0; r < tt.route_count(); ++r) {
    const auto& seq = tt.routes()[r].stops;
    for (std::size_t pos = 0; pos < seq.size(); ++pos) {
      if (!stop_valid(tt, seq[pos])) continue;
      expected[seq[pos].index()].push_back(
          {RouteId(static_cast<RouteId::rep>(r)), static_cast<std::uint32_t>(pos)});
    }
  }
  for (std::size_t s = 0; s < tt.stop_count(); ++s) {
    const auto actual = tt.routes_by_stop(StopId(static_cast<StopId::rep>(s)));
    if (!std::ranges::equal(actual, expected[s])) {
      c.add(ViolationKind::kRoutesByStop, fmt::format("stop {}", s), "inverse index disagrees with routes");
    }
  }
}

}  // namespace

std::vector<Violation> validate(const Timetable& timetable) {
  Collector c;
  check_graph(timetable, c);
  check_routes(timetable, c);
  check_routes_by_stop(timetable, c);
  return std::move(c.out);
}

}  // namespace transit
