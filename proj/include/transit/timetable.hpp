#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "transit/ids.hpp"
#include "transit/time.hpp"
#include "transit/transfer_graph.hpp"

namespace transit {

struct Stop {
  std::string id;    // external identifier (GTFS stop_id or fixture name)
  std::string name;
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const Stop&, const Stop&) = default;
};

struct StopEvent {
  Time arrival;
  Time departure;

  friend bool operator==(const StopEvent&, const StopEvent&) = default;
};

/// All trips visiting the same stop sequence, ordered so that no trip overtakes
/// its successor.
struct Route {
  std::string id;
  std::vector<StopId> stops;
  std::vector<TripId> trips;

  friend bool operator==(const Route&, const Route&) = default;
};

struct Trip {
  std::string id;
  RouteId route;
  std::vector<StopEvent> events;  // one per position of the route's stop sequence

  friend bool operator==(const Trip&, const Trip&) = default;
};

/// A route serving a stop, with the position of that stop in the route.
struct RouteStop {
  RouteId route;
  std::uint32_t position = 0;

  friend bool operator==(const RouteStop&, const RouteStop&) = default;
};

/// Immutable bundle of stops, routes, trips and the transfer graph.
///
/// The constructor derives `routes_by_stop` but does not enforce the timetable
/// invariants; run `validate()` to check them. Stop indices out of range are
/// skipped when building the inverse index so that validation can report them.
class Timetable {
 public:
  Timetable() = default;
  Timetable(std::vector<Stop> stops, std::vector<Route> routes, std::vector<Trip> trips,
            TransferGraph transfer_graph);

  [[nodiscard]] std::size_t stop_count() const { return stops_.size(); }
  [[nodiscard]] std::size_t route_count() const { return routes_.size(); }
  [[nodiscard]] std::size_t trip_count() const { return trips_.size(); }
  [[nodiscard]] std::size_t stop_event_count() const;

  [[nodiscard]] const std::vector<Stop>& stops() const { return stops_; }
  [[nodiscard]] const std::vector<Route>& routes() const { return routes_; }
  [[nodiscard]] const std::vector<Trip>& trips() const { return trips_; }
  [[nodiscard]] const TransferGraph& transfer_graph() const { return transfer_graph_; }

  [[nodiscard]] const Stop& stop(StopId id) const { return stops_[id.index()]; }
  [[nodiscard]] const Route& route(RouteId id) const { return routes_[id.index()]; }
  [[nodiscard]] const Trip& trip(TripId id) const { return trips_[id.index()]; }

  [[nodiscard]] std::span<const RouteStop> routes_by_stop(StopId stop) const {
    return routes_by_stop_[stop.index()];
  }

  /// Same stops, routes and trips with a different transfer graph.
  [[nodiscard]] Timetable with_transfer_graph(TransferGraph graph) const;

  friend bool operator==(const Timetable&, const Timetable&) = default;

 private:
  std::vector<Stop> stops_;
  std::vector<Route> routes_;
  std::vector<Trip> trips_;
  TransferGraph transfer_graph_;
  std::vector<std::vector<RouteStop>> routes_by_stop_;
};

}  // namespace transit
