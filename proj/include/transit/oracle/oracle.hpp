#pragma once

#include <cstdint>
#include <vector>

#include "transit/timetable.hpp"

namespace transit::oracle {

/// Explicit time-expanded graph. Nodes carry a fixed time; every edge goes
/// forward in time and its weight is the time difference.
///
/// Node kinds: a departure and an arrival node per stop event of every trip,
/// and a chronological chain of "at stop" nodes per stop (times of departures,
/// alightings and walk-in arrivals). Walking edges leave only from trip arrival
/// nodes and the query origin, so a passenger takes at most one transfer edge
/// between consecutive trips.
class TimeExpandedGraph {
 public:
  enum class Kind : std::uint8_t { kDeparture, kArrival, kAtStop };

  struct Node {
    Kind kind;
    StopId stop;
    Time time;
  };
  struct Edge {
    std::uint32_t to;
    Duration weight;
  };

  TimeExpandedGraph(const Timetable& timetable, StopId source, Time departure);

  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] const Node& node(std::uint32_t i) const { return nodes_[i]; }
  [[nodiscard]] const std::vector<Edge>& out(std::uint32_t i) const { return out_[i]; }
  [[nodiscard]] std::uint32_t origin() const { return origin_; }

 private:
  std::vector<Node> nodes_;
  std::vector<std::vector<Edge>> out_;
  std::uint32_t origin_ = 0;
};

/// Minimum arrival at `target` over all feasible journeys (no trip limit), by
/// Dijkstra on the time-expanded graph. INFINITY when unreachable.
Time earliest_arrival_oracle(const Timetable& timetable, StopId source, StopId target, Time departure);

struct ParetoPoint {
  Time arrival;
  Duration walking;
  int trips = 0;

  friend auto operator<=>(const ParetoPoint&, const ParetoPoint&) = default;
};

inline constexpr std::size_t kOracleMaxStops = 50;
inline constexpr int kOracleMaxTrips = 6;

/// Exact Pareto set over (arrival, walking, trips) of journeys with at most
/// `max_trips` trips, by exhaustive level-by-level enumeration (every trip,
/// every alighting position) with exact-dominance memoization only.
/// Sorted by (trips, arrival, walking). Throws OracleScaleError beyond
/// kOracleMaxStops stops or kOracleMaxTrips trips.
std::vector<ParetoPoint> pareto_oracle(const Timetable& timetable, StopId source, StopId target, Time departure,
                                       int max_trips);

}  // namespace transit::oracle
