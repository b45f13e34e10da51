#pragma once

#include <cstdint>
#include <vector>

#include "transit/journey.hpp"
#include "transit/routing/query.hpp"
#include "transit/timetable.hpp"

namespace transit::routing {

/// How a label was obtained; the parent-pointer record for reconstruction.
struct Parent {
  enum class Kind : std::uint8_t { kNone, kSource, kTrip, kTransfer };

  Kind kind = Kind::kNone;
  TripId trip;                     // kTrip
  std::uint32_t board_position = 0;  // kTrip
  std::uint32_t alight_position = 0; // kTrip
  StopId from;                     // kTransfer: stop whose route arrival was extended
  Duration duration;               // kTransfer

  friend bool operator==(const Parent&, const Parent&) = default;
};

/// Transfer edge cut off by Early Pruning, recorded when logging is enabled.
struct PrunedEdge {
  StopId from;
  VertexId to;
  Time candidate;
  Time bound;  // tau*(target) at the moment of pruning
};

/// Per-query labels of the round-based search.
///
/// Round k holds two arrays: the arrival by trip found while scanning routes in
/// round k, and the overall label (trip or a single transfer after it). Labels
/// of round k start as a copy of round k-1, so they are non-increasing in k.
/// `best` is tau*: the minimum over rounds at all times.
class RaptorState {
 public:
  RaptorState(std::size_t stop_count, int max_rounds, StopId source, Time departure);

  [[nodiscard]] int max_rounds() const { return max_rounds_; }
  [[nodiscard]] StopId source() const { return source_; }
  [[nodiscard]] Time departure() const { return departure_; }
  [[nodiscard]] std::size_t stop_count() const { return stop_count_; }

  [[nodiscard]] Time arrival(int round, StopId stop) const { return label_[slot(round, stop)]; }
  [[nodiscard]] Time route_arrival(int round, StopId stop) const { return by_route_[slot(round, stop)]; }
  [[nodiscard]] Time best(StopId stop) const { return best_[stop.index()]; }
  /// Best arrival by trip over all rounds (local pruning bound of the route scan).
  [[nodiscard]] Time best_route(StopId stop) const { return best_route_[stop.index()]; }
  /// Number of completed rounds after round 0.
  [[nodiscard]] int rounds_run() const { return rounds_run_; }
  [[nodiscard]] const Parent& parent(int round, StopId stop) const { return parent_[slot(round, stop)]; }
  [[nodiscard]] const Parent& route_parent(int round, StopId stop) const { return route_parent_[slot(round, stop)]; }

  /// Copies labels of round-1 into `round` and hands the stops marked in the
  /// previous round to the route scan.
  void begin_round(int round);
  void end_round(int round) { rounds_run_ = round; }

  /// Records an arrival by trip at `stop` in `round` unconditionally, marking the
  /// stop for this round's transfer phase and, if the overall label improves,
  /// for the next round's route scan.
  void set_route_arrival(int round, StopId stop, Time arrival, const Parent& parent);

  /// Records an arrival by transfer and marks the stop for the next route scan.
  void set_transfer_arrival(int round, StopId stop, Time arrival, const Parent& parent);

  /// Stops improved by route scanning in the current round, ascending.
  [[nodiscard]] std::vector<StopId> route_marked() const;
  /// Stops whose overall label improved in the current round (input of the next route scan).
  [[nodiscard]] const std::vector<StopId>& label_marked() const { return label_marked_list_; }
  /// Stops handed to the current round's route scan by begin_round.
  [[nodiscard]] const std::vector<StopId>& scan_marked() const { return scan_marked_; }

  Counters counters;
  bool log_pruned = false;
  std::vector<PrunedEdge> pruned_log;

 private:
  [[nodiscard]] std::size_t slot(int round, StopId stop) const {
    return static_cast<std::size_t>(round) * stop_count_ + stop.index();
  }
  void mark_label(StopId stop);

  std::size_t stop_count_;
  int max_rounds_;
  StopId source_;
  Time departure_;
  std::vector<Time> label_;
  std::vector<Time> by_route_;
  std::vector<Parent> parent_;
  std::vector<Parent> route_parent_;
  std::vector<Time> best_;
  std::vector<Time> best_route_;
  std::vector<bool> route_marked_;
  std::vector<StopId> route_marked_list_;
  std::vector<bool> label_marked_;
  std::vector<StopId> label_marked_list_;
  std::vector<StopId> scan_marked_;
  int rounds_run_ = 0;
};

struct ParetoEntry {
  int num_trips = 0;
  Time arrival;
  Journey journey;

  friend bool operator==(const ParetoEntry&, const ParetoEntry&) = default;
};

struct ParetoResult {
  std::vector<ParetoEntry> entries;  // strictly increasing trips, strictly decreasing arrival
  Counters counters;
  bool truncated = false;  // marked stops remained after max_rounds
};

/// Route-scanning phase of `round`: scans every route through a stop marked in the
/// previous round, with local pruning and target pruning.
void scan_routes(RaptorState& state, int round, const Timetable& timetable, StopId target);

/// Transfer phase of `round`. For each stop improved by the route scan (ascending
/// id) the outgoing edges are visited in stored order; a candidate updates the
/// destination only if it beats both the destination's and the target's best.
/// With Early pruning, the first candidate that does not beat tau*(target) ends
/// that stop's loop, and it plus every remaining edge is counted as pruned.
void relax_transfers(RaptorState& state, int round, const Timetable& timetable, StopId target, Pruning pruning);

/// Walks parent records back from `target` at `round`. Throws NoJourney when the
/// label is infinite.
Journey reconstruct(const Timetable& timetable, const RaptorState& state, int round, StopId target);

/// Earliest-arrival / fewest-trips Pareto front from source to target.
ParetoResult query(const Timetable& timetable, const Query& query);

/// Full state of a run, for tests and diagnostics.
RaptorState run(const Timetable& timetable, const Query& query, bool log_pruned = false);

/// Pareto front read off a finished state.
ParetoResult extract_front(const Timetable& timetable, const RaptorState& state, StopId target);

}  // namespace transit::routing
