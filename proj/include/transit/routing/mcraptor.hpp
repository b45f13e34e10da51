#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "transit/journey.hpp"
#include "transit/routing/query.hpp"
#include "transit/routing/raptor.hpp"
#include "transit/timetable.hpp"

namespace transit::routing {

/// Multicriteria label: arrival time, cumulative transfer (walking) duration and
/// number of trips. `node` indexes the state's label arena for reconstruction.
struct McLabel {
  static constexpr std::uint32_t kNoNode = std::numeric_limits<std::uint32_t>::max();

  Time arrival;
  Duration walking;
  int trips = 0;
  std::uint32_t node = kNoNode;
};

/// Weak Pareto dominance: no worse in arrival, walking and trips.
bool dominates(const McLabel& a, const McLabel& b);

/// Antichain of labels under `dominates`. Inserting a label that is weakly
/// dominated (including an exact duplicate) is a no-op; otherwise every label it
/// dominates is removed. Insertion order of survivors is preserved.
class Bag {
 public:
  /// True when the label was added.
  bool insert(const McLabel& label);
  [[nodiscard]] bool dominates(const McLabel& label) const;
  /// First label that weakly dominates `label`, if any.
  [[nodiscard]] const McLabel* dominator(const McLabel& label) const;

  [[nodiscard]] std::span<const McLabel> labels() const { return labels_; }
  [[nodiscard]] bool empty() const { return labels_.empty(); }
  [[nodiscard]] std::size_t size() const { return labels_.size(); }

 private:
  std::vector<McLabel> labels_;
};

/// Candidate cut off by Early Pruning together with the target label that dominated it.
struct PrunedCandidate {
  StopId from;
  VertexId to;
  McLabel candidate;
  McLabel dominator;
};

class McRaptorState {
 public:
  /// Arena entry: a label plus how it was obtained.
  struct Node {
    McLabel label;
    StopId stop;
    Parent parent;
    std::uint32_t previous = McLabel::kNoNode;  // boarding label (trip) or route label (transfer)
  };

  McRaptorState(std::size_t stop_count, int max_rounds, StopId source, Time departure);

  [[nodiscard]] int max_rounds() const { return max_rounds_; }
  [[nodiscard]] StopId source() const { return source_; }
  [[nodiscard]] Time departure() const { return departure_; }
  [[nodiscard]] std::size_t stop_count() const { return stop_count_; }
  [[nodiscard]] int rounds_run() const { return rounds_run_; }

  /// Labels created in `round` at `stop` (by trip or by transfer).
  [[nodiscard]] const Bag& bag(int round, StopId stop) const { return bags_[slot(round, stop)]; }
  /// Labels created in `round` at `stop` by trip only; transfers start from these.
  [[nodiscard]] const Bag& route_bag(int round, StopId stop) const { return route_bags_[slot(round, stop)]; }
  /// Pareto set of everything reached at `stop` over all rounds.
  [[nodiscard]] const Bag& best(StopId stop) const { return best_[stop.index()]; }
  [[nodiscard]] const Bag& best_route(StopId stop) const { return best_route_[stop.index()]; }
  [[nodiscard]] const Node& node(std::uint32_t index) const { return nodes_[index]; }

  void begin_round(int round);
  void end_round(int round) { rounds_run_ = round; }

  /// Adds an arrival by trip (unconditionally) to the route bag and best-route bag,
  /// and to the round bag and best bag when not dominated there. Returns the node index.
  std::uint32_t add_route_label(int round, StopId stop, Time arrival, Duration walking, const Parent& parent,
                                std::uint32_t previous);
  /// Adds an arrival by transfer to the round bag and best bag.
  std::uint32_t add_transfer_label(int round, StopId stop, Time arrival, Duration walking, const Parent& parent,
                                   std::uint32_t previous);

  [[nodiscard]] std::vector<StopId> route_marked() const;
  [[nodiscard]] const std::vector<StopId>& label_marked() const { return label_marked_list_; }
  [[nodiscard]] const std::vector<StopId>& scan_marked() const { return scan_marked_; }

  Counters counters;
  bool log_pruned = false;
  std::vector<PrunedCandidate> pruned_log;

 private:
  [[nodiscard]] std::size_t slot(int round, StopId stop) const {
    return static_cast<std::size_t>(round) * stop_count_ + stop.index();
  }
  std::uint32_t new_node(int round, StopId stop, Time arrival, Duration walking, const Parent& parent,
                         std::uint32_t previous);
  void mark_label(StopId stop);

  std::size_t stop_count_;
  int max_rounds_;
  StopId source_;
  Time departure_;
  std::vector<Node> nodes_;
  std::vector<Bag> bags_;
  std::vector<Bag> route_bags_;
  std::vector<Bag> best_;
  std::vector<Bag> best_route_;
  std::vector<bool> route_marked_;
  std::vector<StopId> route_marked_list_;
  std::vector<bool> label_marked_;
  std::vector<StopId> label_marked_list_;
  std::vector<StopId> scan_marked_;
  int rounds_run_ = 0;
};

struct McEntry {
  int trips = 0;
  Time arrival;
  Duration walking;
  Journey journey;

  friend bool operator==(const McEntry&, const McEntry&) = default;
};

struct McResult {
  std::vector<McEntry> entries;  // sorted by (trips, arrival, walking)
  Counters counters;
  bool truncated = false;
};

/// Route-scanning phase of McRAPTOR for `round` (route bags ordered by trip and walking).
void mc_scan_routes(McRaptorState& state, int round, const Timetable& timetable, StopId target);

/// Transfer phase. For each stop improved by the route scan and each of its
/// round labels, edges are visited in stored order; with Early pruning, the first
/// candidate dominated by the target's best bag ends that label's loop and it plus
/// the remaining edges count as pruned.
void mc_relax_transfers(McRaptorState& state, int round, const Timetable& timetable, StopId target,
                        Pruning pruning);

Journey mc_reconstruct(const Timetable& timetable, const McRaptorState& state, std::uint32_t node);

McRaptorState mc_run(const Timetable& timetable, const Query& query, bool log_pruned = false);
McResult mc_extract(const Timetable& timetable, const McRaptorState& state, StopId target);

/// Full Pareto set over (arrival, trips, walking) within query.max_rounds trips.
McResult mc_query(const Timetable& timetable, const Query& query);

}  // namespace transit::routing
