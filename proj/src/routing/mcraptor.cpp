#include "transit/routing/mcraptor.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "transit/error.hpp"

namespace transit::routing {

bool dominates(const McLabel& a, const McLabel& b) {
  return a.arrival <= b.arrival && a.walking <= b.walking && a.trips <= b.trips;
}

bool Bag::insert(const McLabel& label) {
  if (dominates(label)) return false;
  std::erase_if(labels_, [&](const McLabel& other) { return routing::dominates(label, other); });
  labels_.push_back(label);
  return true;
}

bool Bag::dominates(const McLabel& label) const { return dominator(label) != nullptr; }

const McLabel* Bag::dominator(const McLabel& label) const {
  for (const auto& l : labels_) {
    if (routing::dominates(l, label)) return &l;
  }
  return nullptr;
}

McRaptorState::McRaptorState(std::size_t stop_count, int max_rounds, StopId source, Time departure)
    : stop_count_(stop_count),
      max_rounds_(max_rounds),
      source_(source),
      departure_(departure),
      bags_(stop_count * static_cast<std::size_t>(max_rounds + 1)),
      route_bags_(bags_.size()),
      best_(stop_count),
      best_route_(stop_count),
      route_marked_(stop_count, false),
      label_marked_(stop_count, false) {
  add_route_label(0, source, departure, Duration(0), Parent{.kind = Parent::Kind::kSource}, McLabel::kNoNode);
}

std::uint32_t McRaptorState::new_node(int round, StopId stop, Time arrival, Duration walking, const Parent& parent,
                                      std::uint32_t previous) {
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back({McLabel{arrival, walking, round, index}, stop, parent, previous});
  return index;
}

void McRaptorState::mark_label(StopId stop) {
  if (!label_marked_[stop.index()]) {
    label_marked_[stop.index()] = true;
    label_marked_list_.push_back(stop);
  }
}

std::uint32_t McRaptorState::add_route_label(int round, StopId stop, Time arrival, Duration walking,
                                             const Parent& parent, std::uint32_t previous) {
  const auto index = new_node(round, stop, arrival, walking, parent, previous);
  const McLabel label = nodes_[index].label;
  route_bags_[slot(round, stop)].insert(label);
  best_route_[stop.index()].insert(label);
  if (!route_marked_[stop.index()]) {
    route_marked_[stop.index()] = true;
    route_marked_list_.push_back(stop);
  }
  if (!best_[stop.index()].dominates(label)) {
    bags_[slot(round, stop)].insert(label);
    best_[stop.index()].insert(label);
    mark_label(stop);
  }
  return index;
}

std::uint32_t McRaptorState::add_transfer_label(int round, StopId stop, Time arrival, Duration walking,
                                                const Parent& parent, std::uint32_t previous) {
  const auto index = new_node(round, stop, arrival, walking, parent, previous);
  const McLabel label = nodes_[index].label;
  bags_[slot(round, stop)].insert(label);
  best_[stop.index()].insert(label);
  mark_label(stop);
  return index;
}

void McRaptorState::begin_round(int /*round*/) {
  scan_marked_ = label_marked_list_;
  std::ranges::sort(scan_marked_);
  for (const auto s : label_marked_list_) label_marked_[s.index()] = false;
  label_marked_list_.clear();
  for (const auto s : route_marked_list_) route_marked_[s.index()] = false;
  route_marked_list_.clear();
}

std::vector<StopId> McRaptorState::route_marked() const {
  auto out = route_marked_list_;
  std::ranges::sort(out);
  return out;
}

namespace {

/// Label riding a trip while a route is scanned. An earlier trip arrives no later
/// at every downstream stop (no overtaking), so (trip index, walking) order the bag.
struct RouteLabel {
  std::size_t trip;
  Duration walking;
  std::uint32_t previous;
  std::uint32_t board;
};

void insert_route_label(std::vector<RouteLabel>& bag, const RouteLabel& label) {
  const auto covers = [](const RouteLabel& a, const RouteLabel& b) { return a.trip <= b.trip && a.walking <= b.walking; };
  if (std::ranges::any_of(bag, [&](const RouteLabel& l) { return covers(l, label); })) return;
  std::erase_if(bag, [&](const RouteLabel& l) { return covers(label, l); });
  bag.push_back(label);
}

}  // namespace

void mc_scan_routes(McRaptorState& state, int round, const Timetable& tt, StopId target) {
  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> first_marked(tt.route_count(), kNone);
  std::vector<RouteId> queue;
  for (const auto stop : state.scan_marked()) {
    for (const auto& rs : tt.routes_by_stop(stop)) {
      auto& pos = first_marked[rs.route.index()];
      if (pos == kNone) queue.push_back(rs.route);
      pos = std::min(pos, rs.position);
    }
  }
  std::ranges::sort(queue);

  std::vector<RouteLabel> riding;
  for (const auto rid : queue) {
    ++state.counters.routes_scanned;
    const auto& route = tt.route(rid);
    const auto& trips = route.trips;
    riding.clear();
    for (auto i = first_marked[rid.index()]; i < route.stops.size(); ++i) {
      const StopId p = route.stops[i];
      for (const auto& rl : riding) {
        const Time arr = tt.trip(trips[rl.trip]).events[i].arrival;
        const McLabel candidate{arr, rl.walking, round};
        if (state.best(target).dominates(candidate) || state.best_route(p).dominates(candidate)) continue;
        state.add_route_label(round, p, arr, rl.walking,
                              Parent{.kind = Parent::Kind::kTrip,
                                     .trip = trips[rl.trip],
                                     .board_position = rl.board,
                                     .alight_position = i},
                              rl.previous);
      }
      for (const auto& label : state.bag(round - 1, p).labels()) {
        const auto it = std::partition_point(trips.begin(), trips.end(), [&](TripId t) {
          return tt.trip(t).events[i].departure < label.arrival;
        });
        if (it == trips.end()) continue;
        insert_route_label(riding, {static_cast<std::size_t>(it - trips.begin()), label.walking, label.node, i});
      }
    }
  }
}

void mc_relax_transfers(McRaptorState& state, int round, const Timetable& tt, StopId target, Pruning pruning) {
  const auto& graph = tt.transfer_graph();
  for (const auto s : state.route_marked()) {
    const auto edges = graph.out_edges(to_vertex(s));
    // copy: transfer insertions never touch this route bag, but keep iteration independent of it
    const std::vector<McLabel> starts(state.route_bag(round, s).labels().begin(),
                                      state.route_bag(round, s).labels().end());
    for (const auto& from : starts) {
      for (std::size_t i = 0; i < edges.size(); ++i) {
        const McLabel candidate{from.arrival + edges[i].duration, from.walking + edges[i].duration, round};
        if (pruning == Pruning::kEarly) {
          if (const auto* dom = state.best(target).dominator(candidate)) {
            state.counters.edges_pruned += edges.size() - i;
            if (state.log_pruned) {
              for (auto j = i; j < edges.size(); ++j) {
                const McLabel later{from.arrival + edges[j].duration, from.walking + edges[j].duration, round};
                state.pruned_log.push_back({s, edges[j].target, later, *dom});
              }
            }
            break;
          }
        }
        ++state.counters.edges_examined;
        const auto v = edges[i].target;
        if (v.index() >= state.stop_count()) {
          ++state.counters.edges_skipped;
          continue;
        }
        const StopId stop(v.value());
        if (state.best(target).dominates(candidate) || state.best(stop).dominates(candidate)) {
          ++state.counters.edges_skipped;
          continue;
        }
        state.add_transfer_label(round, stop, candidate.arrival, candidate.walking,
                                 Parent{.kind = Parent::Kind::kTransfer, .from = s, .duration = edges[i].duration},
                                 from.node);
        ++state.counters.edges_relaxed;
      }
    }
  }
}

Journey mc_reconstruct(const Timetable& tt, const McRaptorState& state, std::uint32_t node) {
  const StopId target = state.node(node).stop;
  std::vector<Leg> legs;
  auto current = node;
  while (true) {
    const auto& n = state.node(current);
    if (n.parent.kind == Parent::Kind::kSource) break;
    if (n.parent.kind == Parent::Kind::kTrip) {
      legs.emplace_back(TripLeg{n.parent.trip, n.parent.board_position, n.parent.alight_position});
    } else if (n.parent.kind == Parent::Kind::kTransfer) {
      legs.emplace_back(TransferLeg{to_vertex(n.parent.from), to_vertex(n.stop), n.parent.duration});
    } else {
      throw Error(fmt::format("label node {} has no parent", current));
    }
    current = n.previous;
  }
  std::ranges::reverse(legs);
  return make_journey(tt, state.source(), target, state.departure(), std::move(legs));
}

McRaptorState mc_run(const Timetable& tt, const Query& q, bool log_pruned) {
  check_query(tt, q);
  McRaptorState state(tt.stop_count(), q.max_rounds, q.source, q.departure);
  state.log_pruned = log_pruned;
  mc_relax_transfers(state, 0, tt, q.target, q.pruning);
  for (int k = 1; k <= q.max_rounds && !state.label_marked().empty(); ++k) {
    state.begin_round(k);
    mc_scan_routes(state, k, tt, q.target);
    mc_relax_transfers(state, k, tt, q.target, q.pruning);
    state.end_round(k);
  }
  state.counters.rounds = static_cast<std::uint64_t>(state.rounds_run());
  return state;
}

McResult mc_extract(const Timetable& tt, const McRaptorState& state, StopId target) {
  Bag front;
  for (int k = 0; k <= state.rounds_run(); ++k) {
    for (const auto& l : state.bag(k, target).labels()) front.insert(l);
  }
  std::vector<McLabel> labels(front.labels().begin(), front.labels().end());
  std::ranges::sort(labels, [](const McLabel& a, const McLabel& b) {
    return std::tie(a.trips, a.arrival, a.walking) < std::tie(b.trips, b.arrival, b.walking);
  });
  McResult result;
  result.counters = state.counters;
  result.truncated = state.rounds_run() == state.max_rounds() && !state.label_marked().empty();
  for (const auto& l : labels) {
    result.entries.push_back({l.trips, l.arrival, l.walking, mc_reconstruct(tt, state, l.node)});
  }
  return result;
}

McResult mc_query(const Timetable& tt, const Query& q) { return mc_extract(tt, mc_run(tt, q), q.target); }

}  // namespace transit::routing
