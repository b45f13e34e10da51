#include "transit/routing/raptor.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "transit/error.hpp"

namespace transit::routing {

RaptorState::RaptorState(std::size_t stop_count, int max_rounds, StopId source, Time departure)
    : stop_count_(stop_count),
      max_rounds_(max_rounds),
      source_(source),
      departure_(departure),
      label_(stop_count * static_cast<std::size_t>(max_rounds + 1)),
      by_route_(label_.size()),
      parent_(label_.size()),
      route_parent_(label_.size()),
      best_(stop_count),
      best_route_(stop_count),
      route_marked_(stop_count, false),
      label_marked_(stop_count, false) {
  const Parent origin{.kind = Parent::Kind::kSource};
  set_route_arrival(0, source, departure, origin);
}

void RaptorState::mark_label(StopId stop) {
  if (!label_marked_[stop.index()]) {
    label_marked_[stop.index()] = true;
    label_marked_list_.push_back(stop);
  }
}

void RaptorState::begin_round(int round) {
  scan_marked_ = label_marked_list_;
  std::ranges::sort(scan_marked_);
  for (const auto s : label_marked_list_) label_marked_[s.index()] = false;
  label_marked_list_.clear();
  for (const auto s : route_marked_list_) route_marked_[s.index()] = false;
  route_marked_list_.clear();
  const auto prev = slot(round - 1, StopId(0));
  std::copy_n(label_.begin() + static_cast<std::ptrdiff_t>(prev), stop_count_,
              label_.begin() + static_cast<std::ptrdiff_t>(prev + stop_count_));
}

void RaptorState::set_route_arrival(int round, StopId stop, Time arrival, const Parent& parent) {
  const auto i = slot(round, stop);
  by_route_[i] = arrival;
  route_parent_[i] = parent;
  best_route_[stop.index()] = std::min(best_route_[stop.index()], arrival);
  if (!route_marked_[stop.index()]) {
    route_marked_[stop.index()] = true;
    route_marked_list_.push_back(stop);
  }
  if (arrival < label_[i]) {
    label_[i] = arrival;
    parent_[i] = parent;
    best_[stop.index()] = std::min(best_[stop.index()], arrival);
    mark_label(stop);
  }
}

void RaptorState::set_transfer_arrival(int round, StopId stop, Time arrival, const Parent& parent) {
  const auto i = slot(round, stop);
  label_[i] = arrival;
  parent_[i] = parent;
  best_[stop.index()] = std::min(best_[stop.index()], arrival);
  mark_label(stop);
}

std::vector<StopId> RaptorState::route_marked() const {
  auto out = route_marked_list_;
  std::ranges::sort(out);
  return out;
}

void scan_routes(RaptorState& state, int round, const Timetable& tt, StopId target) {
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

  for (const auto rid : queue) {
    ++state.counters.routes_scanned;
    const auto& route = tt.route(rid);
    const auto& trips = route.trips;
    std::size_t current = trips.size();  // none
    std::uint32_t board = 0;
    for (auto i = first_marked[rid.index()]; i < route.stops.size(); ++i) {
      const StopId p = route.stops[i];
      if (current < trips.size()) {
        const Time arr = tt.trip(trips[current]).events[i].arrival;
        if (arr < std::min(state.best_route(p), state.best(target))) {
          state.set_route_arrival(round, p,  arr,
                                  Parent{.kind = Parent::Kind::kTrip,
                                         .trip = trips[current],
                                         .board_position = board,
                                         .alight_position = i});
        }
      }
      const Time ready = state.arrival(round - 1, p);
      if (ready.is_infinite()) continue;
      if (current < trips.size() && tt.trip(trips[current]).events[i].departure < ready) continue;
      const auto limit = std::min(current + 1, trips.size());
      const auto it = std::partition_point(trips.begin(), trips.begin() + static_cast<std::ptrdiff_t>(limit),
                                           [&](TripId t) { return tt.trip(t).events[i].departure < ready; });
      const auto earliest = static_cast<std::size_t>(it - trips.begin());
      if (earliest < limit && earliest != current) {
        current = earliest;
        board = i;
      }
    }
  }
}

void relax_transfers(RaptorState& state, int round, const Timetable& tt, StopId target, Pruning pruning) {
  const auto& graph = tt.transfer_graph();
  for (const auto s : state.route_marked()) {
    const Time base = state.route_arrival(round, s);
    const auto edges = graph.out_edges(to_vertex(s));
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const Time candidate = base + edges[i].duration;
      if (pruning == Pruning::kEarly && candidate >= state.best(target)) {
        state.counters.edges_pruned += edges.size() - i;
        if (state.log_pruned) {
          for (auto j = i; j < edges.size(); ++j) {
            state.pruned_log.push_back({s, edges[j].target, base + edges[j].duration, state.best(target)});
          }
        }
        break;
      }
      ++state.counters.edges_examined;
      const auto v = edges[i].target;
      if (v.index() >= state.stop_count()) {
        ++state.counters.edges_skipped;
        continue;
      }
      const StopId stop(v.value());
      if (candidate < std::min(state.best(stop), state.best(target))) {
        state.set_transfer_arrival(round, stop, candidate,
                                   Parent{.kind = Parent::Kind::kTransfer, .from = s, .duration = edges[i].duration});
        ++state.counters.edges_relaxed;
      } else {
        ++state.counters.edges_skipped;
      }
    }
  }
}

Journey reconstruct(const Timetable& tt, const RaptorState& state, int round, StopId target) {
  if (round < 0 || round > state.max_rounds() || state.arrival(round, target).is_infinite()) {
    throw NoJourney(fmt::format("no journey to stop {} within {} trip(s)", target.value(), round));
  }
  std::vector<Leg> legs;
  StopId at = target;
  int r = round;
  bool from_route = false;
  while (true) {
    const Parent* p = nullptr;
    if (from_route) {
      p = &state.route_parent(r, at);
    } else {
      while (r > 0 && state.parent(r, at).kind == Parent::Kind::kNone) --r;
      p = &state.parent(r, at);
    }
    if (p->kind == Parent::Kind::kSource) break;
    if (p->kind == Parent::Kind::kTrip) {
      legs.emplace_back(TripLeg{p->trip, p->board_position, p->alight_position});
      at = tt.route(tt.trip(p->trip).route).stops[p->board_position];
      --r;
      from_route = false;
    } else if (p->kind == Parent::Kind::kTransfer) {
      legs.emplace_back(TransferLeg{to_vertex(p->from), to_vertex(at), p->duration});
      at = p->from;
      from_route = true;
    } else {
      throw Error(fmt::format("broken parent chain at stop {} round {}", at.value(), r));
    }
  }
  std::ranges::reverse(legs);
  return make_journey(tt, state.source(), target, state.departure(), std::move(legs));
}

RaptorState run(const Timetable& tt, const Query& q, bool log_pruned) {
  check_query(tt, q);
  RaptorState state(tt.stop_count(), q.max_rounds, q.source, q.departure);
  state.log_pruned = log_pruned;
  relax_transfers(state, 0, tt, q.target, q.pruning);
  for (int k = 1; k <= q.max_rounds && !state.label_marked().empty(); ++k) {
    state.begin_round(k);
    scan_routes(state, k, tt, q.target);
    relax_transfers(state, k, tt, q.target, q.pruning);
    state.end_round(k);
  }
  state.counters.rounds = static_cast<std::uint64_t>(state.rounds_run());
  return state;
}

ParetoResult extract_front(const Timetable& tt, const RaptorState& state, StopId target) {
  ParetoResult result;
  result.counters = state.counters;
  result.truncated = state.rounds_run() == state.max_rounds() && !state.label_marked().empty();
  Time best;
  for (int k = 0; k <= state.rounds_run(); ++k) {
    const Time a = state.arrival(k, target);
    if (a < best) {
      result.entries.push_back({k, a, reconstruct(tt, state, k, target)});
      best = a;
    }
  }
  return result;
}

ParetoResult query(const Timetable& tt, const Query& q) { return extract_front(tt, run(tt, q), q.target); }

}  // namespace transit::routing
