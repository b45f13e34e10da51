#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>

#include "transit/error.hpp"
#include "transit/oracle/oracle.hpp"

namespace transit::oracle {

TimeExpandedGraph::TimeExpandedGraph(const Timetable& tt, StopId source, Time departure) {
  const auto& graph = tt.transfer_graph();
  std::vector<std::map<Time, std::uint32_t>> at_stop(tt.stop_count());
  const auto at_stop_node = [&](StopId s, Time t) {
    auto [it, inserted] = at_stop[s.index()].try_emplace(t, 0);
    if (inserted) {
      it->second = static_cast<std::uint32_t>(nodes_.size());
      nodes_.push_back({Kind::kAtStop, s, t});
      out_.emplace_back();
    }
    return it->second;
  };
  const auto add_node = [&](Kind kind, StopId s, Time t) {
    nodes_.push_back({kind, s, t});
    out_.emplace_back();
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  };
  const auto add_edge = [&](std::uint32_t from, std::uint32_t to) {
    out_[from].push_back({to, nodes_[to].time - nodes_[from].time});
  };
  const auto walk_from = [&](std::uint32_t from, StopId s) {
    for (const auto& e : graph.out_edges(to_vertex(s))) {
      if (e.target.index() >= tt.stop_count()) continue;
      const Time t = nodes_[from].time + e.duration;
      if (t.is_infinite()) continue;
      add_edge(from, at_stop_node(StopId(e.target.value()), t));
    }
  };

  origin_ = at_stop_node(source, departure);
  walk_from(origin_, source);

  for (const auto& trip : tt.trips()) {
    const auto& stops = tt.route(trip.route).stops;
    std::uint32_t prev_dep = 0;
    for (std::size_t i = 0; i < trip.events.size(); ++i) {
      const StopId s = stops[i];
      const auto dep = add_node(Kind::kDeparture, s, trip.events[i].departure);
      if (i > 0) {
        const auto arr = add_node(Kind::kArrival, s, trip.events[i].arrival);
        add_edge(prev_dep, arr);
        add_edge(arr, dep);  // stay seated
        add_edge(arr, at_stop_node(s, trip.events[i].arrival));
        walk_from(arr, s);
      }
      add_edge(at_stop_node(s, trip.events[i].departure), dep);
      prev_dep = dep;
    }
  }
  // waiting chains
  for (const auto& chain : at_stop) {
    std::uint32_t prev = std::numeric_limits<std::uint32_t>::max();
    for (const auto& [time, node] : chain) {
      if (prev != std::numeric_limits<std::uint32_t>::max()) add_edge(prev, node);
      prev = node;
    }
  }
}

Time earliest_arrival_oracle(const Timetable& tt, StopId source, StopId target, Time departure) {
  if (source.index() >= tt.stop_count() || target.index() >= tt.stop_count()) {
    throw QueryError("oracle: unknown stop");
  }
  const TimeExpandedGraph g(tt, source, departure);
  constexpr auto kInf = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> dist(g.node_count(), kInf);
  using Item = std::pair<std::uint64_t, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[g.origin()] = 0;
  heap.emplace(0, g.origin());
  Time best;
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (g.node(u).kind == TimeExpandedGraph::Kind::kAtStop && g.node(u).stop == target) {
      // first settled node at the target is the earliest one
      best = g.node(u).time;
      break;
    }
    for (const auto& e : g.out(u)) {
      const auto nd = d + e.weight.seconds();
      if (nd < dist[e.to]) {
        dist[e.to] = nd;
        heap.emplace(nd, e.to);
      }
    }
  }
  return best;
}

}  // namespace transit::oracle
