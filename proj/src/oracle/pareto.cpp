#include <algorithm>
#include <string>
#include <tuple>

#include "transit/error.hpp"
#include "transit/oracle/oracle.hpp"

namespace transit::oracle {
namespace {

struct Label {
  Time arrival;
  Duration walking;
};

// Pareto set of (arrival, walking) for one stop, phase and level.
class Front {
 public:
  bool insert(Label l) {
    for (const auto& x : labels_) {
      if (x.arrival <= l.arrival && x.walking <= l.walking) return false;
    }
    std::erase_if(labels_, [&](const Label& x) { return l.arrival <= x.arrival && l.walking <= x.walking; });
    labels_.push_back(l);
    return true;
  }
  [[nodiscard]] const std::vector<Label>& labels() const { return labels_; }

 private:
  std::vector<Label> labels_;
};

}  // namespace

std::vector<ParetoPoint> pareto_oracle(const Timetable& tt, StopId source, StopId target, Time departure,
                                       int max_trips) {
  const std::size_t n = tt.stop_count();
  if (n > kOracleMaxStops) {
    throw OracleScaleError("pareto oracle limited to " + std::to_string(kOracleMaxStops) + " stops, got " +
                           std::to_string(n));
  }
  if (max_trips < 0 || max_trips > kOracleMaxTrips) {
    throw OracleScaleError("pareto oracle limited to " + std::to_string(kOracleMaxTrips) + " trips, got " +
                           std::to_string(max_trips));
  }
  if (source.index() >= n || target.index() >= n) throw QueryError("oracle: unknown stop");

  const auto& graph = tt.transfer_graph();
  std::vector<ParetoPoint> found;

  // can_walk[s]: just alighted at s (or the origin); ready[s]: may board at s.
  std::vector<Front> can_walk(n);
  can_walk[source.index()].insert({departure, Duration(0)});

  for (int level = 0; level <= max_trips; ++level) {
    std::vector<Front> ready(n);
    for (std::size_t s = 0; s < n; ++s) {
      for (const auto& l : can_walk[s].labels()) {
        ready[s].insert(l);
        for (const auto& e : graph.out_edges(VertexId(static_cast<std::uint32_t>(s)))) {
          if (e.target.index() >= n) continue;
          const Time t = l.arrival + e.duration;
          if (t.is_infinite()) continue;
          ready[e.target.index()].insert({t, l.walking + e.duration});
        }
      }
    }
    for (const auto& l : ready[target.index()].labels()) found.push_back({l.arrival, l.walking, level});
    if (level == max_trips) break;

    std::vector<Front> next(n);
    for (const auto& trip : tt.trips()) {
      const auto& stops = tt.route(trip.route).stops;
      for (std::size_t i = 0; i + 1 < trip.events.size(); ++i) {
        for (const auto& r : ready[stops[i].index()].labels()) {
          if (trip.events[i].departure < r.arrival) continue;
          for (std::size_t j = i + 1; j < trip.events.size(); ++j) {
            next[stops[j].index()].insert({trip.events[j].arrival, r.walking});
          }
        }
      }
    }
    can_walk = std::move(next);
  }

  std::vector<ParetoPoint> front;
  for (const auto& p : found) {
    const bool dominated = std::any_of(found.begin(), found.end(), [&](const ParetoPoint& q) {
      return q != p && q.arrival <= p.arrival && q.walking <= p.walking && q.trips <= p.trips;
    });
    if (!dominated && std::find(front.begin(), front.end(), p) == front.end()) front.push_back(p);
  }
  std::sort(front.begin(), front.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    return std::tie(a.trips, a.arrival, a.walking) < std::tie(b.trips, b.arrival, b.walking);
  });
  return front;
}

}  // namespace transit::oracle
