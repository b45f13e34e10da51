#include "transit/ingest/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "transit/error.hpp"

namespace transit::ingest {

namespace {

constexpr double kWalkingSpeed = 1.25;   // m/s
constexpr double kVehicleSpeed = 8.0;    // m/s
constexpr double kStopSpacing = 180.0;   // meters between neighbouring stops on average
constexpr std::uint32_t kFirstDeparture = 6 * 3600;

// mt19937_64 output is fixed by the standard; the std distributions are not,
// so draws are derived from raw output to keep networks identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

double distance(const Stop& a, const Stop& b) { return std::hypot(a.lat - b.lat, a.lon - b.lon); }

std::vector<StopId> route_sequence(const std::vector<Stop>& stops, Rng& rng) {
  const auto n = stops.size();
  const auto length = rng.between(std::min<std::size_t>(n, 4), std::min<std::size_t>(n, 12));
  std::vector<bool> used(n, false);
  std::vector<StopId> seq{StopId(static_cast<StopId::rep>(rng.below(n)))};
  used[seq.front().index()] = true;
  std::vector<std::pair<double, std::size_t>> candidates;
  while (seq.size() < length) {
    candidates.clear();
    const auto& here = stops[seq.back().index()];
    for (std::size_t s = 0; s < n; ++s) {
      if (!used[s]) candidates.emplace_back(distance(here, stops[s]), s);
    }
    const auto k = std::min<std::size_t>(candidates.size(), 4);
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k), candidates.end());
    const auto pick = candidates[rng.below(k)].second;
    used[pick] = true;
    seq.push_back(StopId(static_cast<StopId::rep>(pick)));
  }
  return seq;
}

}  // namespace

Timetable generate_synthetic(const SyntheticSpec& spec) {
  spec.check();
  Rng rng(spec.seed);
  const std::size_t n = spec.stop_count;
  const double side = kStopSpacing * std::sqrt(static_cast<double>(n));

  // planar coordinates in meters, stored in the lat/lon fields
  std::vector<Stop> stops(n);
  for (std::size_t s = 0; s < n; ++s) {
    stops[s].id = fmt::format("S{}", s);
    stops[s].name = stops[s].id;
    stops[s].lat = rng.unit() * side;
    stops[s].lon = rng.unit() * side;
  }

  std::vector<Route> routes;
  std::vector<Trip> trips;
  for (std::uint32_t r = 0; r < spec.route_count; ++r) {
    Route route;
    route.id = fmt::format("R{}", r);
    route.stops = route_sequence(stops, rng);
    const auto len = route.stops.size();
    std::vector<std::uint32_t> hop(len, 0), dwell(len, 0);
    for (std::size_t i = 1; i < len; ++i) {
      const double d = distance(stops[route.stops[i - 1].index()], stops[route.stops[i].index()]);
      hop[i] = static_cast<std::uint32_t>(std::ceil(d / kVehicleSpeed)) + 30 + static_cast<std::uint32_t>(rng.below(61));
      dwell[i] = i + 1 < len ? static_cast<std::uint32_t>(rng.below(31)) : 0;
    }
    const auto headway = static_cast<std::uint32_t>(rng.between(300, 1200));
    const auto first = kFirstDeparture + static_cast<std::uint32_t>(rng.below(3600));
    const RouteId rid(r);
    for (std::uint32_t j = 0; j < spec.trips_per_route; ++j) {
      Trip trip;
      trip.id = fmt::format("R{}T{}", r, j);
      trip.route = rid;
      std::uint32_t clock = first + j * headway;
      for (std::size_t i = 0; i < len; ++i) {
        clock += hop[i];
        const auto arrival = Time::from_seconds(clock);
        clock += dwell[i];
        trip.events.push_back({arrival, Time::from_seconds(clock)});
      }
      route.trips.push_back(TripId(static_cast<TripId::rep>(trips.size())));
      trips.push_back(std::move(trip));
    }
    routes.push_back(std::move(route));
  }

  // closest pairs first, both directions, until the requested edge count
  const auto max_edges = static_cast<double>(n) * static_cast<double>(n - 1);
  const auto wanted = static_cast<std::size_t>(std::llround(spec.target_density * max_edges));
  std::vector<std::vector<TransferEdge>> adjacency(n);
  if (wanted > 0) {
    struct Pair {
      double dist;
      std::uint32_t a, b;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t b = a + 1; b < n; ++b) pairs.push_back({distance(stops[a], stops[b]), a, b});
    }
    const auto pair_count = std::min(pairs.size(), (wanted + 1) / 2);
    std::partial_sort(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(pair_count), pairs.end(),
                      [](const Pair& x, const Pair& y) {
                        return x.dist != y.dist ? x.dist < y.dist : std::pair(x.a, x.b) < std::pair(y.a, y.b);
                      });
    std::size_t added = 0;
    for (std::size_t i = 0; i < pair_count && added < wanted; ++i) {
      const Duration walk(static_cast<std::uint32_t>(std::max(1.0, std::ceil(pairs[i].dist / kWalkingSpeed))));
      adjacency[pairs[i].a].push_back({VertexId(pairs[i].b), walk});
      ++added;
      if (added < wanted) {
        adjacency[pairs[i].b].push_back({VertexId(pairs[i].a), walk});
        ++added;
      }
    }
    for (auto& list : adjacency) rng.shuffle(list);
  }
  return Timetable(std::move(stops), std::move(routes), std::move(trips), TransferGraph::from_adjacency(adjacency));
}

}  // namespace transit::ingest
