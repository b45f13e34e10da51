#include "transit/ingest/gtfs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

#include <fmt/format.h>

#include "csv.hpp"
#include "transit/error.hpp"
#include "transit/log.hpp"
#include "transit/validate.hpp"

namespace transit::ingest {

namespace {

namespace fs = std::filesystem;
using detail::CsvReader;

constexpr double kEarthRadiusMeters = 6371000.0;

struct RawStopTime {
  std::int64_t sequence;
  StopId stop;
  StopEvent event;
};

struct RawTrip {
  std::string id;
  std::string gtfs_route;
  std::vector<RawStopTime> stop_times;
};

template <class T>
T parse_number(const CsvReader& csv, std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    csv.fail(fmt::format("cannot parse {} '{}'", what, text));
  }
  return value;
}

double parse_double(const CsvReader& csv, std::string_view text, std::string_view what) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    csv.fail(fmt::format("cannot parse {} '{}'", what, text));
  }
}

Time parse_csv_time(const CsvReader& csv, std::string_view text) {
  try {
    return parse_time(text);
  } catch (const std::invalid_argument& e) {
    csv.fail(e.what());
  }
}

fs::path require_file(const fs::path& dir, std::string_view name) {
  auto path = dir / name;
  if (!fs::is_regular_file(path)) {
    throw IngestError(fmt::format("missing required file {} in {}", name, dir.string()));
  }
  return path;
}

struct StopsTable {
  std::vector<Stop> stops;
  std::unordered_map<std::string, StopId> index;
  bool has_coordinates = true;
};

StopsTable read_stops(const fs::path& path) {
  CsvReader csv(path);
  const auto id_col = csv.require_column("stop_id");
  const auto name_col = csv.column("stop_name");
  const auto lat_col = csv.column("stop_lat");
  const auto lon_col = csv.column("stop_lon");
  StopsTable out;
  out.has_coordinates = lat_col && lon_col;
  while (csv.next()) {
    Stop stop;
    stop.id = std::string(csv.field(id_col));
    if (stop.id.empty()) csv.fail("empty stop_id");
    stop.name = name_col ? std::string(csv.field(*name_col)) : stop.id;
    if (out.has_coordinates) {
      const auto lat = csv.field(*lat_col);
      const auto lon = csv.field(*lon_col);
      if (lat.empty() || lon.empty()) {
        out.has_coordinates = false;
      } else {
        stop.lat = parse_double(csv, lat, "stop_lat");
        stop.lon = parse_double(csv, lon, "stop_lon");
      }
    }
    const StopId id(static_cast<StopId::rep>(out.stops.size()));
    if (!out.index.emplace(stop.id, id).second) csv.fail(fmt::format("duplicate stop_id '{}'", stop.id));
    out.stops.push_back(std::move(stop));
  }
  return out;
}

std::vector<RawTrip> read_trips(const fs::path& trips_path, const fs::path& stop_times_path,
                                const StopsTable& stops) {
  std::vector<RawTrip> trips;
  std::unordered_map<std::string, std::size_t> trip_index;
  {
    CsvReader csv(trips_path);
    const auto id_col = csv.require_column("trip_id");
    const auto route_col = csv.require_column("route_id");
    while (csv.next()) {
      RawTrip trip{std::string(csv.field(id_col)), std::string(csv.field(route_col)), {}};
      if (trip.id.empty()) csv.fail("empty trip_id");
      if (!trip_index.emplace(trip.id, trips.size()).second) {
        csv.fail(fmt::format("duplicate trip_id '{}'", trip.id));
      }
      trips.push_back(std::move(trip));
    }
  }
  CsvReader csv(stop_times_path);
  const auto trip_col = csv.require_column("trip_id");
  const auto arr_col = csv.require_column("arrival_time");
  const auto dep_col = csv.require_column("departure_time");
  const auto stop_col = csv.require_column("stop_id");
  const auto seq_col = csv.require_column("stop_sequence");
  while (csv.next()) {
    const auto trip_it = trip_index.find(std::string(csv.field(trip_col)));
    if (trip_it == trip_index.end()) {
      csv.fail(fmt::format("referential integrity: trip '{}' not defined in trips.txt", csv.field(trip_col)));
    }
    const auto stop_it = stops.index.find(std::string(csv.field(stop_col)));
    if (stop_it == stops.index.end()) {
      csv.fail(fmt::format("referential integrity: stop '{}' not defined in stops.txt", csv.field(stop_col)));
    }
    auto arr_text = csv.field(arr_col);
    auto dep_text = csv.field(dep_col);
    if (arr_text.empty() && dep_text.empty()) csv.fail("stop time without arrival and departure");
    if (arr_text.empty()) arr_text = dep_text;
    if (dep_text.empty()) dep_text = arr_text;
    trips[trip_it->second].stop_times.push_back(
        {parse_number<std::int64_t>(csv, csv.field(seq_col), "stop_sequence"), stop_it->second,
         {parse_csv_time(csv, arr_text), parse_csv_time(csv, dep_text)}});
  }
  return trips;
}

bool overtakes(const std::vector<StopEvent>& earlier, const std::vector<StopEvent>& later) {
  for (std::size_t i = 0; i < earlier.size(); ++i) {
    if (later[i].departure < earlier[i].departure || later[i].arrival < earlier[i].arrival) return true;
  }
  return false;
}

bool events_less(const std::vector<StopEvent>& a, const std::vector<StopEvent>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].departure != b[i].departure) return a[i].departure < b[i].departure;
    if (a[i].arrival != b[i].arrival) return a[i].arrival < b[i].arrival;
  }
  return false;
}

TransferGraph read_transfers(const fs::path& path, const StopsTable& stops, const IngestConfig& config) {
  CsvReader csv(path);
  const auto from_col = csv.require_column("from_stop_id");
  const auto to_col = csv.require_column("to_stop_id");
  const auto time_col = csv.column("min_transfer_time");
  std::vector<EdgeSpec> edges;
  while (csv.next()) {
    const auto from = stops.index.find(std::string(csv.field(from_col)));
    const auto to = stops.index.find(std::string(csv.field(to_col)));
    if (from == stops.index.end() || to == stops.index.end()) {
      csv.fail("referential integrity: transfer references an undefined stop");
    }
    if (from->second == to->second) {
      log().debug("{}:{}: skipping same-stop transfer", csv.file_name(), csv.line());
      continue;
    }
    std::uint32_t seconds = 0;
    if (time_col && !csv.field(*time_col).empty()) {
      seconds = parse_number<std::uint32_t>(csv, csv.field(*time_col), "min_transfer_time");
    }
    if (seconds == 0) {
      log().warn("{}:{}: zero transfer time clamped to 1 s", csv.file_name(), csv.line());
      seconds = 1;
    }
    edges.push_back({to_vertex(from->second), to_vertex(to->second), Duration(seconds)});
  }
  return TransferGraph::from_edges(stops.stops.size(), edges, config.collapse_parallel_edges);
}

}  // namespace

double haversine_meters(double lat1, double lon1, double lat2, double lon2) {
  constexpr double kRad = std::numbers::pi / 180.0;
  const double dlat = (lat2 - lat1) * kRad;
  const double dlon = (lon2 - lon1) * kRad;
  const double a = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1 * kRad) * std::cos(lat2 * kRad) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusMeters * std::asin(std::min(1.0, std::sqrt(a)));
}

TransferGraph footpath_graph(const std::vector<Stop>& stops, const IngestConfig& config) {
  config.check();
  const auto n = static_cast<std::int64_t>(stops.size());
  std::vector<std::vector<TransferEdge>> adjacency(stops.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = haversine_meters(stops[i].lat, stops[i].lon, stops[j].lat, stops[j].lon);
      if (d > config.footpath_radius) continue;
      // the epsilon absorbs rounding in the trigonometry (150 m at 1.25 m/s is 120 s, not 121 s)
      const double seconds = std::max(1.0, std::ceil(d / config.walking_speed - 1e-6));
      adjacency[i].push_back({VertexId(static_cast<VertexId::rep>(j)), Duration(static_cast<std::uint32_t>(seconds))});
    }
  }
  return TransferGraph::from_adjacency(adjacency, config.collapse_parallel_edges);
}

Timetable load_gtfs(const std::filesystem::path& directory, const IngestConfig& config) {
  config.check();
  const auto stops_path = require_file(directory, "stops.txt");
  const auto trips_path = require_file(directory, "trips.txt");
  const auto stop_times_path = require_file(directory, "stop_times.txt");

  auto stops = read_stops(stops_path);
  auto raw_trips = read_trips(trips_path, stop_times_path, stops);

  // group by stop sequence in order of first appearance
  std::map<std::vector<StopId>, std::size_t> group_of;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::vector<StopEvent>> events(raw_trips.size());
  for (std::size_t t = 0; t < raw_trips.size(); ++t) {
    auto& st = raw_trips[t].stop_times;
    if (st.size() < 2) {
      log().warn("trip '{}' has {} stop time(s); skipped", raw_trips[t].id, st.size());
      continue;
    }
    std::ranges::stable_sort(st, {}, &RawStopTime::sequence);
    std::vector<StopId> sequence;
    for (const auto& s : st) {
      sequence.push_back(s.stop);
      events[t].push_back(s.event);
    }
    auto [it, inserted] = group_of.try_emplace(std::move(sequence), groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(t);
  }
  std::vector<const std::vector<StopId>*> group_sequence(groups.size());
  for (const auto& [seq, g] : group_of) group_sequence[g] = &seq;

  std::vector<Route> routes;
  std::vector<Trip> trips;
  std::unordered_map<std::string, int> route_name_uses;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto members = groups[g];
    std::ranges::stable_sort(members, [&](std::size_t a, std::size_t b) { return events_less(events[a], events[b]); });
    std::vector<std::vector<std::size_t>> chains;
    for (const auto t : members) {
      auto chain = std::ranges::find_if(chains, [&](const auto& c) { return !overtakes(events[c.back()], events[t]); });
      if (chain == chains.end()) {
        chains.push_back({t});
      } else {
        chain->push_back(t);
      }
    }
    if (chains.size() > 1) {
      log().info("stop sequence of trip '{}' split into {} routes (overtaking trips)", raw_trips[members.front()].id,
                 chains.size());
    }
    for (const auto& chain : chains) {
      const RouteId rid(static_cast<RouteId::rep>(routes.size()));
      Route route;
      const auto& base = raw_trips[chain.front()].gtfs_route;
      const int use = route_name_uses[base]++;
      route.id = use == 0 ? base : fmt::format("{}/{}", base, use);
      route.stops = *group_sequence[g];
      for (const auto t : chain) {
        route.trips.push_back(TripId(static_cast<TripId::rep>(trips.size())));
        trips.push_back({raw_trips[t].id, rid, std::move(events[t])});
      }
      routes.push_back(std::move(route));
    }
  }

  TransferGraph graph;
  const auto transfers_path = directory / "transfers.txt";
  if (std::filesystem::is_regular_file(transfers_path)) {
    graph = read_transfers(transfers_path, stops, config);
  } else {
    if (!stops.has_coordinates) {
      throw IngestError("stops.txt lacks stop_lat/stop_lon; footpaths cannot be derived without transfers.txt");
    }
    graph = footpath_graph(stops.stops, config);
  }

  Timetable tt(std::move(stops.stops), std::move(routes), std::move(trips), std::move(graph));
  if (const auto violations = validate(tt); !violations.empty()) {
    const auto& v = violations.front();
    throw IngestError(fmt::format("GTFS feed produced an invalid timetable ({} violation(s)); first: {} at {}: {}",
                                  violations.size(), to_string(v.kind), v.location, v.detail));
  }
  return tt;
}

}  // namespace transit::ingest
