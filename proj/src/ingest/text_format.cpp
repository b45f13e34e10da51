#include "transit/ingest/text_format.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "transit/error.hpp"

namespace transit::ingest {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

class Parser {
 public:
  Timetable parse(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto end = std::min(text.find('\n', pos), text.size());
      ++line_;
      auto line = text.substr(pos, end - pos);
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      handle(tokens(line));
      pos = end + 1;
    }
    const std::size_t vertices = std::max(vertex_count_, stops_.size());
    std::vector<std::vector<TransferEdge>> adjacency(vertices);
    for (const auto& e : edges_) {
      if (e.from.index() >= vertices || e.to.index() >= vertices) {
        throw FormatError(fmt::format("line {}: transfer endpoint outside the vertex range", e.line));
      }
      adjacency[e.from.index()].push_back({e.to, e.duration});
    }
    TransferGraph graph;
    try {
      graph = TransferGraph::from_adjacency(adjacency);
    } catch (const InvalidGraph& e) {
      throw FormatError(fmt::format("transfer graph: {}", e.what()));
    }
    return Timetable(std::move(stops_), std::move(routes_), std::move(trips_), std::move(graph));
  }

 private:
  struct PendingEdge {
    VertexId from;
    VertexId to;
    Duration duration;
    std::size_t line;
  };

  [[noreturn]] void fail(std::string_view message) const {
    throw FormatError(fmt::format("line {}: {}", line_, message));
  }

  template <class T>
  T number(std::string_view text) const {
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) fail(fmt::format("expected a number, got '{}'", text));
    return value;
  }

  double real(std::string_view text) const {
    try {
      std::size_t used = 0;
      const std::string s(text);
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    fail(fmt::format("expected a real number, got '{}'", text));
  }

  Time time(std::string_view text) const {
    try {
      return parse_time(text);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  StopId stop(std::string_view name) const {
    const auto it = stop_index_.find(std::string(name));
    if (it == stop_index_.end()) fail(fmt::format("unknown stop '{}'", name));
    return it->second;
  }

  VertexId vertex(std::string_view name) const {
    if (name.starts_with('@')) return VertexId(number<VertexId::rep>(name.substr(1)));
    return to_vertex(stop(name));
  }

  void handle(const std::vector<std::string_view>& tok) {
    if (tok.empty()) return;
    const auto kind = tok[0];
    if (kind == "stop") {
      if (tok.size() != 2 && tok.size() != 4) fail("usage: stop <id> [<lat> <lon>]");
      Stop s{std::string(tok[1]), std::string(tok[1]), 0.0, 0.0};
      if (tok.size() == 4) {
        s.lat = real(tok[2]);
        s.lon = real(tok[3]);
      }
      if (!stop_index_.emplace(s.id, StopId(static_cast<StopId::rep>(stops_.size()))).second) {
        fail(fmt::format("duplicate stop '{}'", s.id));
      }
      stops_.push_back(std::move(s));
    } else if (kind == "vertices") {
      if (tok.size() != 2) fail("usage: vertices <count>");
      vertex_count_ = number<std::size_t>(tok[1]);
    } else if (kind == "route") {
      if (tok.size() < 2) fail("usage: route <id> <stop>...");
      Route r;
      r.id = std::string(tok[1]);
      for (std::size_t i = 2; i < tok.size(); ++i) r.stops.push_back(stop(tok[i]));
      if (!route_index_.emplace(r.id, RouteId(static_cast<RouteId::rep>(routes_.size()))).second) {
        fail(fmt::format("duplicate route '{}'", r.id));
      }
      routes_.push_back(std::move(r));
    } else if (kind == "trip") {
      if (tok.size() < 3) fail("usage: trip <id> <route> <arr[/dep]>...");
      const auto it = route_index_.find(std::string(tok[2]));
      if (it == route_index_.end()) fail(fmt::format("unknown route '{}'", tok[2]));
      Trip t;
      t.id = std::string(tok[1]);
      t.route = it->second;
      for (std::size_t i = 3; i < tok.size(); ++i) {
        const auto slash = tok[i].find('/');
        if (slash == std::string_view::npos) {
          const auto at = time(tok[i]);
          t.events.push_back({at, at});
        } else {
          t.events.push_back({time(tok[i].substr(0, slash)), time(tok[i].substr(slash + 1))});
        }
      }
      routes_[it->second.index()].trips.push_back(TripId(static_cast<TripId::rep>(trips_.size())));
      trips_.push_back(std::move(t));
    } else if (kind == "transfer") {
      if (tok.size() != 4) fail("usage: transfer <from> <to> <seconds>");
      edges_.push_back({vertex(tok[1]), vertex(tok[2]), Duration(number<std::uint32_t>(tok[3])), line_});
    } else {
      fail(fmt::format("unknown directive '{}'", kind));
    }
  }

  std::size_t line_ = 0;
  std::size_t vertex_count_ = 0;
  std::vector<Stop> stops_;
  std::vector<Route> routes_;
  std::vector<Trip> trips_;
  std::vector<PendingEdge> edges_;
  std::unordered_map<std::string, StopId> stop_index_;
  std::unordered_map<std::string, RouteId> route_index_;
};

std::string vertex_name(const Timetable& tt, VertexId v) {
  return v.index() < tt.stop_count() ? tt.stops()[v.index()].id : fmt::format("@{}", v.value());
}

}  // namespace

Timetable parse_text(std::string_view text) { return Parser().parse(text); }

Timetable read_text(std::istream& in) {
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_text(data);
}

Timetable read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError(fmt::format("cannot open {}", path.string()));
  return read_text(in);
}

void write_text(const Timetable& tt, std::ostream& out) {
  for (const auto& s : tt.stops()) {
    if (s.lat != 0.0 || s.lon != 0.0) {
      out << fmt::format("stop {} {} {}\n", s.id, s.lat, s.lon);
    } else {
      out << fmt::format("stop {}\n", s.id);
    }
  }
  if (tt.transfer_graph().vertex_count() > tt.stop_count()) {
    out << fmt::format("vertices {}\n", tt.transfer_graph().vertex_count());
  }
  for (const auto& r : tt.routes()) {
    out << "route " << r.id;
    for (const auto s : r.stops) out << ' ' << tt.stop(s).id;
    out << '\n';
  }
  for (const auto& r : tt.routes()) {
    for (const auto tid : r.trips) {
      const auto& t = tt.trip(tid);
      out << "trip " << t.id << ' ' << r.id;
      for (const auto& ev : t.events) {
        out << ' ' << format_time(ev.arrival);
        if (ev.departure != ev.arrival) out << '/' << format_time(ev.departure);
      }
      out << '\n';
    }
  }
  const auto& g = tt.transfer_graph();
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    const VertexId from(static_cast<VertexId::rep>(u));
    for (const auto& e : g.out_edges(from)) {
      out << fmt::format("transfer {} {} {}\n", vertex_name(tt, from), vertex_name(tt, e.target), e.duration.seconds());
    }
  }
}

}  // namespace transit::ingest
