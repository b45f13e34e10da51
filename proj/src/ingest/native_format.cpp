#include "transit/ingest/native_format.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include <fmt/format.h>

#include "transit/error.hpp"

namespace transit::ingest {

namespace {

constexpr std::array<char, 4> kMagic{'T', 'P', 'R', 'N'};
constexpr std::uint32_t kInfinityWire = 0xFFFFFFFFu;

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_ += s;
  }
  void time(Time t) { u32(t.is_infinite() ? kInfinityWire : t.seconds()); }
  void raw(std::string_view bytes) { buf_.append(bytes); }

  [[nodiscard]] const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  Reader(std::string_view data, std::string_view where) : data_(data), where_(where) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(take(1)[0]); }
  std::uint32_t u32() {
    const auto b = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{static_cast<unsigned char>(b[i])} << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    const auto b = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t{static_cast<unsigned char>(b[i])} << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const auto n = u32();
    return std::string(take(n));
  }
  Time time() {
    const auto v = u32();
    if (v == kInfinityWire) return Time::infinity();
    if (v >= Time::kFiniteLimit) fail(fmt::format("time value {} out of range", v));
    return Time::from_seconds(v);
  }
  /// Guards element counts against the bytes actually left.
  std::size_t count(std::uint64_t n, std::size_t min_bytes_each) {
    if (min_bytes_each != 0 && n > remaining() / min_bytes_each) fail(fmt::format("count {} exceeds payload", n));
    return static_cast<std::size_t>(n);
  }
  std::string_view take(std::size_t n) {
    if (n > remaining()) fail("truncated");
    auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  [[nodiscard]] std::size_t remaining() const { return data_.size() - pos_; }
  [[noreturn]] void fail(std::string_view message) const {
    throw FormatError(fmt::format("native file {}: {}", where_, message));
  }

 private:
  std::string_view data_;
  std::string_view where_;
  std::size_t pos_ = 0;
};

void section(Writer& out, std::string_view tag, const Writer& payload) {
  out.raw(tag);
  out.u64(payload.bytes().size());
  out.raw(payload.bytes());
}

}  // namespace

void write_native(const Timetable& tt, std::ostream& out) {
  Writer stops;
  stops.u32(static_cast<std::uint32_t>(tt.stop_count()));
  for (const auto& s : tt.stops()) {
    stops.str(s.id);
    stops.str(s.name);
    stops.f64(s.lat);
    stops.f64(s.lon);
  }
  Writer routes;
  routes.u32(static_cast<std::uint32_t>(tt.route_count()));
  for (const auto& r : tt.routes()) {
    routes.str(r.id);
    routes.u32(static_cast<std::uint32_t>(r.stops.size()));
    for (const auto s : r.stops) routes.u32(s.value());
    routes.u32(static_cast<std::uint32_t>(r.trips.size()));
    for (const auto t : r.trips) routes.u32(t.value());
  }
  Writer trips;
  trips.u32(static_cast<std::uint32_t>(tt.trip_count()));
  for (const auto& t : tt.trips()) {
    trips.str(t.id);
    trips.u32(t.route.value());
    trips.u32(static_cast<std::uint32_t>(t.events.size()));
    for (const auto& ev : t.events) {
      trips.time(ev.arrival);
      trips.time(ev.departure);
    }
  }
  const auto& g = tt.transfer_graph();
  Writer graph;
  graph.u64(g.vertex_count());
  graph.u64(g.edge_count());
  graph.u8(g.sorted() ? 1 : 0);
  if (g.vertex_count() > 0) {
    for (const auto o : g.offsets()) graph.u64(o);
  }
  for (const auto& e : g.edges()) {
    graph.u32(e.target.value());
    graph.u32(e.duration.seconds());
  }

  Writer file;
  file.raw(std::string_view(kMagic.data(), kMagic.size()));
  file.u32(kNativeFormatVersion);
  file.u32(4);
  section(file, "STOP", stops);
  section(file, "ROUT", routes);
  section(file, "TRIP", trips);
  section(file, "GRPH", graph);
  out.write(file.bytes().data(), static_cast<std::streamsize>(file.bytes().size()));
  if (!out) throw IngestError("failed writing native file");
}

void write_native(const Timetable& tt, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IngestError(fmt::format("cannot open {} for writing", path.string()));
  write_native(tt, out);
}

Timetable read_native(std::istream& in) {
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  Reader file(data, "stream");
  if (file.remaining() < 4 || std::memcmp(file.take(4).data(), kMagic.data(), 4) != 0) {
    file.fail("bad magic (expected \"TPRN\")");
  }
  if (const auto version = file.u32(); version != kNativeFormatVersion) {
    file.fail(fmt::format("unsupported format version {}", version));
  }
  const auto section_count = file.u32();

  std::vector<Stop> stops;
  std::vector<Route> routes;
  std::vector<Trip> trips;
  TransferGraph graph;
  bool seen_stop = false, seen_route = false, seen_trip = false, seen_graph = false;
  for (std::uint32_t s = 0; s < section_count; ++s) {
    const std::string tag(file.take(4));
    const auto length = file.u64();
    Reader r(file.take(file.count(length, 1)), tag);
    if (tag == "STOP") {
      seen_stop = true;
      stops.resize(r.count(r.u32(), 24));
      for (auto& st : stops) {
        st.id = r.str();
        st.name = r.str();
        st.lat = r.f64();
        st.lon = r.f64();
      }
    } else if (tag == "ROUT") {
      seen_route = true;
      routes.resize(r.count(r.u32(), 12));
      for (auto& route : routes) {
        route.id = r.str();
        route.stops.resize(r.count(r.u32(), 4));
        for (auto& sid : route.stops) sid = StopId(r.u32());
        route.trips.resize(r.count(r.u32(), 4));
        for (auto& tid : route.trips) tid = TripId(r.u32());
      }
    } else if (tag == "TRIP") {
      seen_trip = true;
      trips.resize(r.count(r.u32(), 12));
      for (auto& trip : trips) {
        trip.id = r.str();
        trip.route = RouteId(r.u32());
        trip.events.resize(r.count(r.u32(), 8));
        for (auto& ev : trip.events) {
          ev.arrival = r.time();
          ev.departure = r.time();
        }
      }
    } else if (tag == "GRPH") {
      seen_graph = true;
      const auto n = r.u64();
      const auto m = r.u64();
      const bool sorted = r.u8() != 0;
      std::vector<std::uint64_t> offsets;
      if (n > 0) {
        offsets.resize(r.count(n + 1, 8));
        for (auto& o : offsets) o = r.u64();
      } else {
        offsets.push_back(0);
      }
      std::vector<TransferEdge> edges(r.count(m, 8));
      for (auto& e : edges) {
        e.target = VertexId(r.u32());
        e.duration = Duration(r.u32());
      }
      try {
        graph = TransferGraph::from_csr(std::move(offsets), std::move(edges), sorted);
      } catch (const InvalidGraph& e) {
        r.fail(e.what());
      }
    }
    // unknown sections are skipped
  }
  if (!(seen_stop && seen_route && seen_trip && seen_graph)) file.fail("missing a required section");
  if (file.remaining() != 0) file.fail("trailing bytes after last section");
  return Timetable(std::move(stops), std::move(routes), std::move(trips), std::move(graph));
}

Timetable read_native(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError(fmt::format("cannot open {}", path.string()));
  return read_native(in);
}

}  // namespace transit::ingest
