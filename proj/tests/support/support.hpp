#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "transit/ingest/graph_kernels.hpp"
#include "transit/ingest/synthetic.hpp"
#include "transit/ingest/text_format.hpp"
#include "transit/routing/query.hpp"
#include "transit/timetable.hpp"

namespace transit::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(TRANSIT_TEST_DATA_DIR) / name;
}

inline Timetable fixture(const std::string& name) { return ingest::read_text(data_path(name)); }

inline Timetable with_sorted_edges(const Timetable& tt) {
  return tt.with_transfer_graph(ingest::sort_edges(tt.transfer_graph()).graph);
}

inline StopId stop_named(const Timetable& tt, const std::string& id) {
  for (std::size_t i = 0; i < tt.stop_count(); ++i) {
    if (tt.stops()[i].id == id) return StopId(static_cast<StopId::rep>(i));
  }
  throw std::out_of_range("no stop " + id);
}

inline Time hms(const char* text) { return parse_time(text); }

/// Network `index` of the randomized verification corpus: 20-50 stops,
/// 3-10 routes, transfer density 0.05-0.5, edges sorted.
inline ingest::SyntheticSpec corpus_spec(std::uint64_t index) {
  std::mt19937_64 rng(0x5eedULL * 1000003ULL + index);
  ingest::SyntheticSpec spec;
  spec.stop_count = 20 + static_cast<std::uint32_t>(rng() % 31);
  spec.route_count = 3 + static_cast<std::uint32_t>(rng() % 8);
  spec.trips_per_route = 4 + static_cast<std::uint32_t>(rng() % 9);
  spec.target_density = 0.05 + 0.45 * static_cast<double>(rng() % 1001) / 1000.0;
  spec.seed = index * 7919 + 1;
  return spec;
}

inline Timetable corpus_network(std::uint64_t index) {
  return with_sorted_edges(ingest::generate_synthetic(corpus_spec(index)));
}

/// Departure window covering the timetable's events, padded on both sides.
inline std::pair<Time, Time> service_window(const Timetable& tt) {
  Time first;
  Time last = Time::from_seconds(0);
  for (const auto& trip : tt.trips()) {
    first = std::min(first, trip.events.front().departure);
    last = std::max(last, trip.events.back().arrival);
  }
  if (first.is_infinite()) return {Time::from_seconds(0), Time::from_seconds(0)};
  const auto pad = 1800;
  const auto lo = first.seconds() > static_cast<Time::rep>(pad) ? first.seconds() - pad : 0;
  return {Time::from_seconds(lo), Time::from_seconds(last.seconds())};
}

inline std::vector<routing::Query> corpus_queries(const Timetable& tt, std::uint64_t seed, int count,
                                                  int max_rounds) {
  std::mt19937_64 rng(seed);
  const auto [lo, hi] = service_window(tt);
  std::vector<routing::Query> out;
  for (int i = 0; i < count; ++i) {
    routing::Query q;
    q.source = StopId(static_cast<StopId::rep>(rng() % tt.stop_count()));
    q.target = StopId(static_cast<StopId::rep>(rng() % tt.stop_count()));
    q.departure = Time::from_seconds(lo.seconds() + static_cast<std::int64_t>(rng() % (hi.seconds() - lo.seconds() + 1)));
    q.max_rounds = max_rounds;
    out.push_back(q);
  }
  return out;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("transit_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const { return path_; }
  [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }
  void write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name) << content;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace transit::testing
