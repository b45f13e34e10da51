#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "transit/ingest/config.hpp"
#include "transit/routing/mcraptor.hpp"
#include "transit/routing/query.hpp"
#include "transit/routing/raptor.hpp"
#include "transit/timetable.hpp"

namespace transit::bench {

enum class Algorithm { kRaptor, kMcRaptor };
enum class PruningModes { kOff, kEarly, kBoth };

std::string_view to_string(Algorithm algorithm);
std::string_view to_string(PruningModes modes);
Algorithm parse_algorithm(std::string_view text);
PruningModes parse_pruning_modes(std::string_view text);

struct BenchConfig {
  std::size_t query_count = 1000;
  std::uint64_t seed = 1;
  std::vector<Algorithm> algorithms{Algorithm::kRaptor};
  PruningModes pruning = PruningModes::kBoth;
  std::size_t warmup_queries = 10;
  std::filesystem::path output;  // CSV path; the sidecar JSON goes next to it
  int max_rounds = 16;
  // >1 shards queries over OpenMP threads; wall times are then not comparable
  int threads = 1;

  /// Throws PreconditionError (query_count == 0, no algorithm, max_rounds < 1, threads < 1).
  void check() const;
};

struct QueryRow {
  Algorithm algorithm;
  routing::Pruning pruning;
  StopId source;
  StopId target;
  Time departure;
  std::uint64_t wall_ns = 0;
  std::uint64_t edges_examined = 0;
  std::uint64_t edges_relaxed = 0;
  std::uint64_t edges_pruned = 0;
  std::uint64_t result_hash = 0;
};

struct Aggregate {
  Algorithm algorithm;
  routing::Pruning pruning;
  std::size_t queries = 0;
  double mean_ns = 0;
  double median_ns = 0;
  double p95_ns = 0;
  double mean_examined = 0;
  double mean_relaxed = 0;
  double mean_pruned = 0;
};

/// Both percentages are 100 * (1 - Early / Off): `wall_pct` over mean wall time,
/// `counter_pct` over mean edges_examined.
struct Speedup {
  Algorithm algorithm;
  double wall_pct = 0;
  double counter_pct = 0;
  bool hashes_match = true;       // every paired result hash equal
  bool counters_balance = true;   // examined(Early) + pruned(Early) == examined(Off) for every pair
};

struct NetworkStats {
  std::size_t stops = 0;
  std::size_t routes = 0;
  std::size_t trips = 0;
  std::size_t stop_events = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::optional<double> density;  // absent below two vertices
  std::uint64_t sorting_ns = 0;
};

struct BenchReport {
  BenchConfig config;
  NetworkStats stats;
  std::vector<QueryRow> rows;  // per query: each algorithm, Off before Early
  std::vector<Aggregate> aggregates;
  std::vector<Speedup> speedups;  // only when both modes ran
};

/// Counts plus a measured sort_edges run over the transfer graph.
NetworkStats network_stats(const Timetable& timetable);

/// Seeded random queries (stops uniform, departures uniform over the span of
/// departure events) run with Off and Early interleaved on the same list.
BenchReport run_bench(const Timetable& timetable, const BenchConfig& config);

/// FNV-1a over the result entries (trips, arrival, walking and every leg).
std::uint64_t result_hash(const routing::ParetoResult& result);
std::uint64_t result_hash(const routing::McResult& result);

/// CSV: header, one row per (query, algorithm, mode), then "#"-prefixed aggregate lines.
/// With `include_wall` false every wall-time field is written as "-".
void write_csv(const BenchReport& report, const Timetable& timetable, std::ostream& out, bool include_wall = true);
void write_sidecar_json(const BenchReport& report, std::ostream& out);
/// Writes config.output and config.output + ".json". Throws std::runtime_error on I/O failure.
void write_report(const BenchReport& report, const Timetable& timetable);

/// Hash of the CSV with wall-time fields blanked; equal for identical seeds.
std::string determinism_digest(const BenchReport& report, const Timetable& timetable);

struct Correlation {
  double r = 0;
  double p = 1;
};

/// Sample Pearson r with a two-sided p-value from t = r*sqrt((n-2)/(1-r^2)) on
/// n-2 degrees of freedom. Throws PreconditionError for mismatched lengths or
/// n < 3 and UndefinedCorrelation when either sample has zero variance.
Correlation pearson(std::span<const double> xs, std::span<const double> ys);

struct StudyPoint {
  ingest::SyntheticSpec spec;
  double density = 0;      // measured on the generated graph
  double counter_pct = 0;  // edges_examined speedup
  double wall_pct = 0;
};

struct StudyReport {
  std::vector<StudyPoint> points;
  Correlation correlation;  // density vs counter_pct
};

/// One run_bench (both modes) per generated network. Needs at least three
/// distinct target densities (PreconditionError otherwise).
StudyReport speedup_density_study(const std::vector<ingest::SyntheticSpec>& specs, const BenchConfig& config);

}  // namespace transit::bench
