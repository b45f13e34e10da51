#include "transit/cli/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <random>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "transit/bench/bench.hpp"
#include "transit/error.hpp"
#include "transit/ingest/graph_kernels.hpp"
#include "transit/ingest/gtfs.hpp"
#include "transit/ingest/native_format.hpp"
#include "transit/ingest/synthetic.hpp"
#include "transit/ingest/text_format.hpp"
#include "transit/log.hpp"
#include "transit/oracle/oracle.hpp"
#include "transit/routing/mcraptor.hpp"
#include "transit/routing/raptor.hpp"
#include "transit/validate.hpp"

namespace transit::cli {

namespace {

using routing::Pruning;

/// Bad arguments that CLI11 cannot see (unknown stop, bad time, invalid config).
class UsageError : public Error {
 public:
  using Error::Error;
};

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const auto up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::ranges::transform(out, out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

StopId resolve_stop(const Timetable& tt, const std::string& text) {
  for (std::size_t i = 0; i < tt.stop_count(); ++i) {
    if (tt.stops()[i].id == text) return StopId(static_cast<StopId::rep>(i));
  }
  std::optional<StopId> by_name;
  for (std::size_t i = 0; i < tt.stop_count(); ++i) {
    if (tt.stops()[i].name == text) {
      if (by_name) throw UsageError(fmt::format("stop name '{}' is ambiguous; use the stop id", text));
      by_name = StopId(static_cast<StopId::rep>(i));
    }
  }
  if (by_name) return *by_name;
  const auto suggestions = near_matches(tt, text);
  std::string message = fmt::format("unknown stop '{}'", text);
  if (!suggestions.empty()) message += fmt::format("; did you mean: {}?", fmt::join(suggestions, ", "));
  throw UsageError(message);
}

Time parse_departure(const std::string& text) {
  try {
    return parse_time(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(fmt::format("--depart: {}", e.what()));
  }
}

std::string plural_trips(int n) { return fmt::format("{} trip{}", n, n == 1 ? "" : "s"); }

std::string format_elapsed(std::uint64_t ns) { return fmt::format("{} ms {} us", ns / 1'000'000, ns / 1000 % 1000); }

void print_stats(const bench::NetworkStats& s, std::ostream& out) {
  out << fmt::format("{:<14}{}\n", "stops", s.stops);
  out << fmt::format("{:<14}{}\n", "routes", s.routes);
  out << fmt::format("{:<14}{}\n", "trips", s.trips);
  out << fmt::format("{:<14}{}\n", "stop events", s.stop_events);
  out << fmt::format("{:<14}{}\n", "vertices", s.vertices);
  out << fmt::format("{:<14}{}\n", "edges", s.edges);
  out << fmt::format("{:<14}{}\n", "density", s.density ? fmt::format("{:.3e}", *s.density) : "n/a");
  out << fmt::format("{:<14}{}\n", "edge sorting", format_elapsed(s.sorting_ns));
}

// ---- journey rendering -------------------------------------------------

struct LegView {
  nlohmann::ordered_json json;
  std::string text;
};

std::vector<LegView> describe_legs(const Timetable& tt, const Journey& journey) {
  const auto timings = replay(tt, journey);
  const auto name = [&](VertexId v) {
    return v.index() < tt.stop_count() ? tt.stops()[v.index()].id : fmt::format("@{}", v.value());
  };
  std::vector<LegView> out;
  for (std::size_t i = 0; i < journey.legs.size(); ++i) {
    const auto& leg = journey.legs[i];
    const auto from = name(leg_start(tt, leg));
    const auto to = name(leg_end(tt, leg));
    LegView view;
    if (const auto* t = std::get_if<TripLeg>(&leg)) {
      const auto& trip = tt.trip(t->trip);
      view.json = {{"type", "trip"},
                   {"trip", trip.id},
                   {"route", tt.route(trip.route).id},
                   {"board_position", t->board_position},
                   {"alight_position", t->alight_position},
                   {"from", from},
                   {"to", to},
                   {"depart", format_time(trip.events[t->board_position].departure)},
                   {"arrive", format_time(timings[i].end)}};
      view.text = fmt::format("ride {} ({}) {} {} -> {} {}", trip.id, tt.route(trip.route).id, from,
                              format_time(trip.events[t->board_position].departure), to, format_time(timings[i].end));
    } else {
      const auto& w = std::get<TransferLeg>(leg);
      view.json = {{"type", "transfer"},
                   {"from", from},
                   {"to", to},
                   {"duration", format_duration(w.duration)},
                   {"start", format_time(timings[i].start)},
                   {"arrive", format_time(timings[i].end)}};
      view.text = fmt::format("walk {} -> {} {} (arrive {})", from, to, format_duration(w.duration),
                              format_time(timings[i].end));
    }
    out.push_back(std::move(view));
  }
  return out;
}

nlohmann::ordered_json counters_json(const routing::Counters& c) {
  return {{"edges_examined", c.edges_examined}, {"edges_relaxed", c.edges_relaxed},
          {"edges_skipped", c.edges_skipped},   {"edges_pruned", c.edges_pruned},
          {"routes_scanned", c.routes_scanned}, {"rounds", c.rounds}};
}

// ---- subcommands -------------------------------------------------------

struct BuildOptions {
  std::string gtfs;
  std::string native;
  double threshold = 240;
  double walk_speed = 1.25;
  double radius = 500;
  std::string out;
};

int cmd_build(const BuildOptions& o, std::ostream& out) {
  ingest::IngestConfig config;
  if (!(o.threshold >= 1) || o.threshold != std::floor(o.threshold) || o.threshold > 1e9) {
    throw UsageError(fmt::format("--threshold must be a positive whole number of seconds (got {})", o.threshold));
  }
  config.closure_threshold = Duration(static_cast<std::uint32_t>(o.threshold));
  config.walking_speed = o.walk_speed;
  config.footpath_radius = o.radius;
  try {
    config.check();
  } catch (const IngestError& e) {
    throw UsageError(e.what());
  }
  Timetable tt = o.gtfs.empty() ? load_network(o.native) : ingest::load_gtfs(o.gtfs, config);
  const auto closed = ingest::transitive_closure(tt.transfer_graph(), config.closure_threshold);
  const auto sorted = ingest::sort_edges(closed);
  tt = tt.with_transfer_graph(sorted.graph);
  if (const auto violations = validate(tt); !violations.empty()) {
    throw IngestError(fmt::format("network fails validation: {} at {}: {}", to_string(violations[0].kind),
                                  violations[0].location, violations[0].detail));
  }
  ingest::write_native(tt, std::filesystem::path(o.out));
  auto stats = bench::network_stats(tt);
  stats.sorting_ns = static_cast<std::uint64_t>(sorted.elapsed.count());
  print_stats(stats, out);
  out << fmt::format("{:<14}{}\n", "written", o.out);
  return kExitOk;
}

struct QueryOptions {
  std::string net;
  std::string from;
  std::string to;
  std::string depart;
  bool mc = false;
  std::string pruning = "early";
  int max_rounds = 16;
  bool json = false;
  bool legs = false;
  bool oracle = false;
};

int cmd_query(const QueryOptions& o, std::ostream& out) {
  const auto tt = load_network(o.net);
  routing::Query q;
  q.source = resolve_stop(tt, o.from);
  q.target = resolve_stop(tt, o.to);
  q.departure = parse_departure(o.depart);
  q.max_rounds = o.max_rounds;
  q.pruning = o.pruning == "off" ? Pruning::kOff : Pruning::kEarly;

  nlohmann::ordered_json doc;
  doc["query"] = {{"from", tt.stop(q.source).id},
                  {"to", tt.stop(q.target).id},
                  {"depart", format_time(q.departure)},
                  {"criteria", o.mc ? "arrival,trips,walking" : "arrival,trips"},
                  {"pruning", std::string(routing::to_string(q.pruning))}};
  doc["entries"] = nlohmann::ordered_json::array();
  std::vector<std::string> rows;
  std::vector<std::vector<LegView>> legs;
  routing::Counters counters;
  bool truncated = false;

  if (o.mc) {
    const auto result = routing::mc_query(tt, q);
    counters = result.counters;
    truncated = result.truncated;
    for (const auto& e : result.entries) {
      rows.push_back(fmt::format("{}, arr {}, walk {}", plural_trips(e.trips), format_time(e.arrival),
                                 format_duration(e.walking)));
      legs.push_back(describe_legs(tt, e.journey));
      doc["entries"].push_back({{"trips", e.trips},
                                {"arrival", format_time(e.arrival)},
                                {"walking", format_duration(e.walking)}});
    }
  } else {
    const auto result = routing::query(tt, q);
    counters = result.counters;
    truncated = result.truncated;
    for (const auto& e : result.entries) {
      rows.push_back(fmt::format("{}, arr {}", plural_trips(e.num_trips), format_time(e.arrival)));
      legs.push_back(describe_legs(tt, e.journey));
      doc["entries"].push_back({{"trips", e.num_trips},
                                {"arrival", format_time(e.arrival)},
                                {"walking", format_duration(e.journey.transfer_duration_total)}});
    }
  }
  for (std::size_t i = 0; i < legs.size(); ++i) {
    auto& arr = doc["entries"][i]["legs"] = nlohmann::ordered_json::array();
    for (const auto& l : legs[i]) arr.push_back(l.json);
  }
  doc["counters"] = counters_json(counters);
  doc["truncated"] = truncated;

  if (o.oracle) {
    if (o.mc) {
      auto& arr = doc["oracle"] = nlohmann::ordered_json::array();
      const int trips = std::min(q.max_rounds, oracle::kOracleMaxTrips);
      doc["oracle_max_trips"] = trips;
      for (const auto& p : oracle::pareto_oracle(tt, q.source, q.target, q.departure, trips)) {
        arr.push_back({{"trips", p.trips}, {"arrival", format_time(p.arrival)}, {"walking", format_duration(p.walking)}});
      }
    } else {
      doc["oracle"] = {{"earliest_arrival",
                        format_time(oracle::earliest_arrival_oracle(tt, q.source, q.target, q.departure))}};
    }
  }

  if (o.json) {
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  if (rows.empty()) out << "no journey\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << rows[i] << '\n';
    if (o.legs) {
      for (const auto& l : legs[i]) out << "  " << l.text << '\n';
    }
  }
  if (truncated) out << fmt::format("(front truncated at {} rounds)\n", q.max_rounds);
  if (o.oracle) {
    if (o.mc) {
      for (const auto& e : doc["oracle"]) {
        out << fmt::format("oracle (at most {} trips): {}, arr {}, walk {}\n", doc["oracle_max_trips"].get<int>(),
                           plural_trips(e["trips"].get<int>()),
                           e["arrival"].get<std::string>(), e["walking"].get<std::string>());
      }
    } else {
      out << "oracle: earliest arrival " << doc["oracle"]["earliest_arrival"].get<std::string>() << '\n';
    }
  }
  return kExitOk;
}

struct BenchOptions {
  std::string net;
  std::size_t queries = 1000;
  std::uint64_t seed = 1;
  std::vector<std::string> algorithms{"raptor"};
  std::string pruning = "both";
  std::size_t warmup = 10;
  int max_rounds = 16;
  int threads = 1;
  std::string out;
};

int cmd_bench(const BenchOptions& o, std::ostream& out) {
  const auto tt = load_network(o.net);
  bench::BenchConfig config;
  config.query_count = o.queries;
  config.seed = o.seed;
  config.algorithms.clear();
  for (const auto& a : o.algorithms) config.algorithms.push_back(bench::parse_algorithm(a));
  config.pruning = bench::parse_pruning_modes(o.pruning);
  config.warmup_queries = o.warmup;
  config.max_rounds = o.max_rounds;
  config.threads = o.threads;
  config.output = o.out;
  const auto report = bench::run_bench(tt, config);
  bench::write_report(report, tt);
  for (const auto& a : report.aggregates) {
    out << fmt::format("{:<9}{:<6} mean {:>12.0f} ns  median {:>12.0f} ns  p95 {:>12.0f} ns  examined {:>10.1f}\n",
                       to_string(a.algorithm), routing::to_string(a.pruning), a.mean_ns, a.median_ns, a.p95_ns,
                       a.mean_examined);
  }
  bool ok = true;
  for (const auto& s : report.speedups) {
    out << fmt::format("{:<9}speedup wall {:.1f}%  counters {:.1f}%  hashes {}\n", to_string(s.algorithm), s.wall_pct,
                       s.counter_pct, s.hashes_match ? "equal" : "DIFFER");
    ok = ok && s.hashes_match && s.counters_balance;
  }
  out << "report " << o.out << '\n';
  return ok ? kExitOk : kExitDataError;
}

int cmd_stats(const std::string& net, std::ostream& out) {
  print_stats(bench::network_stats(load_network(net)), out);
  return kExitOk;
}

struct GenOptions {
  ingest::SyntheticSpec spec;
  bool unsorted = false;
  std::string out;
};

int cmd_gen(const GenOptions& o, std::ostream& out) {
  Timetable tt;
  try {
    tt = ingest::generate_synthetic(o.spec);
  } catch (const GenerationError& e) {
    throw UsageError(e.what());
  }
  if (!o.unsorted) tt = tt.with_transfer_graph(ingest::sort_edges(tt.transfer_graph()).graph);
  ingest::write_native(tt, std::filesystem::path(o.out));
  out << fmt::format("wrote {} ({} stops, {} routes, {} trips, {} edges{})\n", o.out, tt.stop_count(),
                     tt.route_count(), tt.trip_count(), tt.transfer_graph().edge_count(),
                     o.unsorted ? ", unsorted" : "");
  return kExitOk;
}

struct VerifyOptions {
  std::string net;
  std::size_t queries = 50;
  std::uint64_t seed = 1;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
  auto tt = load_network(o.net);
  if (!tt.transfer_graph().sorted()) tt = tt.with_transfer_graph(ingest::sort_edges(tt.transfer_graph()).graph);
  if (tt.stop_count() == 0) throw IngestError("network has no stops");
  const bool pareto_feasible = tt.stop_count() <= oracle::kOracleMaxStops;
  const int mc_rounds = oracle::kOracleMaxTrips;

  std::mt19937_64 rng(o.seed);
  Time first, last = Time::from_seconds(0);
  for (const auto& trip : tt.trips()) {
    first = std::min(first, trip.events.front().departure);
    last = std::max(last, trip.events.back().departure);
  }
  if (first.is_infinite()) first = last;

  bool identity = true;
  bool agreement = true;
  for (std::size_t i = 0; i < o.queries; ++i) {
    routing::Query q;
    q.source = StopId(static_cast<StopId::rep>(rng() % tt.stop_count()));
    q.target = StopId(static_cast<StopId::rep>(rng() % tt.stop_count()));
    q.departure = Time::from_seconds(first.seconds() + static_cast<std::int64_t>(rng() % (last.seconds() - first.seconds() + 1)));
    q.max_rounds = 64;
    q.pruning = Pruning::kOff;
    const auto off = routing::query(tt, q);
    q.pruning = Pruning::kEarly;
    const auto early = routing::query(tt, q);
    identity = identity && off.entries == early.entries &&
               early.counters.edges_examined + early.counters.edges_pruned == off.counters.edges_examined;
    const Time best = off.entries.empty() ? Time() : off.entries.back().arrival;
    agreement = agreement && best == oracle::earliest_arrival_oracle(tt, q.source, q.target, q.departure);

    q.max_rounds = mc_rounds;
    q.pruning = Pruning::kOff;
    const auto mc_off = routing::mc_query(tt, q);
    q.pruning = Pruning::kEarly;
    const auto mc_early = routing::mc_query(tt, q);
    identity = identity && mc_off.entries == mc_early.entries;
    if (pareto_feasible) {
      const auto expected = oracle::pareto_oracle(tt, q.source, q.target, q.departure, mc_rounds);
      bool same = expected.size() == mc_off.entries.size();
      for (std::size_t k = 0; same && k < expected.size(); ++k) {
        const auto& e = mc_off.entries[k];
        same = e.arrival == expected[k].arrival && e.walking == expected[k].walking && e.trips == expected[k].trips;
      }
      agreement = agreement && same;
    }
    if (!identity || !agreement) log().warn("verify: query {} ({} -> {}) failed", i, tt.stop(q.source).id, tt.stop(q.target).id);
  }
  out << fmt::format("pruning-identity: {}, oracle-agreement: {}\n", identity ? "PASS" : "FAIL",
                     agreement ? "PASS" : "FAIL");
  if (!pareto_feasible) {
    out << fmt::format("(multicriteria oracle skipped: {} stops exceed the limit of {})\n", tt.stop_count(),
                       oracle::kOracleMaxStops);
  }
  return identity && agreement ? kExitOk : kExitDataError;
}

}  // namespace

Timetable load_network(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError(fmt::format("cannot open {}", path.string()));
  char magic[4] = {};
  in.read(magic, 4);
  in.clear();
  in.seekg(0);
  Timetable tt;
  if (std::string_view(magic, 4) == "TPRN") {
    tt = ingest::read_native(in);
  } else {
    // text fixtures carry no sorted flag; they are sorted on load
    tt = ingest::read_text(in);
    tt = tt.with_transfer_graph(ingest::sort_edges(tt.transfer_graph()).graph);
  }
  if (const auto violations = validate(tt); !violations.empty()) {
    const auto& v = violations.front();
    throw FormatError(fmt::format("{}: {} at {}: {} ({} problem(s) in total)", path.string(), to_string(v.kind),
                                  v.location, v.detail, violations.size()));
  }
  return tt;
}

std::vector<std::string> near_matches(const Timetable& tt, const std::string& query, std::size_t limit) {
  const auto q = lower(query);
  std::vector<std::pair<std::size_t, std::string>> scored;
  const auto consider = [&](const std::string& candidate) {
    const auto c = lower(candidate);
    std::size_t score = edit_distance(q, c);
    if (!q.empty() && c.find(q) != std::string::npos) score = std::min<std::size_t>(score, 1);
    if (score <= std::max<std::size_t>(2, q.size() / 3)) scored.emplace_back(score, candidate);
  };
  for (const auto& s : tt.stops()) {
    consider(s.id);
    if (s.name != s.id) consider(s.name);
  }
  std::ranges::sort(scored);
  std::vector<std::string> out;
  for (const auto& [score, name] : scored) {
    if (std::ranges::find(out, name) == out.end()) out.push_back(name);
    if (out.size() == limit) break;
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Timetable routing with Early Pruning of transfer edges", "transit_prune"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "transit_prune 0.1.0");

  BuildOptions build;
  auto* build_cmd = app.add_subcommand("build", "Ingest a network, close the transfer graph, sort edges, write native");
  auto* gtfs_opt = build_cmd->add_option("--gtfs", build.gtfs, "GTFS directory")->check(CLI::ExistingDirectory);
  auto* native_opt = build_cmd->add_option("--native", build.native, "Native or text network file")->check(CLI::ExistingFile);
  gtfs_opt->excludes(native_opt);
  build_cmd->add_option("--threshold", build.threshold, "Transitive closure bound in seconds")->capture_default_str();
  build_cmd->add_option("--walk-speed", build.walk_speed, "Walking speed in m/s")->capture_default_str();
  build_cmd->add_option("--radius", build.radius, "Footpath radius in meters (GTFS without transfers.txt)")
      ->capture_default_str();
  build_cmd->add_option("--out", build.out, "Output native file")->required();

  QueryOptions query;
  auto* query_cmd = app.add_subcommand("query", "Answer one journey query");
  query_cmd->add_option("--net", query.net, "Network file")->required();
  query_cmd->add_option("--from", query.from, "Source stop id or name")->required();
  query_cmd->add_option("--to", query.to, "Target stop id or name")->required();
  query_cmd->add_option("--depart", query.depart, "Departure time HH:MM:SS")->required();
  query_cmd->add_flag("--mc", query.mc, "Three criteria: arrival, trips, walking");
  query_cmd->add_option("--pruning", query.pruning, "off or early")
      ->check(CLI::IsMember({"off", "early"}))
      ->capture_default_str();
  query_cmd->add_option("--max-rounds", query.max_rounds, "Trip limit")->check(CLI::Range(1, 64))->capture_default_str();
  query_cmd->add_flag("--json", query.json, "Machine-readable output");
  query_cmd->add_flag("--legs", query.legs, "List the legs of every journey");
  query_cmd->add_flag("--oracle", query.oracle)->group("");

  BenchOptions bench_opts;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark pruning Off against Early on random queries");
  bench_cmd->add_option("--net", bench_opts.net, "Network file")->required();
  bench_cmd->add_option("--queries", bench_opts.queries, "Number of queries")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--seed", bench_opts.seed, "Query seed")->capture_default_str();
  bench_cmd->add_option("--algorithms", bench_opts.algorithms, "raptor and/or mcraptor")
      ->delimiter(',')
      ->check(CLI::IsMember({"raptor", "mcraptor"}));
  bench_cmd->add_option("--pruning", bench_opts.pruning, "off, early or both")
      ->check(CLI::IsMember({"off", "early", "both"}))
      ->capture_default_str();
  bench_cmd->add_option("--warmup", bench_opts.warmup, "Unrecorded warm-up queries")->capture_default_str();
  bench_cmd->add_option("--max-rounds", bench_opts.max_rounds, "Trip limit")->check(CLI::Range(1, 64))->capture_default_str();
  bench_cmd->add_option("--threads", bench_opts.threads, "Shard queries over threads (wall times not comparable)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--out", bench_opts.out, "CSV report path (sidecar JSON next to it)")->required();

  std::string stats_net;
  auto* stats_cmd = app.add_subcommand("stats", "Print network statistics");
  stats_cmd->add_option("--net", stats_net, "Network file")->required();

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic network");
  gen_cmd->add_option("--stops", gen.spec.stop_count, "Stop count")->capture_default_str();
  gen_cmd->add_option("--routes", gen.spec.route_count, "Route count")->capture_default_str();
  gen_cmd->add_option("--trips", gen.spec.trips_per_route, "Trips per route")->capture_default_str();
  gen_cmd->add_option("--density", gen.spec.target_density, "Transfer graph density")->capture_default_str();
  gen_cmd->add_option("--seed", gen.spec.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_flag("--unsorted", gen.unsorted, "Skip edge sorting");
  gen_cmd->add_option("--out", gen.out, "Output native file")->required();

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check pruning identity and oracle agreement on random queries");
  verify_cmd->add_option("--net", verify.net, "Network file")->required();
  verify_cmd->add_option("--queries", verify.queries, "Number of queries")->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed, "Query seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }
  if (build_cmd->parsed() && build.gtfs.empty() && build.native.empty()) {
    err << "build: one of --gtfs or --native is required\n";
    return kExitUsageError;
  }

  try {
    if (build_cmd->parsed()) return cmd_build(build, out);
    if (query_cmd->parsed()) return cmd_query(query, out);
    if (bench_cmd->parsed()) return cmd_bench(bench_opts, out);
    if (stats_cmd->parsed()) return cmd_stats(stats_net, out);
    if (gen_cmd->parsed()) return cmd_gen(gen, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const QueryError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const OracleScaleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsageError;
}

}  // namespace transit::cli
