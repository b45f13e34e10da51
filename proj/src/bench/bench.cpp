#include "transit/bench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "transit/error.hpp"
#include "transit/ingest/graph_kernels.hpp"
#include "transit/ingest/synthetic.hpp"
#include "transit/log.hpp"

namespace transit::bench {

namespace {

using routing::Pruning;

class Fnv1a {
 public:
  void add(std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= (value >> (8 * i)) & 0xffU;
      hash_ *= 0x100000001b3ULL;
    }
  }
  void add(std::string_view text) {
    for (const unsigned char c : text) {
      hash_ ^= c;
      hash_ *= 0x100000001b3ULL;
    }
  }
  [[nodiscard]] std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

void add_legs(Fnv1a& h, const Journey& journey) {
  h.add(journey.legs.size());
  for (const auto& leg : journey.legs) {
    if (const auto* t = std::get_if<TripLeg>(&leg)) {
      h.add(std::uint64_t{1});
      h.add(t->trip.value());
      h.add(t->board_position);
      h.add(t->alight_position);
    } else {
      const auto& w = std::get<TransferLeg>(leg);
      h.add(std::uint64_t{2});
      h.add(w.from.value());
      h.add(w.to.value());
      h.add(w.duration.seconds());
    }
  }
}

std::vector<routing::Query> make_queries(const Timetable& tt, std::size_t count, std::mt19937_64& rng,
                                         int max_rounds) {
  Time first;
  Time last = Time::from_seconds(0);
  for (const auto& trip : tt.trips()) {
    for (const auto& ev : trip.events) {
      first = std::min(first, ev.departure);
      last = std::max(last, ev.departure);
    }
  }
  if (first.is_infinite()) first = last;
  const auto span = static_cast<std::uint64_t>(last.seconds() - first.seconds()) + 1;
  std::vector<routing::Query> out(count);
  for (auto& q : out) {
    q.source = StopId(static_cast<StopId::rep>(rng() % tt.stop_count()));
    q.target = StopId(static_cast<StopId::rep>(rng() % tt.stop_count()));
    q.departure = Time::from_seconds(first.seconds() + static_cast<std::int64_t>(rng() % span));
    q.max_rounds = max_rounds;
  }
  return out;
}

QueryRow run_one(const Timetable& tt, Algorithm algorithm, routing::Query q, Pruning pruning) {
  q.pruning = pruning;
  QueryRow row{algorithm, pruning, q.source, q.target, q.departure};
  const auto start = std::chrono::steady_clock::now();
  routing::Counters counters;
  if (algorithm == Algorithm::kRaptor) {
    const auto result = routing::query(tt, q);
    row.wall_ns = static_cast<std::uint64_t>((std::chrono::steady_clock::now() - start).count());
    counters = result.counters;
    row.result_hash = result_hash(result);
  } else {
    const auto result = routing::mc_query(tt, q);
    row.wall_ns = static_cast<std::uint64_t>((std::chrono::steady_clock::now() - start).count());
    counters = result.counters;
    row.result_hash = result_hash(result);
  }
  row.edges_examined = counters.edges_examined;
  row.edges_relaxed = counters.edges_relaxed;
  row.edges_pruned = counters.edges_pruned;
  return row;
}

std::vector<Pruning> modes_of(PruningModes modes) {
  switch (modes) {
    case PruningModes::kOff:
      return {Pruning::kOff};
    case PruningModes::kEarly:
      return {Pruning::kEarly};
    case PruningModes::kBoth:
      break;
  }
  return {Pruning::kOff, Pruning::kEarly};
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0;
  std::ranges::sort(values);
  // nearest-rank
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

Aggregate aggregate(const std::vector<QueryRow>& rows, Algorithm algorithm, Pruning pruning) {
  Aggregate a{algorithm, pruning};
  std::vector<double> times;
  double examined = 0, relaxed = 0, pruned = 0;
  for (const auto& r : rows) {
    if (r.algorithm != algorithm || r.pruning != pruning) continue;
    times.push_back(static_cast<double>(r.wall_ns));
    examined += static_cast<double>(r.edges_examined);
    relaxed += static_cast<double>(r.edges_relaxed);
    pruned += static_cast<double>(r.edges_pruned);
  }
  a.queries = times.size();
  if (times.empty()) return a;
  const auto n = static_cast<double>(times.size());
  a.mean_ns = std::accumulate(times.begin(), times.end(), 0.0) / n;
  a.median_ns = percentile(times, 0.5);
  a.p95_ns = percentile(times, 0.95);
  a.mean_examined = examined / n;
  a.mean_relaxed = relaxed / n;
  a.mean_pruned = pruned / n;
  return a;
}

double speedup_pct(double off, double early) { return off > 0 ? 100.0 * (1.0 - early / off) : 0.0; }

double two_sided_p(double r, std::size_t n) {
  if (std::abs(r) >= 1.0) return 0.0;
  const double df = static_cast<double>(n - 2);
  const double t = r * std::sqrt(df / (1.0 - r * r));
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

std::string wall(bool include, double value) { return include ? fmt::format("{:.1f}", value) : "-"; }

}  // namespace

std::string_view to_string(Algorithm algorithm) { return algorithm == Algorithm::kRaptor ? "raptor" : "mcraptor"; }

std::string_view to_string(PruningModes modes) {
  switch (modes) {
    case PruningModes::kOff:
      return "off";
    case PruningModes::kEarly:
      return "early";
    case PruningModes::kBoth:
      break;
  }
  return "both";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "raptor") return Algorithm::kRaptor;
  if (text == "mcraptor") return Algorithm::kMcRaptor;
  throw QueryError(fmt::format("unknown algorithm '{}' (raptor, mcraptor)", text));
}

PruningModes parse_pruning_modes(std::string_view text) {
  if (text == "off") return PruningModes::kOff;
  if (text == "early") return PruningModes::kEarly;
  if (text == "both") return PruningModes::kBoth;
  throw QueryError(fmt::format("unknown pruning mode '{}' (off, early, both)", text));
}

void BenchConfig::check() const {
  if (query_count == 0) throw PreconditionError("query_count must be at least 1");
  if (algorithms.empty()) throw PreconditionError("no algorithm selected");
  if (max_rounds < 1) throw PreconditionError("max_rounds must be at least 1");
  if (threads < 1) throw PreconditionError("threads must be at least 1");
}

std::uint64_t result_hash(const routing::ParetoResult& result) {
  Fnv1a h;
  h.add(result.entries.size());
  for (const auto& e : result.entries) {
    h.add(static_cast<std::uint64_t>(e.num_trips));
    h.add(e.arrival.seconds());
    h.add(e.journey.transfer_duration_total.seconds());
    add_legs(h, e.journey);
  }
  return h.value();
}

std::uint64_t result_hash(const routing::McResult& result) {
  Fnv1a h;
  h.add(result.entries.size());
  for (const auto& e : result.entries) {
    h.add(static_cast<std::uint64_t>(e.trips));
    h.add(e.arrival.seconds());
    h.add(e.walking.seconds());
    add_legs(h, e.journey);
  }
  return h.value();
}

NetworkStats network_stats(const Timetable& tt) {
  NetworkStats s;
  s.stops = tt.stop_count();
  s.routes = tt.route_count();
  s.trips = tt.trip_count();
  s.stop_events = tt.stop_event_count();
  s.vertices = tt.transfer_graph().vertex_count();
  s.edges = tt.transfer_graph().edge_count();
  if (s.vertices >= 2) s.density = density(tt.transfer_graph());
  s.sorting_ns = static_cast<std::uint64_t>(ingest::sort_edges(tt.transfer_graph()).elapsed.count());
  return s;
}

BenchReport run_bench(const Timetable& tt, const BenchConfig& config) {
  config.check();
  const auto modes = modes_of(config.pruning);
  if (std::ranges::find(modes, Pruning::kEarly) != modes.end() && !tt.transfer_graph().sorted()) {
    throw PreconditionError("Early pruning needs a transfer graph with sorted edges");
  }
  if (tt.stop_count() == 0) throw PreconditionError("network has no stops");

  BenchReport report;
  report.config = config;
  report.stats = network_stats(tt);

  std::mt19937_64 rng(config.seed);
  const auto queries = make_queries(tt, config.query_count, rng, config.max_rounds);
  const auto warmup = make_queries(tt, config.warmup_queries, rng, config.max_rounds);
  for (const auto& q : warmup) {
    for (const auto a : config.algorithms) {
      for (const auto m : modes) (void)run_one(tt, a, q, m);
    }
  }

  const std::size_t per_query = config.algorithms.size() * modes.size();
  report.rows.resize(queries.size() * per_query);
  const auto run_query = [&](std::size_t i) {
    std::size_t slot = i * per_query;
    for (const auto a : config.algorithms) {
      for (const auto m : modes) report.rows[slot++] = run_one(tt, a, queries[i], m);
    }
  };
  const auto n = static_cast<std::int64_t>(queries.size());
  if (config.threads > 1) {
    log().info("bench: sharding {} queries over {} threads; wall times are not comparable", n, config.threads);
#pragma omp parallel for num_threads(config.threads) schedule(dynamic, 4)
    for (std::int64_t i = 0; i < n; ++i) run_query(static_cast<std::size_t>(i));
  } else {
    for (std::int64_t i = 0; i < n; ++i) run_query(static_cast<std::size_t>(i));
  }

  for (const auto a : config.algorithms) {
    for (const auto m : modes) report.aggregates.push_back(aggregate(report.rows, a, m));
    if (modes.size() == 2) {
      const auto& off = report.aggregates[report.aggregates.size() - 2];
      const auto& early = report.aggregates.back();
      Speedup s{a, speedup_pct(off.mean_ns, early.mean_ns), speedup_pct(off.mean_examined, early.mean_examined)};
      for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
        const auto& x = report.rows[i];
        const auto& y = report.rows[i + 1];
        if (x.algorithm != a || y.algorithm != a || x.pruning != Pruning::kOff || y.pruning != Pruning::kEarly) continue;
        s.hashes_match = s.hashes_match && x.result_hash == y.result_hash;
        s.counters_balance = s.counters_balance && y.edges_examined + y.edges_pruned == x.edges_examined;
      }
      if (!s.hashes_match) log().error("bench: {} results differ between pruning modes", to_string(a));
      report.speedups.push_back(s);
    }
  }
  return report;
}

void write_csv(const BenchReport& report, const Timetable& tt, std::ostream& out, bool include_wall) {
  out << "algorithm,pruning,source,target,departure,wall_time_ns,edges_examined,edges_relaxed,edges_pruned,"
         "result_hash\n";
  for (const auto& r : report.rows) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{:016x}\n", to_string(r.algorithm), routing::to_string(r.pruning),
                       tt.stop(r.source).id, tt.stop(r.target).id, format_time(r.departure),
                       include_wall ? std::to_string(r.wall_ns) : "-", r.edges_examined, r.edges_relaxed,
                       r.edges_pruned, r.result_hash);
  }
  out << "# aggregate,algorithm,pruning,queries,mean_ns,median_ns,p95_ns,mean_examined,mean_relaxed,mean_pruned\n";
  for (const auto& a : report.aggregates) {
    out << fmt::format("# aggregate,{},{},{},{},{},{},{:.3f},{:.3f},{:.3f}\n", to_string(a.algorithm),
                       routing::to_string(a.pruning), a.queries, wall(include_wall, a.mean_ns),
                       wall(include_wall, a.median_ns), wall(include_wall, a.p95_ns), a.mean_examined, a.mean_relaxed,
                       a.mean_pruned);
  }
  if (!report.speedups.empty()) {
    out << "# speedup,algorithm,wall_pct,counter_pct,hashes_match,counters_balance\n";
    for (const auto& s : report.speedups) {
      out << fmt::format("# speedup,{},{},{:.3f},{},{}\n", to_string(s.algorithm),
                         include_wall ? fmt::format("{:.3f}", s.wall_pct) : "-", s.counter_pct, s.hashes_match,
                         s.counters_balance);
    }
  }
  const auto& st = report.stats;
  out << "# network,stops,routes,trips,stop_events,vertices,edges,density,sorting_ns\n";
  out << fmt::format("# network,{},{},{},{},{},{},{},{}\n", st.stops, st.routes, st.trips, st.stop_events, st.vertices,
                     st.edges, st.density ? fmt::format("{:.6e}", *st.density) : "-",
                     include_wall ? std::to_string(st.sorting_ns) : "-");
}

void write_sidecar_json(const BenchReport& report, std::ostream& out) {
  const auto& c = report.config;
  nlohmann::ordered_json j;
  std::vector<std::string> algorithms;
  for (const auto a : c.algorithms) algorithms.emplace_back(to_string(a));
  j["config"] = {{"query_count", c.query_count},
                 {"seed", c.seed},
                 {"algorithms", algorithms},
                 {"pruning", std::string(to_string(c.pruning))},
                 {"warmup_queries", c.warmup_queries},
                 {"max_rounds", c.max_rounds},
                 {"threads", c.threads},
                 {"output", c.output.string()}};
  j["query_distribution"] = {{"stops", "uniform"},
                             {"departure", "uniform over the span of departure events"},
                             {"uniform_over_stops", true}};
  j["execution_order"] = c.threads > 1 ? "sharded (wall times not comparable)" : "interleaved off/early per query";
  j["determinism_excludes"] = {"wall_time_ns", "mean_ns", "median_ns", "p95_ns", "wall_pct", "sorting_ns"};
  out << j.dump(2) << '\n';
}

void write_report(const BenchReport& report, const Timetable& tt) {
  const auto& path = report.config.output;
  std::ofstream csv(path, std::ios::binary);
  if (!csv) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  write_csv(report, tt, csv);
  auto sidecar = path;
  sidecar += ".json";
  std::ofstream json(sidecar, std::ios::binary);
  if (!json) throw std::runtime_error(fmt::format("cannot write {}", sidecar.string()));
  write_sidecar_json(report, json);
  if (!csv.flush() || !json.flush()) throw std::runtime_error("bench report write failed");
}

std::string determinism_digest(const BenchReport& report, const Timetable& tt) {
  std::ostringstream out;
  write_csv(report, tt, out, false);
  Fnv1a h;
  h.add(out.str());
  return fmt::format("{:016x}", h.value());
}

Correlation pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw PreconditionError("pearson: samples differ in length");
  if (xs.size() < 3) throw PreconditionError("pearson: need at least 3 pairs");
  const auto n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0 || syy == 0) throw UndefinedCorrelation("pearson: zero variance");
  Correlation c;
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  c.p = two_sided_p(c.r, xs.size());
  return c;
}

StudyReport speedup_density_study(const std::vector<ingest::SyntheticSpec>& specs, const BenchConfig& config) {
  std::set<double> levels;
  for (const auto& s : specs) levels.insert(s.target_density);
  if (levels.size() < 3) throw PreconditionError("density study needs at least three density levels");
  auto bench_config = config;
  bench_config.pruning = PruningModes::kBoth;
  StudyReport report;
  std::vector<double> xs, ys;
  for (const auto& spec : specs) {
    const auto raw = ingest::generate_synthetic(spec);
    const auto tt = raw.with_transfer_graph(ingest::sort_edges(raw.transfer_graph()).graph);
    const auto bench = run_bench(tt, bench_config);
    StudyPoint p{spec, density(tt.transfer_graph()), bench.speedups.front().counter_pct, bench.speedups.front().wall_pct};
    log().info("study: density {:.4f} counter speedup {:.2f}%", p.density, p.counter_pct);
    xs.push_back(p.density);
    ys.push_back(p.counter_pct);
    report.points.push_back(p);
  }
  report.correlation = pearson(xs, ys);
  return report;
}

}  // namespace transit::bench
