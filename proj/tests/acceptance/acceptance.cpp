// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include <fmt/format.h>

#include "support.hpp"
#include "transit/bench/bench.hpp"
#include "transit/ingest/graph_kernels.hpp"
#include "transit/oracle/oracle.hpp"
#include "transit/routing/mcraptor.hpp"
#include "transit/routing/raptor.hpp"

namespace {

using namespace transit;
using routing::Pruning;

constexpr std::uint64_t kCorpusNetworks = 200;
constexpr int kQueriesPerNetwork = 20;

struct Outcome {
  bool pass;
  std::string detail;
};

routing::Query with_mode(routing::Query q, Pruning p) {
  q.pruning = p;
  return q;
}

Outcome pruning_identity() {
  std::size_t compared = 0;
  std::size_t nonempty = 0;
  for (std::uint64_t n = 0; n < kCorpusNetworks; ++n) {
    const auto tt = testing::corpus_network(n);
    for (const auto& q : testing::corpus_queries(tt, n + 1, kQueriesPerNetwork, 16)) {
      const auto off = routing::query(tt, with_mode(q, Pruning::kOff));
      const auto early = routing::query(tt, with_mode(q, Pruning::kEarly));
      const auto mc_off = routing::mc_query(tt, with_mode(q, Pruning::kOff));
      const auto mc_early = routing::mc_query(tt, with_mode(q, Pruning::kEarly));
      if (off.entries != early.entries || mc_off.entries != mc_early.entries) {
        return {false, fmt::format("network {} {} -> {}: Off and Early differ", n, q.source.value(), q.target.value())};
      }
      compared += 2;
      nonempty += !off.entries.empty();
    }
  }
  return {true, fmt::format("{} networks, {} result pairs equal ({} queries with a journey)", kCorpusNetworks,
                            compared, nonempty)};
}

Outcome oracle_agreement() {
  std::size_t ea = 0;
  std::size_t pareto = 0;
  for (std::uint64_t n = 0; n < kCorpusNetworks; ++n) {
    const auto tt = testing::corpus_network(n);
    for (const auto& q : testing::corpus_queries(tt, n + 1, kQueriesPerNetwork, oracle::kOracleMaxTrips)) {
      // earliest arrival with no practical trip limit, since the oracle has none
      auto unbounded = with_mode(q, Pruning::kEarly);
      unbounded.max_rounds = 64;
      const auto front = routing::query(tt, unbounded);
      const Time best = front.entries.empty() ? Time() : front.entries.back().arrival;
      const Time expected = oracle::earliest_arrival_oracle(tt, q.source, q.target, q.departure);
      if (best != expected) {
        return {false, fmt::format("network {} {} -> {} at {}: raptor {} oracle {}", n, q.source.value(),
                                   q.target.value(), format_time(q.departure), format_time(best),
                                   format_time(expected))};
      }
      ++ea;

      const auto mc = routing::mc_query(tt, with_mode(q, Pruning::kEarly));
      const auto points = oracle::pareto_oracle(tt, q.source, q.target, q.departure, q.max_rounds);
      bool same = points.size() == mc.entries.size();
      for (std::size_t i = 0; same && i < points.size(); ++i) {
        const auto& e = mc.entries[i];
        same = e.trips == points[i].trips && e.arrival == points[i].arrival && e.walking == points[i].walking;
      }
      if (!same) {
        return {false, fmt::format("network {} {} -> {} at {}: Pareto sets differ ({} vs {} points)", n,
                                   q.source.value(), q.target.value(), format_time(q.departure), mc.entries.size(),
                                   points.size())};
      }
      ++pareto;
    }
  }
  return {true, fmt::format("{} earliest-arrival and {} Pareto queries agree", ea, pareto)};
}

// Off/Early rows appear in adjacent pairs for each algorithm.
bool counters_balance(const bench::BenchReport& report, std::size_t& pairs) {
  for (std::size_t i = 0; i + 1 < report.rows.size(); i += 2) {
    const auto& off = report.rows[i];
    const auto& early = report.rows[i + 1];
    if (off.pruning != Pruning::kOff || early.pruning != Pruning::kEarly) return false;
    if (early.edges_examined + early.edges_pruned != off.edges_examined) return false;
    ++pairs;
  }
  return true;
}

Outcome counter_accounting() {
  bench::BenchConfig config;
  config.query_count = 50;
  config.warmup_queries = 0;
  config.algorithms = {bench::Algorithm::kRaptor, bench::Algorithm::kMcRaptor};
  config.max_rounds = 8;
  std::size_t pairs = 0;
  for (std::uint64_t n = 0; n < 40; ++n) {
    const auto tt = testing::corpus_network(n);
    config.seed = n + 100;
    const auto report = bench::run_bench(tt, config);
    if (!counters_balance(report, pairs)) return {false, fmt::format("imbalance on corpus network {}", n)};
  }
  return {true, fmt::format("{} paired queries balance", pairs)};
}

ingest::SyntheticSpec study_spec(double density, std::uint64_t seed) {
  ingest::SyntheticSpec spec;
  spec.stop_count = 500;
  spec.route_count = 60;
  spec.trips_per_route = 20;
  spec.target_density = density;
  spec.seed = seed;
  return spec;
}

Outcome density_direction() {
  const std::vector<double> densities{0.01, 0.05, 0.1, 0.2, 0.3};
  std::vector<ingest::SyntheticSpec> specs;
  for (const double d : densities) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) specs.push_back(study_spec(d, seed));
  }
  bench::BenchConfig config;
  config.query_count = 300;
  config.warmup_queries = 0;
  config.seed = 42;
  const auto study = bench::speedup_density_study(specs, config);

  std::map<double, std::pair<double, int>> by_level;
  for (const auto& p : study.points) {
    auto& [sum, count] = by_level[p.spec.target_density];
    sum += p.counter_pct;
    ++count;
  }
  std::vector<double> means;
  for (const auto& [d, acc] : by_level) means.push_back(acc.first / acc.second);
  bool increasing = true;
  for (std::size_t i = 1; i < means.size(); ++i) increasing = increasing && means[i] > means[i - 1];
  std::string trend;
  for (std::size_t i = 0; i < means.size(); ++i) trend += fmt::format("{}{:.1f}%", i ? " < " : "", means[i]);

  // dense gate: average out-degree >= 100, 1000 queries
  auto dense = ingest::generate_synthetic(study_spec(0.25, 7));
  dense = dense.with_transfer_graph(ingest::sort_edges(dense.transfer_graph()).graph);
  const double degree = static_cast<double>(dense.transfer_graph().edge_count()) / static_cast<double>(dense.stop_count());
  bench::BenchConfig gate;
  gate.query_count = 1000;
  gate.warmup_queries = 0;
  gate.seed = 43;
  const auto report = bench::run_bench(dense, gate);
  std::uint64_t off = 0, early = 0;
  for (const auto& row : report.rows) (row.pruning == Pruning::kOff ? off : early) += row.edges_examined;
  const double ratio = static_cast<double>(early) / static_cast<double>(off);

  const bool pass = increasing && study.correlation.r > 0.3 && degree >= 100 && ratio <= 0.8;
  return {pass, fmt::format("counter speedup by density {}; r = {:.3f}; dense gate (degree {:.0f}) examined "
                            "Early/Off = {:.3f}",
                            trend, study.correlation.r, degree, ratio)};
}

Outcome published_pearson() {
  // published (transfer density, wall-time speedup %) pairs, densities in units of 1e-5
  const std::vector<double> density{0.88, 8.00, 0.047, 0.58, 0.88, 8.00, 0.06, 0.411, 0.88, 8.00, 0.06, 0.411};
  const std::vector<double> speedup{21.7, 33.9, 11.1, 13.6, 45.1, 56.9, 2.4, 3.1, 6.6, 16.0, 1.6, 6.1};
  const auto c = bench::pearson(density, speedup);
  const bool pass = std::abs(c.r - 0.62) <= 0.01 && std::abs(c.p - 0.033) <= 0.005;
  return {pass, fmt::format("r = {:.4f}, p = {:.4f}", c.r, c.p)};
}

Outcome sorting_cost() {
  constexpr std::size_t kVertices = 25'000;
  constexpr std::size_t kDegree = 120;
  std::mt19937_64 rng(6);
  std::vector<std::vector<TransferEdge>> adjacency(kVertices);
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t u = 0; u < kVertices; ++u) {
    seen.clear();
    while (adjacency[u].size() < kDegree) {
      const auto v = rng() % kVertices;
      if (v == u || !seen.insert(v).second) continue;
      adjacency[u].push_back(
          {VertexId(static_cast<VertexId::rep>(v)), Duration(static_cast<std::uint32_t>(1 + rng() % 1800))});
    }
  }
  const auto graph = TransferGraph::from_adjacency(adjacency);
  const auto start = std::chrono::steady_clock::now();
  const auto once = ingest::sort_edges(graph);
  const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto twice = ingest::sort_edges(once.graph);
  const bool idempotent = twice.graph == once.graph;
  const bool pass = graph.edge_count() >= 3'000'000 && elapsed < 5.0 && idempotent && once.graph.sorted();
  return {pass, fmt::format("{} edges sorted in {:.0f} ms (kernel {:.0f} ms), idempotent: {}", graph.edge_count(),
                            elapsed * 1e3, static_cast<double>(once.elapsed.count()) / 1e6, idempotent)};
}

Outcome bench_determinism() {
  const auto tt = testing::with_sorted_edges(ingest::generate_synthetic(study_spec(0.1, 11)));
  bench::BenchConfig config;
  config.query_count = 200;
  config.seed = 2024;
  config.algorithms = {bench::Algorithm::kRaptor, bench::Algorithm::kMcRaptor};
  config.max_rounds = 6;
  const auto a = bench::determinism_digest(bench::run_bench(tt, config), tt);
  const auto b = bench::determinism_digest(bench::run_bench(tt, config), tt);
  config.seed = 2025;
  const auto other = bench::determinism_digest(bench::run_bench(tt, config), tt);
  return {a == b && a != other, fmt::format("digest {} twice; another seed gives {}", a, other)};
}

Outcome worked_example() {
  const auto tt = testing::with_sorted_edges(testing::fixture("early_prune.txt"));
  routing::Query q;
  q.source = testing::stop_named(tt, "s");
  q.target = testing::stop_named(tt, "t");
  q.departure = testing::hms("13:45:00");
  q.pruning = Pruning::kEarly;
  const auto state = routing::run(tt, q);
  const auto& c = state.counters;
  const bool pass = c.edges_pruned == 2 && c.edges_relaxed == 1 && state.best(q.target) == testing::hms("14:00:00");
  return {pass, fmt::format("pruned {}, relaxed {}, target {}", c.edges_pruned, c.edges_relaxed,
                            format_time(state.best(q.target)))};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"pruning identity", pruning_identity},
      {"oracle agreement", oracle_agreement},
      {"counter accounting", counter_accounting},
      {"density-speedup direction", density_direction},
      {"published Pearson correlation", published_pearson},
      {"edge sorting cost", sorting_cost},
      {"benchmark determinism", bench_determinism},
      {"early pruning worked example", worked_example},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    fmt::print("{} criterion {} ({}): {} [{:.1f} s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail,
               seconds);
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
