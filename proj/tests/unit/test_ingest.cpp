#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "support.hpp"
#include "transit/error.hpp"
#include "transit/ingest/config.hpp"
#include "transit/ingest/graph_kernels.hpp"
#include "transit/ingest/gtfs.hpp"
#include "transit/ingest/native_format.hpp"
#include "transit/ingest/synthetic.hpp"
#include "transit/ingest/text_format.hpp"
#include "transit/validate.hpp"

namespace transit::ingest {
namespace {

namespace fs = std::filesystem;

VertexId v(std::uint32_t i) { return VertexId(i); }

using testing::TempDir;

void write_minimal_feed(const TempDir& dir) {
  for (const auto& entry : fs::directory_iterator(testing::data_path("gtfs_minimal"))) {
    fs::copy_file(entry.path(), dir.path() / entry.path().filename());
  }
}

// ---- transitive closure -------------------------------------------------

TEST(TransitiveClosure, ChainWithinThresholdAddsShortcut) {
  const std::vector<EdgeSpec> edges{{v(0), v(1), Duration(60)}, {v(1), v(2), Duration(60)}};
  const auto closed = transitive_closure(TransferGraph::from_edges(3, edges), Duration(120));
  EXPECT_EQ(closed.edge_duration(v(0), v(2)), Duration(120));
  EXPECT_EQ(closed.edge_count(), 3u);
}

TEST(TransitiveClosure, ChainBeyondThresholdAddsNothing) {
  const std::vector<EdgeSpec> edges{{v(0), v(1), Duration(60)}, {v(1), v(2), Duration(60)}};
  const auto closed = transitive_closure(TransferGraph::from_edges(3, edges), Duration(100));
  EXPECT_FALSE(closed.edge_duration(v(0), v(2)).has_value());
  EXPECT_EQ(closed.edge_count(), 2u);
}

TransferGraph random_graph(std::uint32_t n, double p, std::uint32_t max_duration, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<EdgeSpec> edges;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      if (a != b && static_cast<double>(rng() % 10000) / 10000.0 < p) {
        edges.push_back({v(a), v(b), Duration(1 + static_cast<std::uint32_t>(rng() % max_duration))});
      }
    }
  }
  return TransferGraph::from_edges(n, edges);
}

TEST(TransitiveClosure, MatchesAllPairsShortestPaths) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::uint32_t n = 30;
    const auto g = random_graph(n, 0.08, 200, seed);
    constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max() / 4;
    std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, kInf));
    for (std::uint32_t u = 0; u < n; ++u) {
      d[u][u] = 0;
      for (const auto& e : g.out_edges(v(u))) d[u][e.target.index()] = e.duration.seconds();
    }
    for (std::uint32_t k = 0; k < n; ++k) {
      for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
    const auto closed = transitive_closure(g, Duration(300));
    std::size_t expected_edges = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const auto got = closed.edge_duration(v(i), v(j));
        if (d[i][j] <= 300) {
          ++expected_edges;
          ASSERT_TRUE(got.has_value()) << i << "->" << j;
          EXPECT_EQ(got->seconds(), d[i][j]);
        } else {
          EXPECT_FALSE(got.has_value()) << i << "->" << j;
        }
      }
    }
    EXPECT_EQ(closed.edge_count(), expected_edges);
  }
}

TEST(TransitiveClosure, IdempotentAndScheduleIndependent) {
  const auto g = random_graph(60, 0.05, 150, 99);
  const auto once = transitive_closure(g, Duration(240));
  EXPECT_EQ(transitive_closure(once, Duration(240)), once);
  EXPECT_EQ(transitive_closure_serial(g, Duration(240)), once);
}

// ---- edge sorting -----------------------------------------------------

TEST(SortEdges, SortsByDuration) {
  std::vector<std::vector<TransferEdge>> adj(4);
  adj[0] = {{v(3), Duration(540)}, {v(1), Duration(120)}, {v(2), Duration(300)}};
  const auto sorted = sort_edges(TransferGraph::from_adjacency(adj)).graph;
  EXPECT_TRUE(sorted.sorted());
  const std::vector<TransferEdge> expected{{v(1), Duration(120)}, {v(2), Duration(300)}, {v(3), Duration(540)}};
  EXPECT_TRUE(std::ranges::equal(sorted.out_edges(v(0)), expected));
}

TEST(SortEdges, TiesBrokenByTargetId) {
  std::vector<std::vector<TransferEdge>> adj(3);
  adj[0] = {{v(2), Duration(100)}, {v(1), Duration(100)}};
  const auto sorted = sort_edges(TransferGraph::from_adjacency(adj)).graph;
  const std::vector<TransferEdge> expected{{v(1), Duration(100)}, {v(2), Duration(100)}};
  EXPECT_TRUE(std::ranges::equal(sorted.out_edges(v(0)), expected));
}

TEST(SortEdges, PermutationIdempotentAndMatchesSerial) {
  const auto g = random_graph(80, 0.2, 50, 5);
  const auto sorted = sort_edges(g);
  EXPECT_TRUE(sorted.graph.is_duration_ordered());
  EXPECT_EQ(sort_edges(sorted.graph).graph, sorted.graph);
  EXPECT_EQ(sort_edges_serial(g).graph, sorted.graph);
  for (std::uint32_t u = 0; u < 80; ++u) {
    auto before = std::vector<TransferEdge>(g.out_edges(v(u)).begin(), g.out_edges(v(u)).end());
    auto after = std::vector<TransferEdge>(sorted.graph.out_edges(v(u)).begin(), sorted.graph.out_edges(v(u)).end());
    const auto key = [](const TransferEdge& e) { return std::pair(e.target.value(), e.duration.seconds()); };
    std::ranges::sort(before, {}, key);
    std::ranges::sort(after, {}, key);
    EXPECT_EQ(before, after);
  }
}

// ---- synthetic --------------------------------------------------------

TEST(Synthetic, Deterministic) {
  SyntheticSpec spec;
  spec.stop_count = 20;
  spec.target_density = 0.3;
  spec.seed = 42;
  EXPECT_EQ(generate_synthetic(spec), generate_synthetic(spec));
}

TEST(Synthetic, ZeroDensityHasNoEdges) {
  SyntheticSpec spec;
  spec.target_density = 0.0;
  EXPECT_EQ(generate_synthetic(spec).transfer_graph().edge_count(), 0u);
}

TEST(Synthetic, DensityWithinTenPercent) {
  SyntheticSpec spec;
  spec.stop_count = 20;
  spec.target_density = 0.3;
  const double d = density(generate_synthetic(spec).transfer_graph());
  EXPECT_GE(d, 0.27);
  EXPECT_LE(d, 0.33);
}

TEST(Synthetic, CorpusNetworksAreValid) {
  for (std::uint64_t i = 0; i < 40; ++i) {
    const auto spec = testing::corpus_spec(i);
    const auto tt = generate_synthetic(spec);
    EXPECT_TRUE(validate(tt).empty()) << "network " << i;
    EXPECT_NEAR(density(tt.transfer_graph()), spec.target_density, 0.1 * spec.target_density + 1e-9);
    for (const auto& r : tt.routes()) EXPECT_GE(r.stops.size(), 2u);
  }
}

TEST(Synthetic, InfeasibleSpecsRejected) {
  SyntheticSpec spec;
  spec.stop_count = 1;
  spec.target_density = 1.0;
  EXPECT_THROW((void)generate_synthetic(spec), GenerationError);
  spec = SyntheticSpec{};
  spec.target_density = 1.5;
  EXPECT_THROW((void)generate_synthetic(spec), GenerationError);
  spec = SyntheticSpec{};
  spec.route_count = 0;
  EXPECT_THROW((void)generate_synthetic(spec), GenerationError);
}

// ---- config -----------------------------------------------------------

TEST(IngestConfig, Bounds) {
  IngestConfig c;
  EXPECT_NO_THROW(c.check());
  c.walking_speed = 0;
  EXPECT_THROW(c.check(), IngestError);
  c = IngestConfig{};
  c.footpath_radius = -1;
  EXPECT_THROW(c.check(), IngestError);
  c = IngestConfig{};
  c.closure_threshold = Duration(0);
  EXPECT_THROW(c.check(), IngestError);
}

// ---- GTFS -------------------------------------------------------------

TEST(Gtfs, MinimalFeed) {
  const auto tt = load_gtfs(testing::data_path("gtfs_minimal"), IngestConfig{});
  EXPECT_EQ(tt.stop_count(), 3u);
  EXPECT_EQ(tt.route_count(), 1u);
  EXPECT_EQ(tt.trip_count(), 1u);
  EXPECT_EQ(tt.stop_event_count(), 3u);
  EXPECT_EQ(tt.trip(TripId(0)).events[1].departure, testing::hms("08:06:00"));
  EXPECT_TRUE(validate(tt).empty());
}

TEST(Gtfs, OvertakingTripsSplitIntoRoutes) {
  TempDir dir;
  write_minimal_feed(dir);
  dir.write("trips.txt", "route_id,service_id,trip_id\nR1,WD,T1\nR1,WD,T2\n");
  dir.write("stop_times.txt",
            "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n"
            "T1,08:00:00,08:00:00,A,1\nT1,08:30:00,08:30:00,B,2\nT1,08:40:00,08:40:00,C,3\n"
            "T2,08:05:00,08:05:00,A,1\nT2,08:10:00,08:10:00,B,2\nT2,08:20:00,08:20:00,C,3\n");
  const auto tt = load_gtfs(dir.path(), IngestConfig{});
  EXPECT_EQ(tt.route_count(), 2u);
  // brute force: no pair of trips within a route overtakes
  for (const auto& r : tt.routes()) {
    for (std::size_t i = 0; i < r.trips.size(); ++i) {
      for (std::size_t j = i + 1; j < r.trips.size(); ++j) {
        const auto& a = tt.trip(r.trips[i]).events;
        const auto& b = tt.trip(r.trips[j]).events;
        for (std::size_t k = 0; k < a.size(); ++k) {
          EXPECT_LE(a[k].arrival, b[k].arrival);
          EXPECT_LE(a[k].departure, b[k].departure);
        }
      }
    }
  }
}

TEST(Gtfs, FootpathsFromCoordinates) {
  TempDir dir;
  write_minimal_feed(dir);
  // 150 m apart along a meridian
  const double dlat = 150.0 / 6371000.0 * 180.0 / std::numbers::pi;
  std::ostringstream stops;
  stops.precision(12);
  stops << "stop_id,stop_name,stop_lat,stop_lon\nA,Alpha,47.0,8.0\nB,Bravo," << 47.0 + dlat << ",8.0\nC,Far,48.0,8.0\n";
  dir.write("stops.txt", stops.str());
  const auto tt = load_gtfs(dir.path(), IngestConfig{});
  EXPECT_EQ(tt.transfer_graph().edge_duration(v(0), v(1)), Duration(120));
  EXPECT_EQ(tt.transfer_graph().edge_duration(v(1), v(0)), Duration(120));
  EXPECT_EQ(tt.transfer_graph().edge_count(), 2u);
}

TEST(Gtfs, TransfersFileTakesPrecedence) {
  TempDir dir;
  write_minimal_feed(dir);
  dir.write("transfers.txt", "from_stop_id,to_stop_id,transfer_type,min_transfer_time\nA,C,2,400\nB,B,2,60\n");
  const auto tt = load_gtfs(dir.path(), IngestConfig{});
  EXPECT_EQ(tt.transfer_graph().edge_count(), 1u);
  EXPECT_EQ(tt.transfer_graph().edge_duration(v(0), v(2)), Duration(400));
}

TEST(Gtfs, MissingFileNamed) {
  TempDir dir;
  write_minimal_feed(dir);
  fs::remove(dir.path() / "stop_times.txt");
  try {
    (void)load_gtfs(dir.path(), IngestConfig{});
    FAIL();
  } catch (const IngestError& e) {
    EXPECT_NE(std::string(e.what()).find("stop_times.txt"), std::string::npos);
  }
}

TEST(Gtfs, BadRowReportsFileAndLine) {
  TempDir dir;
  write_minimal_feed(dir);
  dir.write("stop_times.txt",
            "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n"
            "T1,08:00:00,08:00:00,A,1\nT1,eight,08:06:00,B,2\n");
  try {
    (void)load_gtfs(dir.path(), IngestConfig{});
    FAIL();
  } catch (const IngestError& e) {
    EXPECT_NE(std::string(e.what()).find("stop_times.txt:3"), std::string::npos) << e.what();
  }
}

TEST(Gtfs, UndefinedStopIsReferentialError) {
  TempDir dir;
  write_minimal_feed(dir);
  dir.write("stop_times.txt",
            "trip_id,arrival_time,departure_time,stop_id,stop_sequence\n"
            "T1,08:00:00,08:00:00,A,1\nT1,08:05:00,08:06:00,Z,2\n");
  try {
    (void)load_gtfs(dir.path(), IngestConfig{});
    FAIL();
  } catch (const IngestError& e) {
    EXPECT_NE(std::string(e.what()).find("referential"), std::string::npos) << e.what();
  }
}

TEST(Gtfs, NativeRoundTrip) {
  const auto tt = load_gtfs(testing::data_path("gtfs_minimal"), IngestConfig{});
  std::stringstream buffer;
  write_native(tt, buffer);
  EXPECT_EQ(read_native(buffer), tt);
}

// ---- native / text formats -------------------------------------------

TEST(NativeFormat, RoundTripsSortedSyntheticNetwork) {
  const auto tt = testing::corpus_network(3);
  std::stringstream buffer;
  write_native(tt, buffer);
  const auto back = read_native(buffer);
  EXPECT_EQ(back, tt);
  EXPECT_TRUE(back.transfer_graph().sorted());
}

TEST(NativeFormat, RejectsBadMagicAndTruncation) {
  std::stringstream bad("XXXX0000");
  EXPECT_THROW((void)read_native(bad), FormatError);
  std::stringstream full;
  write_native(testing::fixture("trip_walk_trip.txt"), full);
  const auto bytes = full.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW((void)read_native(truncated), FormatError);
}

TEST(NativeFormat, OutputIsByteStable) {
  const auto tt = testing::corpus_network(8);
  std::stringstream a, b;
  write_native(tt, a);
  write_native(tt, b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(TextFormat, RoundTrip) {
  const auto tt = testing::fixture("trip_walk_trip.txt");
  std::stringstream out;
  write_text(tt, out);
  EXPECT_EQ(parse_text(out.str()), tt);
}

TEST(TextFormat, ErrorsCarryLineNumbers) {
  try {
    (void)parse_text("stop a\nstop b\nroute r a q\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace transit::ingest
