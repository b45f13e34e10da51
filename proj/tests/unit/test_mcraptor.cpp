#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "transit/journey.hpp"
#include "transit/oracle/oracle.hpp"
#include "transit/routing/mcraptor.hpp"

namespace transit::routing {
namespace {

using testing::fixture;
using testing::hms;
using testing::stop_named;

McLabel label(std::uint32_t arrival, std::uint32_t walking, int trips) {
  return McLabel{Time::from_seconds(arrival), Duration(walking), trips};
}

TEST(Dominance, Cases) {
  EXPECT_TRUE(dominates(label(100, 10, 1), label(100, 10, 1)));
  EXPECT_FALSE(dominates(label(100, 20, 1), label(110, 10, 1)));
  EXPECT_FALSE(dominates(label(110, 10, 1), label(100, 20, 1)));
  EXPECT_TRUE(dominates(label(100, 10, 1), label(100, 10, 2)));
  EXPECT_FALSE(dominates(label(100, 10, 2), label(100, 10, 1)));
}

TEST(Bag, DuplicatesCollapseAndDominatedRemoved) {
  Bag bag;
  EXPECT_TRUE(bag.insert(label(100, 10, 1)));
  EXPECT_FALSE(bag.insert(label(100, 10, 1)));
  EXPECT_TRUE(bag.insert(label(90, 20, 1)));
  EXPECT_EQ(bag.size(), 2u);
  EXPECT_TRUE(bag.insert(label(90, 5, 1)));
  EXPECT_EQ(bag.size(), 1u);
}

TEST(Bag, RandomInsertionsKeepAntichain) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    Bag bag;
    std::vector<McLabel> inserted;
    for (int i = 0; i < 30; ++i) {
      const auto l = label(1000 + static_cast<std::uint32_t>(rng() % 50), static_cast<std::uint32_t>(rng() % 50),
                           static_cast<int>(rng() % 4));
      inserted.push_back(l);
      bag.insert(l);
      const auto labels = bag.labels();
      for (std::size_t a = 0; a < labels.size(); ++a) {
        for (std::size_t b = 0; b < labels.size(); ++b) {
          if (a != b) {
            ASSERT_FALSE(dominates(labels[a], labels[b]));
          }
        }
      }
    }
    // the bag is exactly the set of non-dominated distinct inserted labels
    std::size_t expected = 0;
    for (std::size_t i = 0; i < inserted.size(); ++i) {
      bool dominated = false;
      bool duplicate = false;
      for (std::size_t j = 0; j < inserted.size(); ++j) {
        const auto& a = inserted[j];
        const auto& b = inserted[i];
        const bool equal = a.arrival == b.arrival && a.walking == b.walking && a.trips == b.trips;
        if (equal && j < i) duplicate = true;
        if (!equal && dominates(a, b)) dominated = true;
      }
      if (!dominated && !duplicate) ++expected;
    }
    EXPECT_EQ(bag.size(), expected);
  }
}

Query make_query(const Timetable& tt, const char* from, const char* to, Time departure,
                 Pruning pruning = Pruning::kOff) {
  Query q;
  q.source = stop_named(tt, from);
  q.target = stop_named(tt, to);
  q.departure = departure;
  q.pruning = pruning;
  return q;
}

TEST(McRaptor, TwoAlternativesBothReturned) {
  const auto tt = fixture("two_alternatives.txt");
  const auto result = mc_query(tt, make_query(tt, "s", "t", hms("07:50:00")));
  ASSERT_EQ(result.entries.size(), 2u);
  EXPECT_EQ(result.entries[0].arrival, hms("08:15:00"));
  EXPECT_EQ(result.entries[0].walking, Duration(300));
  EXPECT_EQ(result.entries[1].arrival, hms("08:30:00"));
  EXPECT_EQ(result.entries[1].walking, Duration(0));
  for (const auto& e : result.entries) {
    EXPECT_EQ(replay_arrival(tt, e.journey), e.arrival);
    EXPECT_EQ(e.journey.transfer_duration_total, e.walking);
    EXPECT_EQ(e.journey.num_trips, e.trips);
  }
}

TEST(McRaptor, EarlyPruningWorkedExample) {
  const auto tt = testing::with_sorted_edges(fixture("early_prune.txt"));
  const auto q = make_query(tt, "s", "t", hms("13:45:00"), Pruning::kEarly);
  const auto state = mc_run(tt, q, true);
  EXPECT_EQ(state.counters.edges_pruned, 2u);
  EXPECT_EQ(state.counters.edges_relaxed, 1u);
  const auto& at_a = state.best(stop_named(tt, "a")).labels();
  ASSERT_EQ(at_a.size(), 1u);
  EXPECT_EQ(at_a[0].arrival, Time::from_seconds(50220));
  EXPECT_EQ(at_a[0].walking, Duration(120));
  ASSERT_EQ(state.pruned_log.size(), 2u);
  EXPECT_EQ(state.pruned_log[0].candidate.arrival, Time::from_seconds(50400));
  EXPECT_EQ(state.pruned_log[0].candidate.walking, Duration(300));
  EXPECT_TRUE(dominates(state.pruned_log[0].dominator, state.pruned_log[0].candidate));
}

TEST(McRaptor, EqualArrivalLessWalkingIsNotPruned) {
  // the target is reached at 14:00 only after a 60 s walk; a direct ride with
  // equal arrival and no walking must survive
  const auto tt = testing::with_sorted_edges(ingest::parse_text(
      "stop s\nstop u\nstop t\nstop x\n"
      "route r1 s u\nroute r2 s t\n"
      "trip a r1 13:50:00 13:59:00\n"
      "trip b r2 13:50:00 14:00:00\n"
      "transfer u t 60\n"));
  const auto result = mc_query(tt, make_query(tt, "s", "t", hms("13:45:00"), Pruning::kEarly));
  ASSERT_EQ(result.entries.size(), 1u);
  EXPECT_EQ(result.entries[0].walking, Duration(0));
  EXPECT_EQ(result.entries[0].arrival, hms("14:00:00"));
}

TEST(McRaptor, ZeroTransferEdgesCollapseToRaptor) {
  for (std::uint64_t n = 0; n < 15; ++n) {
    auto spec = testing::corpus_spec(n);
    spec.target_density = 0.0;
    const auto tt = testing::with_sorted_edges(ingest::generate_synthetic(spec));
    for (const auto& q : testing::corpus_queries(tt, n, 20, 8)) {
      const auto mc = mc_query(tt, q);
      const auto single = query(tt, q);
      ASSERT_EQ(mc.entries.size(), single.entries.size());
      for (std::size_t i = 0; i < mc.entries.size(); ++i) {
        EXPECT_EQ(mc.entries[i].walking, Duration(0));
        EXPECT_EQ(mc.entries[i].arrival, single.entries[i].arrival);
        EXPECT_EQ(mc.entries[i].trips, single.entries[i].num_trips);
      }
    }
  }
}

TEST(McRaptorProperties, IdentityAntichainAndProjection) {
  for (std::uint64_t n = 0; n < 25; ++n) {
    const auto tt = testing::corpus_network(n);
    for (auto q : testing::corpus_queries(tt, n + 77, 20, 8)) {
      q.pruning = Pruning::kOff;
      const auto off = mc_query(tt, q);
      q.pruning = Pruning::kEarly;
      const auto early_state = mc_run(tt, q, true);
      const auto early = mc_extract(tt, early_state, q.target);
      ASSERT_EQ(off.entries, early.entries);
      EXPECT_EQ(early.counters.edges_examined + early.counters.edges_pruned, off.counters.edges_examined);

      for (const auto& p : early_state.pruned_log) EXPECT_TRUE(dominates(p.dominator, p.candidate));
      for (std::size_t a = 0; a < off.entries.size(); ++a) {
        const auto& e = off.entries[a];
        EXPECT_EQ(replay_arrival(tt, e.journey), e.arrival);
        EXPECT_EQ(e.journey.transfer_duration_total, e.walking);
        EXPECT_EQ(e.journey.num_trips, e.trips);
        for (std::size_t b = 0; b < off.entries.size(); ++b) {
          if (a == b) continue;
          const McLabel x{off.entries[a].arrival, off.entries[a].walking, off.entries[a].trips};
          const McLabel y{off.entries[b].arrival, off.entries[b].walking, off.entries[b].trips};
          EXPECT_FALSE(dominates(x, y));
        }
      }

      // projection onto (trips, arrival) reproduces the single-criterion front
      auto single_q = q;
      single_q.pruning = Pruning::kOff;
      const auto single = query(tt, single_q);
      std::vector<std::pair<int, Time>> projected;
      for (const auto& e : off.entries) {
        const bool dominated = std::ranges::any_of(off.entries, [&](const McEntry& o) {
          return (o.trips <= e.trips && o.arrival < e.arrival) || (o.trips < e.trips && o.arrival <= e.arrival);
        });
        if (!dominated && std::ranges::find(projected, std::pair(e.trips, e.arrival)) == projected.end()) {
          projected.emplace_back(e.trips, e.arrival);
        }
      }
      std::ranges::sort(projected);
      ASSERT_EQ(projected.size(), single.entries.size());
      for (std::size_t i = 0; i < projected.size(); ++i) {
        EXPECT_EQ(projected[i].first, single.entries[i].num_trips);
        EXPECT_EQ(projected[i].second, single.entries[i].arrival);
      }
    }
  }
}

TEST(McRaptorProperties, ResultIndependentOfRouteAndEdgeOrder) {
  std::mt19937_64 rng(5);
  for (std::uint64_t n = 0; n < 10; ++n) {
    const auto tt = testing::corpus_network(n);
    // shuffle route order and stop-local adjacency order (the latter only for the Off mode)
    std::vector<std::size_t> order(tt.route_count());
    std::iota(order.begin(), order.end(), 0);
    std::ranges::shuffle(order, rng);
    std::vector<Route> routes;
    std::vector<Trip> trips;
    for (const auto r : order) {
      Route route = tt.routes()[r];
      const RouteId rid(static_cast<RouteId::rep>(routes.size()));
      for (auto& t : route.trips) {
        Trip trip = tt.trip(t);
        trip.route = rid;
        t = TripId(static_cast<TripId::rep>(trips.size()));
        trips.push_back(std::move(trip));
      }
      routes.push_back(std::move(route));
    }
    std::vector<std::vector<TransferEdge>> adjacency(tt.transfer_graph().vertex_count());
    for (std::size_t u = 0; u < adjacency.size(); ++u) {
      const auto out = tt.transfer_graph().out_edges(VertexId(static_cast<VertexId::rep>(u)));
      adjacency[u].assign(out.begin(), out.end());
      std::ranges::shuffle(adjacency[u], rng);
    }
    const Timetable shuffled(tt.stops(), routes, trips, TransferGraph::from_adjacency(adjacency));
    for (auto q : testing::corpus_queries(tt, n, 15, 8)) {
      const auto a = mc_query(tt, q);
      const auto b = mc_query(shuffled, q);
      ASSERT_EQ(a.entries.size(), b.entries.size());
      for (std::size_t i = 0; i < a.entries.size(); ++i) {
        EXPECT_EQ(a.entries[i].arrival, b.entries[i].arrival);
        EXPECT_EQ(a.entries[i].walking, b.entries[i].walking);
        EXPECT_EQ(a.entries[i].trips, b.entries[i].trips);
      }
    }
  }
}

TEST(McRaptorProperties, MatchesParetoOracle) {
  for (std::uint64_t n = 100; n < 115; ++n) {
    const auto tt = testing::corpus_network(n);
    for (auto q : testing::corpus_queries(tt, n, 20, oracle::kOracleMaxTrips)) {
      const auto result = mc_query(tt, q);
      const auto expected = oracle::pareto_oracle(tt, q.source, q.target, q.departure, q.max_rounds);
      ASSERT_EQ(result.entries.size(), expected.size()) << "network " << n;
      for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(result.entries[i].arrival, expected[i].arrival);
        EXPECT_EQ(result.entries[i].walking, expected[i].walking);
        EXPECT_EQ(result.entries[i].trips, expected[i].trips);
      }
    }
  }
}

}  // namespace
}  // namespace transit::routing
