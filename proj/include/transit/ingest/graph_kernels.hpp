#pragma once

#include <chrono>

#include "transit/transfer_graph.hpp"

namespace transit::ingest {

/// Edge (u,v) with duration d is emitted iff the shortest u->v path in `graph`
/// has length d <= threshold and u != v. Each vertex's list is ordered by target id.
/// One bounded Dijkstra per vertex, run in parallel (OpenMP); output is schedule-independent.
TransferGraph transitive_closure(const TransferGraph& graph, Duration threshold);

/// Single-threaded reference for `transitive_closure`.
TransferGraph transitive_closure_serial(const TransferGraph& graph, Duration threshold);

struct SortedGraph {
  TransferGraph graph;  // sorted() == true
  std::chrono::nanoseconds elapsed{0};
};

/// Orders every adjacency list by (duration, target id) and sets the sorted flag.
/// The edge multiset per vertex is unchanged. Wall time is measured with a steady clock.
SortedGraph sort_edges(const TransferGraph& graph);

/// Single-threaded reference for `sort_edges`.
SortedGraph sort_edges_serial(const TransferGraph& graph);

}  // namespace transit::ingest
