#include "transit/ingest/graph_kernels.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>


namespace transit::ingest {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

/// Per-thread state for one bounded Dijkstra; reset lazily via `touched`.
class BoundedDijkstra {
 public:
  explicit BoundedDijkstra(std::size_t n) : dist_(n, kUnreached) {}

  std::vector<TransferEdge> run(const TransferGraph& g, VertexId source, std::uint32_t threshold) {
    using Item = std::pair<std::uint32_t, VertexId::rep>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist_[source.index()] = 0;
    touched_.push_back(source.value());
    heap.emplace(0, source.value());
    while (!heap.empty()) {
      const auto [d, v] = heap.top();
      heap.pop();
      if (d > dist_[v]) continue;
      for (const auto& e : g.out_edges(VertexId(v))) {
        const std::uint64_t nd = std::uint64_t{d} + e.duration.seconds();
        if (nd > threshold || nd >= dist_[e.target.index()]) continue;
        if (dist_[e.target.index()] == kUnreached) touched_.push_back(e.target.value());
        dist_[e.target.index()] = static_cast<std::uint32_t>(nd);
        heap.emplace(static_cast<std::uint32_t>(nd), e.target.value());
      }
    }
    std::ranges::sort(touched_);
    std::vector<TransferEdge> out;
    out.reserve(touched_.size());
    for (const auto v : touched_) {
      if (v != source.value()) out.push_back({VertexId(v), Duration(dist_[v])});
      dist_[v] = kUnreached;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<std::uint32_t> dist_;
  std::vector<VertexId::rep> touched_;
};

bool edge_less(const TransferEdge& a, const TransferEdge& b) {
  return a.duration != b.duration ? a.duration < b.duration : a.target < b.target;
}

}  // namespace

TransferGraph transitive_closure(const TransferGraph& graph, Duration threshold) {
  const auto n = static_cast<std::int64_t>(graph.vertex_count());
  std::vector<std::vector<TransferEdge>> adjacency(graph.vertex_count());
#pragma omp parallel
  {
    BoundedDijkstra search(graph.vertex_count());
#pragma omp for schedule(dynamic, 32)
    for (std::int64_t u = 0; u < n; ++u) {
      adjacency[u] = search.run(graph, VertexId(static_cast<VertexId::rep>(u)), threshold.seconds());
    }
  }
  return TransferGraph::from_adjacency(adjacency, false);
}

TransferGraph transitive_closure_serial(const TransferGraph& graph, Duration threshold) {
  std::vector<std::vector<TransferEdge>> adjacency(graph.vertex_count());
  BoundedDijkstra search(graph.vertex_count());
  for (std::size_t u = 0; u < graph.vertex_count(); ++u) {
    adjacency[u] = search.run(graph, VertexId(static_cast<VertexId::rep>(u)), threshold.seconds());
  }
  return TransferGraph::from_adjacency(adjacency, false);
}

SortedGraph sort_edges(const TransferGraph& graph) {
  auto offsets = graph.offsets();
  auto edges = graph.edges();
  if (offsets.empty()) offsets.push_back(0);
  const auto n = static_cast<std::int64_t>(offsets.size() - 1);
  const auto start = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t u = 0; u < n; ++u) {
    std::stable_sort(edges.begin() + static_cast<std::ptrdiff_t>(offsets[u]),
                     edges.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]), edge_less);
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return {TransferGraph::from_csr(std::move(offsets), std::move(edges), true),
          std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed)};
}

SortedGraph sort_edges_serial(const TransferGraph& graph) {
  auto offsets = graph.offsets();
  auto edges = graph.edges();
  if (offsets.empty()) offsets.push_back(0);
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t u = 0; u + 1 < offsets.size(); ++u) {
    std::stable_sort(edges.begin() + static_cast<std::ptrdiff_t>(offsets[u]),
                     edges.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]), edge_less);
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return {TransferGraph::from_csr(std::move(offsets), std::move(edges), true),
          std::chrono::duration_cast<std::chrono::nanoseconds>(elapsed)};
}

}  // namespace transit::ingest
