#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "transit/ids.hpp"
#include "transit/time.hpp"

namespace transit {

struct TransferEdge {
  VertexId target;
  Duration duration;

  friend bool operator==(const TransferEdge&, const TransferEdge&) = default;
};

/// Directed edge used when building a graph from an unordered list.
struct EdgeSpec {
  VertexId from;
  VertexId to;
  Duration duration;
};

/// Weighted directed transfer graph in flat (CSR) adjacency form.
///
/// Construction rejects self-loops, zero durations and out-of-range endpoints.
/// `sorted()` is true only when every adjacency list is known to be in
/// non-decreasing duration order; it is set by `sort_edges` (ingest) and is
/// re-verified by a full scan whenever a graph is constructed claiming it.
class TransferGraph {
 public:
  TransferGraph() = default;

  /// Builds from an edge list. Per-vertex order follows the input order.
  /// When `collapse_parallel` is set, repeated (u,v) pairs keep a single entry at
  /// the position of the first occurrence, carrying the minimum duration.
  static TransferGraph from_edges(std::size_t vertex_count, std::span<const EdgeSpec> edges,
                                  bool collapse_parallel = true);

  /// Builds from per-vertex adjacency lists (outer index is the source vertex).
  static TransferGraph from_adjacency(const std::vector<std::vector<TransferEdge>>& adjacency,
                                      bool collapse_parallel = true);

  /// Adopts CSR arrays directly. Throws InvalidGraph if the arrays are malformed, if
  /// any edge violates the graph invariants, or if `sorted` is claimed but false.
  static TransferGraph from_csr(std::vector<std::uint64_t> offsets, std::vector<TransferEdge> edges,
                                bool sorted);

  [[nodiscard]] std::size_t vertex_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] bool sorted() const { return sorted_; }

  [[nodiscard]] std::span<const TransferEdge> out_edges(VertexId v) const {
    return {edges_.data() + offsets_[v.index()], edges_.data() + offsets_[v.index() + 1]};
  }

  /// Duration of the edge (u,v) if present (the first one when parallel edges were kept).
  [[nodiscard]] std::optional<Duration> edge_duration(VertexId u, VertexId v) const;

  /// Full scan: every adjacency list is in non-decreasing duration order.
  [[nodiscard]] bool is_duration_ordered() const;

  [[nodiscard]] const std::vector<std::uint64_t>& offsets() const { return offsets_; }
  [[nodiscard]] const std::vector<TransferEdge>& edges() const { return edges_; }

  friend bool operator==(const TransferGraph&, const TransferGraph&) = default;

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<TransferEdge> edges_;
  bool sorted_ = false;
};

/// |E| / (|V| (|V|-1)). Throws InvalidGraph when there are fewer than two vertices.
double density(const TransferGraph& graph);

/// Sum of edge durations along consecutive vertices of `path`; 0 for paths of
/// length 0 or 1. Throws NotAPath naming the first pair that is not an edge.
Duration path_duration(const TransferGraph& graph, std::span<const VertexId> path);

}  // namespace transit
