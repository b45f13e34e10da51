#include "transit/transfer_graph.hpp"

#include <unordered_map>

#include <fmt/format.h>

#include "transit/error.hpp"

namespace transit {

namespace {

void check_edge(std::size_t vertex_count, std::size_t from, const TransferEdge& e) {
  if (e.target.index() >= vertex_count) {
    throw InvalidGraph(fmt::format("edge ({},{}) targets a vertex outside [0,{})", from, e.target.value(),
                                   vertex_count));
  }
  if (e.target.index() == from) throw InvalidGraph(fmt::format("self-loop at vertex {}", from));
  if (e.duration.seconds() == 0) {
    throw InvalidGraph(fmt::format("edge ({},{}) has zero duration", from, e.target.value()));
  }
}

}  // namespace

TransferGraph TransferGraph::from_adjacency(const std::vector<std::vector<TransferEdge>>& adjacency,
                                            bool collapse_parallel) {
  const std::size_t n = adjacency.size();
  TransferGraph g;
  g.offsets_.reserve(n + 1);
  g.offsets_.push_back(0);
  std::unordered_map<VertexId::rep, std::size_t> seen;
  for (std::size_t u = 0; u < n; ++u) {
    seen.clear();
    for (const auto& e : adjacency[u]) {
      check_edge(n, u, e);
      if (collapse_parallel) {
        auto [it, inserted] = seen.try_emplace(e.target.value(), g.edges_.size());
        if (!inserted) {
          auto& kept = g.edges_[it->second];
          if (e.duration < kept.duration) kept.duration = e.duration;
          continue;
        }
      }
      g.edges_.push_back(e);
    }
    g.offsets_.push_back(g.edges_.size());
  }
  return g;
}

TransferGraph TransferGraph::from_edges(std::size_t vertex_count, std::span<const EdgeSpec> edges,
                                        bool collapse_parallel) {
  std::vector<std::vector<TransferEdge>> adjacency(vertex_count);
  for (const auto& e : edges) {
    if (e.from.index() >= vertex_count) {
      throw InvalidGraph(fmt::format("edge source {} outside [0,{})", e.from.value(), vertex_count));
    }
    adjacency[e.from.index()].push_back({e.to, e.duration});
  }
  return from_adjacency(adjacency, collapse_parallel);
}

TransferGraph TransferGraph::from_csr(std::vector<std::uint64_t> offsets, std::vector<TransferEdge> edges,
                                      bool sorted) {
  if (offsets.empty() || offsets.front() != 0 || offsets.back() != edges.size()) {
    throw InvalidGraph("malformed CSR offsets");
  }
  const std::size_t n = offsets.size() - 1;
  for (std::size_t u = 0; u < n; ++u) {
    if (offsets[u] > offsets[u + 1]) throw InvalidGraph("CSR offsets are not monotone");
    for (auto i = offsets[u]; i < offsets[u + 1]; ++i) check_edge(n, u, edges[i]);
  }
  TransferGraph g;
  g.offsets_ = std::move(offsets);
  g.edges_ = std::move(edges);
  if (sorted && !g.is_duration_ordered()) {
    throw InvalidGraph("graph claims sorted adjacency but a list is out of duration order");
  }
  g.sorted_ = sorted;
  return g;
}

std::optional<Duration> TransferGraph::edge_duration(VertexId u, VertexId v) const {
  if (u.index() >= vertex_count()) return std::nullopt;
  for (const auto& e : out_edges(u)) {
    if (e.target == v) return e.duration;
  }
  return std::nullopt;
}

bool TransferGraph::is_duration_ordered() const {
  for (std::size_t u = 0; u + 1 < offsets_.size(); ++u) {
    for (auto i = offsets_[u]; i + 1 < offsets_[u + 1]; ++i) {
      if (edges_[i + 1].duration < edges_[i].duration) return false;
    }
  }
  return true;
}

double density(const TransferGraph& graph) {
  const auto n = graph.vertex_count();
  if (n < 2) throw InvalidGraph(fmt::format("density undefined for {} vertices", n));
  return static_cast<double>(graph.edge_count()) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

Duration path_duration(const TransferGraph& graph, std::span<const VertexId> path) {
  Duration total;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const auto d = graph.edge_duration(path[i], path[i + 1]);
    if (!d) {
      throw NotAPath(fmt::format("no edge ({},{}) at path position {}", path[i].value(), path[i + 1].value(), i));
    }
    total += *d;
  }
  return total;
}

}  // namespace transit
