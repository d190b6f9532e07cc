#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "twdist/types.hpp"

namespace twdist {

struct Edge {
  Vertex u;
  Vertex v;
  Weight w;
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Arc {
  Vertex to;
  Weight w;
};

/// Undirected graph with nonnegative integer edge lengths.
///
/// Immutable after construction. Self-loops are rejected and parallel edges
/// are collapsed to the shortest one, so every unordered pair carries at most
/// one edge. Edges are kept sorted with u < v; adjacency lists are sorted by
/// neighbour id.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Arc> neighbors(Vertex v) const noexcept {
    return {arcs_.data() + offsets_[v], arcs_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  std::optional<Weight> edge_weight(Vertex u, Vertex v) const;
  bool unit_weights() const noexcept;

 private:
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
};

struct DistanceRow {
  Vertex source = 0;
  std::vector<MaybeDistance> dist;
};

DistanceRow dijkstra(const Graph& g, Vertex source);

/// Hop distances; throws InvalidArgument unless every edge has length 1.
DistanceRow bfs(const Graph& g, Vertex source);

/// Adds an edge z-z' of length d(z,z') for every pair of `z`, where rows[i]
/// holds exact distances from z[i]. Existing shorter edges win.
Graph add_shortcut_clique(const Graph& g, std::span<const Vertex> z, std::span<const DistanceRow> rows);

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_original;  // new id -> original id
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

bool check_connected(const Graph& g);

}  // namespace twdist
