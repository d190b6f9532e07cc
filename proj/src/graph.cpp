#include "twdist/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

namespace twdist {

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges) {
  if (vertex_count > std::numeric_limits<Vertex>::max())
    throw InvalidArgument("vertex count exceeds 32-bit id range");
  edges_.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) throw InvalidArgument("edge endpoint out of range");
    if (e.u == e.v) throw InvalidArgument("self-loop at vertex " + std::to_string(e.u));
    edges_.push_back(e.u < e.v ? e : Edge{e.v, e.u, e.w});
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
  });
  // Duplicates: the first of each run is the shortest.
  edges_.erase(std::unique(edges_.begin(), edges_.end(),
                           [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
               edges_.end());

  offsets_.assign(vertex_count + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < vertex_count; ++i) offsets_[i + 1] += offsets_[i];
  arcs_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    arcs_[fill[e.u]++] = {e.v, e.w};
    arcs_[fill[e.v]++] = {e.u, e.w};
  }
  for (std::size_t v = 0; v < vertex_count; ++v)
    std::sort(arcs_.begin() + offsets_[v], arcs_.begin() + offsets_[v + 1],
              [](const Arc& a, const Arc& b) { return a.to < b.to; });
}

std::optional<Weight> Graph::edge_weight(Vertex u, Vertex v) const {
  auto adj = neighbors(u);
  auto it = std::lower_bound(adj.begin(), adj.end(), v, [](const Arc& a, Vertex x) { return a.to < x; });
  if (it == adj.end() || it->to != v) return std::nullopt;
  return it->w;
}

bool Graph::unit_weights() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == 1; });
}

DistanceRow dijkstra(const Graph& g, Vertex source) {
  const std::size_t n = g.vertex_count();
  if (source >= n) throw InvalidArgument("dijkstra source out of range");
  std::vector<Distance> dist(n, 0);
  std::vector<char> reached(n, 0), done(n, 0);
  using Item = std::pair<Distance, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  reached[source] = 1;
  heap.push({0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const auto& a : g.neighbors(u)) {
      if (done[a.to]) continue;
      const Distance nd = checked_add(d, a.w);
      if (!reached[a.to] || nd < dist[a.to]) {
        reached[a.to] = 1;
        dist[a.to] = nd;
        heap.push({nd, a.to});
      }
    }
  }
  DistanceRow row{source, std::vector<MaybeDistance>(n)};
  for (std::size_t v = 0; v < n; ++v)
    if (reached[v]) row.dist[v] = dist[v];
  return row;
}

DistanceRow bfs(const Graph& g, Vertex source) {
  const std::size_t n = g.vertex_count();
  if (source >= n) throw InvalidArgument("bfs source out of range");
  if (!g.unit_weights()) throw InvalidArgument("bfs requires an unweighted graph");
  DistanceRow row{source, std::vector<MaybeDistance>(n)};
  std::vector<Vertex> queue;
  queue.reserve(n);
  queue.push_back(source);
  row.dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    const Distance du = *row.dist[u];
    for (const auto& a : g.neighbors(u)) {
      if (row.dist[a.to]) continue;
      row.dist[a.to] = du + 1;
      queue.push_back(a.to);
    }
  }
  return row;
}

Graph add_shortcut_clique(const Graph& g, std::span<const Vertex> z, std::span<const DistanceRow> rows) {
  if (rows.size() != z.size()) throw InvalidArgument("one distance row per clique vertex required");
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (rows[i].source != z[i]) throw InvalidArgument("distance row source does not match clique vertex");
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const auto& d = rows[i].dist.at(z[j]);
      if (!d) throw DisconnectedError("shortcut endpoints are not connected");
      edges.push_back({z[i], z[j], *d});
    }
  }
  return Graph(g.vertex_count(), edges);
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  constexpr Vertex kAbsent = std::numeric_limits<Vertex>::max();
  std::vector<Vertex> local(g.vertex_count(), kAbsent);
  InducedSubgraph out;
  out.to_original.assign(vertices.begin(), vertices.end());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= g.vertex_count()) throw InvalidArgument("induced_subgraph vertex out of range");
    if (local[vertices[i]] != kAbsent) throw InvalidArgument("induced_subgraph vertex listed twice");
    local[vertices[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (local[e.u] != kAbsent && local[e.v] != kAbsent) edges.push_back({local[e.u], local[e.v], e.w});
  out.graph = Graph(vertices.size(), edges);
  return out;
}

bool check_connected(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (const auto& a : g.neighbors(u))
      if (!seen[a.to]) {
        seen[a.to] = 1;
        ++count;
        stack.push_back(a.to);
      }
  }
  return count == n;
}

}  // namespace twdist
