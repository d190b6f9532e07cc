#include "twdist/vc_distance.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <map>

namespace twdist {

VertexCover VertexCover::from(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return {std::move(vs)};
}

bool is_vertex_cover(const Graph& g, const VertexCover& c) {
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : c.vertices) {
    if (v >= g.vertex_count()) return false;
    in[v] = 1;
  }
  return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) { return in[e.u] || in[e.v]; });
}

namespace {

using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

class CoverSearch {
 public:
  explicit CoverSearch(std::size_t n) : degree_(n, 0) {}

  bool run(const EdgeList& edges, std::size_t budget, std::vector<Vertex>& chosen) {
    EdgeList rest = edges;
    const std::size_t mark = chosen.size();
    // A vertex touching more uncovered edges than the budget must be taken.
    for (bool changed = true; changed && !rest.empty();) {
      changed = false;
      for (const auto& [u, v] : rest) ++degree_[u], ++degree_[v];
      Vertex forced = 0;
      bool found = false;
      for (const auto& [u, v] : rest) {
        if (degree_[u] > budget) forced = u, found = true;
        else if (degree_[v] > budget) forced = v, found = true;
        if (found) break;
      }
      for (const auto& [u, v] : rest) degree_[u] = degree_[v] = 0;
      if (found) {
        if (budget == 0) return undo(chosen, mark);
        --budget;
        chosen.push_back(forced);
        remove_touching(rest, forced);
        changed = true;
      }
    }
    if (rest.empty()) return true;
    if (budget == 0 || rest.size() > budget * budget) return undo(chosen, mark);
    const auto [a, b] = rest.front();
    for (Vertex pick : {a, b}) {
      EdgeList sub = rest;
      remove_touching(sub, pick);
      chosen.push_back(pick);
      if (run(sub, budget - 1, chosen)) return true;
      chosen.pop_back();
    }
    return undo(chosen, mark);
  }

 private:
  static void remove_touching(EdgeList& es, Vertex x) {
    std::erase_if(es, [x](const auto& e) { return e.first == x || e.second == x; });
  }
  static bool undo(std::vector<Vertex>& chosen, std::size_t mark) {
    chosen.resize(mark);
    return false;
  }

  std::vector<std::uint32_t> degree_;
};

}  // namespace

std::optional<VertexCover> find_vertex_cover(const Graph& g, std::size_t k_max) {
  EdgeList edges;
  edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) edges.emplace_back(e.u, e.v);
  CoverSearch search(g.vertex_count());
  for (std::size_t budget = 0; budget <= k_max; ++budget) {
    std::vector<Vertex> chosen;
    if (search.run(edges, budget, chosen)) return VertexCover::from(std::move(chosen));
  }
  return std::nullopt;
}

namespace {

void require_unit_weights(const Graph& g) {
  if (!g.unit_weights()) throw InvalidArgument("vertex cover algorithms need an unweighted graph");
}

std::vector<char> membership(const Graph& g, const VertexCover& c) {
  if (!is_vertex_cover(g, c)) throw InvalidArgument("not a vertex cover of the graph");
  std::vector<char> in(g.vertex_count(), 0);
  for (Vertex v : c.vertices) in[v] = 1;
  return in;
}

// Outside vertices grouped by neighbourhood; each class lists its members.
struct NeighborhoodClasses {
  std::vector<std::vector<Vertex>> members;
  std::vector<std::uint64_t> masks;  // filled only when the cover fits 64 bits
};

NeighborhoodClasses classify(const Graph& g, const std::vector<char>& in_cover, const VertexCover& c) {
  std::map<std::vector<Vertex>, std::size_t> index;
  NeighborhoodClasses out;
  std::vector<Vertex> key;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (in_cover[v]) continue;
    key.clear();
    for (const auto& a : g.neighbors(v)) key.push_back(a.to);
    auto [it, inserted] = index.try_emplace(key, out.members.size());
    if (inserted) out.members.emplace_back();
    out.members[it->second].push_back(v);
  }
  if (c.size() <= 64) {
    std::vector<std::uint32_t> pos(g.vertex_count(), 0);
    for (std::size_t i = 0; i < c.size(); ++i) pos[c.vertices[i]] = static_cast<std::uint32_t>(i);
    out.masks.resize(out.members.size(), 0);
    for (std::size_t i = 0; i < out.members.size(); ++i)
      for (const auto& a : g.neighbors(out.members[i].front())) out.masks[i] |= std::uint64_t{1} << pos[a.to];
  }
  return out;
}

struct RowSummary {
  Distance ecc = 0;
  std::uint64_t sum = 0;
};

RowSummary summarize(const DistanceRow& row) {
  RowSummary s;
  for (const auto& d : row.dist) {
    if (!d) throw DisconnectedError("graph is not connected");
    s.ecc = std::max(s.ecc, *d);
    s.sum = checked_add(s.sum, *d);
  }
  return s;
}

}  // namespace

VcResult ecc_wiener_vc(const Graph& g, const VertexCover& c, bool parallel) {
  require_unit_weights(g);
  const std::size_t n = g.vertex_count();
  const auto in_cover = membership(g, c);
  if (n > 0 && !check_connected(g)) throw DisconnectedError("graph is not connected");
  const auto classes = classify(g, in_cover, c);

  // Sources: every cover vertex, then one representative per class.
  std::vector<Vertex> sources = c.vertices;
  for (const auto& m : classes.members) sources.push_back(m.front());
  std::vector<RowSummary> summary(sources.size());
  std::exception_ptr failure;
  const auto ns = static_cast<std::ptrdiff_t>(sources.size());
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
  for (std::ptrdiff_t i = 0; i < ns; ++i) {
    try {
      summary[static_cast<std::size_t>(i)] = summarize(bfs(g, sources[static_cast<std::size_t>(i)]));
    } catch (...) {
#pragma omp critical(twdist_vc_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Distance> ecc(n, 0);
  std::uint64_t doubled = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    ecc[c.vertices[i]] = summary[i].ecc;
    doubled = checked_add(doubled, summary[i].sum);
  }
  // Members of a class have the same distances to every vertex except each
  // other, where the two distances involved are swapped.
  for (std::size_t j = 0; j < classes.members.size(); ++j) {
    const auto& s = summary[c.size() + j];
    for (Vertex v : classes.members[j]) ecc[v] = s.ecc;
    doubled = checked_add(doubled, checked_mul(s.sum, classes.members[j].size()));
  }

  VcResult out;
  out.report = make_report(std::move(ecc), doubled / 2);
  out.stats.searches = sources.size();
  out.stats.classes = classes.members.size();
  return out;
}

HTable::Entry HTable::at(std::uint64_t mask) const noexcept {
  const std::uint32_t cell = cells_[mask];
  if (cell == 0) return {Kind::kEmpty, 0};
  if (cell == kManyCell) return {Kind::kMany, 0};
  return {Kind::kUnique, cell - 1};
}

bool HTable::has_other(std::uint64_t mask, std::optional<Vertex> self) const noexcept {
  const auto e = at(mask);
  if (e.kind == Kind::kEmpty) return false;
  if (e.kind == Kind::kMany) return true;
  return !self || e.vertex != *self;
}

HTable compute_h(std::size_t k, std::span<const std::pair<Vertex, std::uint64_t>> outside, std::size_t lattice_limit) {
  if (k > lattice_limit || k >= 63)
    throw ResourceError("cover of size " + std::to_string(k) + " exceeds the subset lattice limit " +
                        std::to_string(lattice_limit));
  const std::uint64_t full = std::uint64_t{1} << k;
  auto merge = [](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (a == 0) return b;
    if (b == 0 || a == b) return a;
    return HTable::kManyCell;
  };
  std::vector<std::uint32_t> cells(full, 0);
  for (const auto& [w, mask] : outside) {
    if (mask >= full) throw InvalidArgument("neighbourhood mask outside the cover");
    cells[mask] = merge(cells[mask], w + 1);
  }
  // Increasing numeric order: every S - {w} is smaller than S, so it is final
  // before S is visited, as with ordering by size.
  for (std::uint64_t s = 1; s < full; ++s) {
    std::uint32_t acc = cells[s];
    for (std::uint64_t rest = s; rest != 0 && acc != HTable::kManyCell; rest &= rest - 1)
      acc = merge(acc, cells[s & ~(rest & (0 - rest))]);
    cells[s] = acc;
  }
  return HTable(k, std::move(cells));
}

VcFastResult ecc_fast_vc(const Graph& g, const VertexCover& c, std::size_t lattice_limit) {
  require_unit_weights(g);
  const std::size_t n = g.vertex_count();
  const std::size_t k = c.size();
  const auto in_cover = membership(g, c);
  VcFastResult out;
  out.eccentricities.assign(n, 0);
  if (n <= 1) return out;
  if (!check_connected(g)) throw DisconnectedError("graph is not connected");
  if (k > lattice_limit || k >= 63)
    throw ResourceError("cover of size " + std::to_string(k) + " exceeds the subset lattice limit " +
                        std::to_string(lattice_limit));

  const auto classes = classify(g, in_cover, c);
  std::vector<std::pair<Vertex, std::uint64_t>> outside;
  for (std::size_t j = 0; j < classes.members.size(); ++j)
    for (Vertex v : classes.members[j]) outside.emplace_back(v, classes.masks[j]);
  const HTable h = compute_h(k, outside, lattice_limit);

  // Cover graph: edges of G[C] plus a length-2 edge for every pair with a
  // common outside neighbour.
  std::vector<std::uint32_t> pos(n, 0);
  for (std::size_t i = 0; i < k; ++i) pos[c.vertices[i]] = static_cast<std::uint32_t>(i);
  std::vector<Edge> cover_edges;
  for (const auto& e : g.edges())
    if (in_cover[e.u] && in_cover[e.v]) cover_edges.push_back({pos[e.u], pos[e.v], 1});
  for (const auto& m : classes.masks)
    for (std::uint64_t a = m; a != 0; a &= a - 1)
      for (std::uint64_t b = a & (a - 1); b != 0; b &= b - 1)
        cover_edges.push_back({static_cast<Vertex>(std::countr_zero(a)), static_cast<Vertex>(std::countr_zero(b)), 2});
  const Graph cover_graph(k, cover_edges);

  // d = farthest cover vertex, E = the cover vertices at that distance. The
  // eccentricity is d + 1 iff some other outside vertex has N(w) inside E.
  auto eccentricity = [&](const DistanceRow& row, std::size_t count, std::optional<Vertex> self) {
    Distance d = 0;
    for (std::size_t i = 0; i < count; ++i) d = std::max(d, *row.dist[i]);
    std::uint64_t e = 0;
    for (std::size_t i = 0; i < count; ++i)
      if (*row.dist[i] == d) e |= std::uint64_t{1} << i;
    return h.has_other(e, self) ? d + 1 : d;
  };

  for (std::size_t i = 0; i < k; ++i) {
    const auto row = dijkstra(cover_graph, static_cast<Vertex>(i));
    out.eccentricities[c.vertices[i]] = eccentricity(row, k, std::nullopt);
  }
  const std::vector<Edge> base(cover_graph.edges().begin(), cover_graph.edges().end());
  for (std::size_t j = 0; j < classes.members.size(); ++j) {
    std::vector<Edge> edges = base;
    const Vertex v = classes.members[j].front();
    for (std::uint64_t a = classes.masks[j]; a != 0; a &= a - 1)
      edges.push_back({static_cast<Vertex>(std::countr_zero(a)), static_cast<Vertex>(k), 1});
    const auto row = dijkstra(Graph(k + 1, edges), static_cast<Vertex>(k));
    const Distance e = eccentricity(row, k, v);
    for (Vertex w : classes.members[j]) out.eccentricities[w] = e;
  }
  out.stats.searches = k + classes.members.size();
  out.stats.classes = classes.members.size();
  return out;
}

}  // namespace twdist
