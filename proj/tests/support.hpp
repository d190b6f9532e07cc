#pragma once

// Brute-force references and small fixed graphs shared by the tests.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <vector>

#include "twdist/generators.hpp"
#include "twdist/graph.hpp"
#include "twdist/vc_distance.hpp"

namespace twdist::testing {

inline Graph make_graph(std::size_t n, std::initializer_list<Edge> edges) {
  return Graph(n, std::vector<Edge>(edges));
}

inline Graph path_graph(std::size_t n, Weight w = 1) {
  std::vector<Edge> es;
  for (Vertex v = 0; v + 1 < n; ++v) es.push_back({v, v + 1, w});
  return Graph(n, es);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex v = 0; v < n; ++v) es.push_back({v, static_cast<Vertex>((v + 1) % n), 1});
  return Graph(n, es);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> es;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) es.push_back({a, b, 1});
  return Graph(n, es);
}

inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> es;
  for (Vertex v = 1; v <= leaves; ++v) es.push_back({0, v, 1});
  return Graph(leaves + 1, es);
}

/// Connected random graph: a random spanning tree plus extra random edges.
inline Graph random_connected(std::size_t n, std::size_t extra, Weight max_w, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Edge> es;
  auto w = [&] { return max_w <= 1 ? Weight{1} : static_cast<Weight>(rng.between(1, static_cast<std::int64_t>(max_w))); };
  for (Vertex v = 1; v < n; ++v) es.push_back({static_cast<Vertex>(rng.below(v)), v, w()});
  for (std::size_t i = 0; i < extra && n > 1; ++i) {
    const auto a = static_cast<Vertex>(rng.below(n));
    const auto b = static_cast<Vertex>(rng.below(n));
    if (a != b) es.push_back({a, b, w()});
  }
  return Graph(n, es);
}

/// A connected graph split into L, Z, R with no L-R edge; xs = L u Z and
/// ys = R u Z, so every x,y-path meets Z.
struct SeparatedInstance {
  Graph graph;
  std::vector<Vertex> z, xs, ys;
};

inline SeparatedInstance separated_instance(std::size_t n, std::size_t k, std::size_t extra, Weight max_w,
                                            std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Vertex> perm(n);
  for (Vertex v = 0; v < n; ++v) perm[v] = v;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  // side: 0 = L, 1 = Z, 2 = R; perm[0] is in Z so every vertex has a legal parent
  std::vector<int> side(n);
  for (std::size_t i = 0; i < n; ++i) side[perm[i]] = i < k ? 1 : rng.chance(0.5) ? 0 : 2;
  auto legal = [&](Vertex a, Vertex b) { return side[a] + side[b] != 2 || side[a] == 1; };
  auto w = [&] { return max_w <= 1 ? Weight{1} : static_cast<Weight>(rng.between(1, static_cast<std::int64_t>(max_w))); };
  std::vector<Edge> es;
  for (std::size_t i = 1; i < n; ++i) {
    Vertex parent;
    do parent = perm[rng.below(i)];
    while (!legal(parent, perm[i]));
    es.push_back({parent, perm[i], w()});
  }
  for (std::size_t i = 0; i < extra; ++i) {
    const auto a = static_cast<Vertex>(rng.below(n)), b = static_cast<Vertex>(rng.below(n));
    if (a != b && legal(a, b)) es.push_back({a, b, w()});
  }
  SeparatedInstance out{Graph(n, es), {}, {}, {}};
  out.z.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
  for (Vertex v = 0; v < n; ++v) {
    if (side[v] != 2) out.xs.push_back(v);
    if (side[v] != 0) out.ys.push_back(v);
  }
  return out;
}

inline constexpr Distance kInf = std::numeric_limits<Distance>::max();

/// All-pairs distances by n rounds of edge relaxation (Bellman-Ford).
inline std::vector<std::vector<Distance>> relaxation_matrix(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Distance>> d(n, std::vector<Distance>(n, kInf));
  for (std::size_t s = 0; s < n; ++s) {
    d[s][s] = 0;
    for (std::size_t round = 0; round < n; ++round) {
      bool changed = false;
      for (const auto& e : g.edges()) {
        if (d[s][e.u] != kInf && d[s][e.u] + e.w < d[s][e.v]) d[s][e.v] = d[s][e.u] + e.w, changed = true;
        if (d[s][e.v] != kInf && d[s][e.v] + e.w < d[s][e.u]) d[s][e.u] = d[s][e.v] + e.w, changed = true;
      }
      if (!changed) break;
    }
  }
  return d;
}

struct Attribution {
  std::optional<Distance> max;  // e(x, z_i; Y)
  std::uint64_t count = 0;
  std::uint64_t sum = 0;
};

/// For each x and i: targets y whose smallest index among the minimisers of
/// d(x,z_j) + d(z_j,y) is i.
inline std::vector<std::vector<Attribution>> attribution_oracle(const std::vector<std::vector<Distance>>& d,
                                                                const std::vector<Vertex>& xs,
                                                                const std::vector<Vertex>& ys,
                                                                const std::vector<Vertex>& z) {
  std::vector<std::vector<Attribution>> out(xs.size(), std::vector<Attribution>(z.size()));
  for (std::size_t xi = 0; xi < xs.size(); ++xi)
    for (Vertex y : ys) {
      std::size_t best = 0;
      for (std::size_t j = 1; j < z.size(); ++j)
        if (d[xs[xi]][z[j]] + d[z[j]][y] < d[xs[xi]][z[best]] + d[z[best]][y]) best = j;
      auto& a = out[xi][best];
      const Distance dz = d[z[best]][y];
      a.max = a.max ? std::max(*a.max, dz) : dz;
      ++a.count;
      a.sum += dz;
    }
  return out;
}

/// Smallest vertex cover by enumerating subsets (n <= 20).
inline std::size_t brute_cover_size(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::size_t best = n;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size >= best) continue;
    bool ok = true;
    for (const auto& e : g.edges())
      if (!(mask >> e.u & 1) && !(mask >> e.v & 1)) ok = false;
    if (ok) best = size;
  }
  return best;
}

/// The "e" example: x adjacent to z1, z2, z3; z1-a, z2-b, z3-b, z3-c, b-y.
struct VisitingExample {
  Graph graph;
  Vertex x = 0, z1 = 1, z2 = 2, z3 = 3, a = 4, b = 5, c = 6, y = 7;
};

inline VisitingExample visiting_example() {
  return {make_graph(8, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 4, 1}, {2, 5, 1}, {3, 5, 1}, {3, 6, 1}, {5, 7, 1}})};
}

/// The eccentric-set example: from v the farthest cover vertices are at
/// distance 2 and contain N(u), so u is at distance 3.
struct EccentricSetExample {
  Graph graph;
  VertexCover cover;
  Vertex v = 0, u = 5;
};

inline EccentricSetExample eccentric_set_example() {
  // v=0, a=1, c1=2, c2=3, c3=4, u=5, c6=6, w5=7, m=8
  auto g = make_graph(9, {{5, 4, 1}, {5, 3, 1}, {7, 4, 1}, {7, 6, 1}, {0, 6, 1}, {0, 1, 1}, {1, 2, 1}, {1, 3, 1},
                          {0, 8, 1}, {8, 4, 1}});
  return {std::move(g), VertexCover::from({1, 2, 3, 4, 6, 8})};
}

}  // namespace twdist::testing
