#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "twdist/graph.hpp"
#include "twdist/range_tree.hpp"
#include "twdist/report.hpp"

namespace twdist {

/// Dense n x n distance matrix; unreachable pairs hold kUnreachable.
struct DistanceMatrix {
  static constexpr Distance kUnreachable = ~Distance{0};

  std::size_t n = 0;
  std::vector<Distance> d;

  Distance at(Vertex u, Vertex v) const { return d[static_cast<std::size_t>(u) * n + v]; }
};

/// Graphs above this size are refused by the oracle. The environment variable
/// TWDIST_ORACLE_LIMIT overrides the default of 3000.
std::size_t oracle_vertex_limit();

/// Floyd-Warshall for small graphs, one label-correcting sweep per source
/// otherwise. Throws ResourceError above oracle_vertex_limit().
DistanceMatrix apsp_oracle(const Graph& g, bool parallel = false);

/// Report computed from the full matrix. Throws DisconnectedError.
DistanceReport report_oracle(const Graph& g, bool parallel = false);

/// Linear scan over all points.
template <Monoid M>
typename M::value_type range_query_oracle(std::span<const Point<typename M::value_type>> points, const QueryBox& box) {
  auto acc = M::identity();
  for (const auto& p : points)
    if (box.contains(p.coords)) acc = M::combine(acc, p.value);
  return acc;
}

}  // namespace twdist
