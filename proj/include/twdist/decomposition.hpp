#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twdist/graph.hpp"

namespace twdist {

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;  // each bag sorted, 0-indexed vertices
  std::vector<std::pair<std::size_t, std::size_t>> tree_edges;
  std::size_t vertex_count = 0;

  /// Maximum bag size minus one; -1 is reported as 0 for an empty decomposition.
  std::size_t width() const noexcept;
};

// PACE .td format:
//   s td <#bags> <max bag size> <n>
//   b <i> <v...>      (1-indexed bag ids and vertices)
//   <i> <j>           (tree edges)
TreeDecomposition parse_td(std::string_view text);
std::string format_td(const TreeDecomposition& td);

enum class TdAxiom { kNone, kStructure, kVertexCoverage, kEdgeCoverage, kConnectivity };

struct TdReport {
  TdAxiom violated = TdAxiom::kNone;
  std::string message;
  bool ok() const noexcept { return violated == TdAxiom::kNone; }
};

/// Checks the bag tree is a tree, every vertex and edge is covered, and each
/// vertex's bags induce a connected subtree. Reports the first violation.
TdReport validate_td(const Graph& g, const TreeDecomposition& td);

/// Min-fill elimination ordering (ties: smaller degree, then smaller id).
TreeDecomposition heuristic_td(const Graph& g);

}  // namespace twdist
