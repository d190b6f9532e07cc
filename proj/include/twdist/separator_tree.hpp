#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "twdist/decomposition.hpp"
#include "twdist/graph.hpp"

namespace twdist {

/// Binary recursion tree of balanced separators.
///
/// Node t holds the vertex set V_t of its recursion level and a separator Z_t.
/// For an internal node the left child holds X = L_t u Z_t and the right child
/// Y = R_t u Z_t, where no edge of G[V_t] (plus the separator cliques of all
/// ancestors) joins L_t to R_t, and n/(k+1) <= |X| <= nk/(k+1) with n = |V_t|.
/// Leaves are recursion base cases; their separator is V_t when |V_t| <= k and
/// empty otherwise.
struct SkewSeparatorTree {
  struct Node {
    std::vector<Vertex> vertices;   // sorted
    std::vector<Vertex> separator;  // sorted
    int left = -1;
    int right = -1;
    bool leaf() const noexcept { return left < 0; }
  };

  std::vector<Node> nodes;
  int root = -1;
  std::size_t k = 0;

  std::size_t depth() const;
};

/// Builds the tree from a valid decomposition of g. Requires k >= width + 1.
/// Separators are (subsets of) bags found by walking towards a centroid bag;
/// components of the remaining graph are split into the two sides by subset sum.
SkewSeparatorTree skew_separator_tree(const Graph& g, const TreeDecomposition& td, std::size_t k);

/// Same tree with left and right children exchanged at every node.
SkewSeparatorTree mirrored(SkewSeparatorTree t);

struct SstReport {
  bool ok = true;
  std::string message;
};

SstReport validate_sst(const Graph& g, const SkewSeparatorTree& t, std::size_t k);

}  // namespace twdist
