#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "twdist/graph.hpp"
#include "twdist/report.hpp"

namespace twdist {

struct VertexCover {
  std::vector<Vertex> vertices;  // sorted, distinct

  std::size_t size() const noexcept { return vertices.size(); }
  static VertexCover from(std::vector<Vertex> vs);
};

bool is_vertex_cover(const Graph& g, const VertexCover& c);

/// Minimum vertex cover when one of size <= k_max exists, nullopt otherwise.
/// Bounded search tree on uncovered edges with the high-degree rule, by
/// iterative deepening on the budget.
std::optional<VertexCover> find_vertex_cover(const Graph& g, std::size_t k_max);

struct VcStats {
  std::uint64_t searches = 0;  // BFS and Dijkstra runs
  std::uint64_t classes = 0;   // distinct neighbourhoods outside the cover
};

struct VcResult {
  DistanceReport report;
  VcStats stats;
};

/// Eccentricities and Wiener index with one BFS per cover vertex and one per
/// neighbourhood class outside the cover. Unweighted connected graphs only.
VcResult ecc_wiener_vc(const Graph& g, const VertexCover& c, bool parallel = false);

/// For each subset S of the cover (bitmask over cover positions): whether no,
/// exactly one, or several outside vertices have their whole neighbourhood
/// inside S.
class HTable {
 public:
  enum class Kind { kEmpty, kUnique, kMany };
  struct Entry {
    Kind kind;
    Vertex vertex;  // meaningful for kUnique
  };

  // Cell encoding: 0 empty, kManyCell many, otherwise vertex + 1.
  static constexpr std::uint32_t kManyCell = ~std::uint32_t{0};

  HTable() = default;
  HTable(std::size_t k, std::vector<std::uint32_t> cells) : k_(k), cells_(std::move(cells)) {}

  std::size_t k() const noexcept { return k_; }
  Entry at(std::uint64_t mask) const noexcept;
  /// True when some outside vertex other than `self` has N(w) inside S.
  bool has_other(std::uint64_t mask, std::optional<Vertex> self) const noexcept;

 private:
  std::size_t k_ = 0;
  std::vector<std::uint32_t> cells_;
};

inline constexpr std::size_t kDefaultLatticeLimit = 25;

/// outside holds (w, mask of N(w)) for every vertex w outside the cover.
/// Throws ResourceError when k exceeds lattice_limit.
HTable compute_h(std::size_t k, std::span<const std::pair<Vertex, std::uint64_t>> outside,
                 std::size_t lattice_limit = kDefaultLatticeLimit);

struct VcFastResult {
  std::vector<Distance> eccentricities;
  VcStats stats;
};

/// Eccentricities via shortest paths inside the cover (with length-2
/// shortcuts through outside vertices) and the h table.
VcFastResult ecc_fast_vc(const Graph& g, const VertexCover& c, std::size_t lattice_limit = kDefaultLatticeLimit);

}  // namespace twdist
