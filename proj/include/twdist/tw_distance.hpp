#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "twdist/graph.hpp"
#include "twdist/monoid.hpp"
#include "twdist/report.hpp"
#include "twdist/separator_tree.hpp"

namespace twdist {

/// Work counters collected over every range tree built during a run.
struct RangeTreeStats {
  std::uint64_t trees_built = 0;
  std::uint64_t queries = 0;
  std::uint64_t max_canonical_total = 0;
  std::uint64_t max_query_visits = 0;
  std::uint64_t construction_violations = 0;  // canonical total above n*d*B(n,d)
  std::uint64_t query_violations = 0;         // visits above 2^d*B(n,d)
  std::uint64_t max_points = 0;
  std::uint64_t max_dimension = 0;

  void merge(const RangeTreeStats& o);
};

struct VisitingOptions {
  // The i-th coordinate of every point is 0 and its bound is 0; dropping it
  // lowers the dimension by one without changing any result.
  bool drop_self_dimension = false;
  // Answer the queries of distinct x on OpenMP threads.
  bool parallel = false;
};

/// For each query vertex x and separator index i, the aggregate over all
/// targets y whose minimum-index closest separator vertex (minimising
/// d(x,z_j) + d(z_j,y)) is z_i. Under MaxDistance this is e(x,z_i;Y); under
/// CountSum it is (number of such y, sum of d(z_i,y)).
template <Monoid M>
struct VisitingTable {
  std::size_t k = 0;
  std::vector<typename M::value_type> values;  // row-major, one row per query

  const typename M::value_type& at(std::size_t x_index, std::size_t i) const { return values[x_index * k + i]; }
  std::span<const typename M::value_type> row(std::size_t x_index) const {
    return {values.data() + x_index * k, k};
  }
};

/// rows[i].dist[v] must be the exact distance between z_i and v for every
/// query and target vertex v. Builds one range tree per separator vertex over
/// the targets and queries it once per query vertex.
template <Monoid M>
VisitingTable<M> visiting_eccentricities(std::span<const Vertex> queries, std::span<const Vertex> targets,
                                         std::span<const DistanceRow> rows, const VisitingOptions& opts = {},
                                         RangeTreeStats* stats = nullptr);

extern template VisitingTable<MaxDistance> visiting_eccentricities<MaxDistance>(
    std::span<const Vertex>, std::span<const Vertex>, std::span<const DistanceRow>, const VisitingOptions&,
    RangeTreeStats*);
extern template VisitingTable<CountSum> visiting_eccentricities<CountSum>(std::span<const Vertex>,
                                                                          std::span<const Vertex>,
                                                                          std::span<const DistanceRow>,
                                                                          const VisitingOptions&, RangeTreeStats*);

/// e(x;Y) = max_i d(x,z_i) + e(x,z_i;Y), skipping empty entries.
MaybeDistance combine_visiting(std::span<const Distance> dist_to_z, std::span<const MaxDistance::value_type> row);

/// d(x,z_i) summed against each (count, sum) entry: the total distance from x
/// to the targets.
std::uint64_t combine_visiting_sum(std::span<const Distance> dist_to_z, std::span<const CountSumValue> row);

struct TwOptions {
  // nullopt: recurse until n/ln n < 4k(k+1) or n <= 3. Otherwise a level is a
  // base case exactly when it has at most this many vertices.
  std::optional<std::size_t> base_case_max_vertices;
  bool drop_self_dimension = false;
  bool parallel = false;
  bool eccentricities = true;
  bool wiener = true;
};

struct TwStats {
  RangeTreeStats range_trees;
  std::uint64_t levels = 0;
  std::uint64_t base_cases = 0;
  std::uint64_t max_depth = 0;
  std::uint64_t shortest_path_runs = 0;
};

struct TwResult {
  DistanceReport report;  // wiener present iff requested
  TwStats stats;
};

/// True when a level with n vertices is solved directly under separator bound k.
bool default_base_case(std::size_t n, std::size_t k);

/// Eccentricities and Wiener index of a connected graph by separator
/// recursion. t must be a valid skew separator tree of g.
TwResult distances_tw(const Graph& g, const SkewSeparatorTree& t, const TwOptions& opts = {});

DistanceReport eccentricities_tw(const Graph& g, const SkewSeparatorTree& t, const TwOptions& opts = {});
std::uint64_t wiener_tw(const Graph& g, const SkewSeparatorTree& t, const TwOptions& opts = {});

}  // namespace twdist
