#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "twdist/decomposition.hpp"
#include "twdist/graph.hpp"
#include "twdist/monoid.hpp"
#include "twdist/range_tree.hpp"
#include "twdist/vc_distance.hpp"

namespace twdist {

/// SplitMix64 stream. Bounded draws use the multiply-high method with
/// rejection, so sequences are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) noexcept;

  /// True with probability p (53-bit resolution).
  bool chance(double p) noexcept;

  /// Independent stream derived from this one's seed and `index`.
  static SplitMix64 split(std::uint64_t seed, std::uint64_t index) noexcept;

 private:
  std::uint64_t state_;
};

struct GeneratedTw {
  Graph graph;
  TreeDecomposition td;
};

/// Random k-tree on n vertices with non-spanning edges kept independently with
/// probability keep_prob; lengths uniform in [1, weight_max]. The returned
/// decomposition (one bag per added vertex) has width k. Vertex ids are
/// shuffled so the construction order is not visible in the ids.
GeneratedTw gen_partial_ktree(std::size_t n, std::size_t k, double keep_prob, Weight weight_max, std::uint64_t seed);

struct GeneratedVc {
  Graph graph;
  VertexCover cover;
};

/// Connected unweighted graph whose edges all touch the cover {0, ..., k-1}.
/// With `universal`, cover vertex 0 is adjacent to every vertex, so the
/// diameter is at most 2.
GeneratedVc gen_planted_cover(std::size_t n, std::size_t k, std::uint64_t seed, bool universal = false);

/// n points with coordinates uniform in [lo, hi]. Values are uniform in
/// [0, 1000]; count values are 1.
std::vector<Point<MaxDistance::value_type>> gen_points_max(std::size_t n, std::size_t d, Coord lo, Coord hi,
                                                           std::uint64_t seed);
std::vector<Point<CountSumValue>> gen_points_count(std::size_t n, std::size_t d, Coord lo, Coord hi,
                                                   std::uint64_t seed);

}  // namespace twdist
