#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twdist/bounds.hpp"
#include "twdist/errors.hpp"
#include "twdist/monoid.hpp"

namespace twdist {

using Coord = std::int64_t;

template <class V>
struct Point {
  std::vector<Coord> coords;
  V value;
};

template <Monoid M>
typename M::value_type aggregate(std::span<const Point<typename M::value_type>> points) {
  auto acc = M::identity();
  for (const auto& p : points) acc = M::combine(acc, p.value);
  return acc;
}

/// Closed box [l_1,r_1] x ... x [l_d,r_d]; an empty optional is an infinite side.
struct QueryBox {
  std::vector<std::optional<Coord>> lower;
  std::vector<std::optional<Coord>> upper;

  static QueryBox unbounded(std::size_t dims) {
    return {std::vector<std::optional<Coord>>(dims), std::vector<std::optional<Coord>>(dims)};
  }
  std::size_t dimension() const noexcept { return lower.size(); }

  bool contains(std::span<const Coord> q) const {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (lower[j] && q[j] < *lower[j]) return false;
      if (upper[j] && q[j] > *upper[j]) return false;
    }
    return true;
  }
};

/// Per-query work counter. Each concurrent query owns its own.
struct QueryCounter {
  std::uint64_t visited_nodes = 0;
};

/// d-dimensional range tree over a commutative monoid.
///
/// Node x at dimension i represents a canonical subset P_x, sorted by the i-th
/// coordinate (ties broken by the full coordinate vector, then input order).
/// Internal nodes split P_x into the first ceil(|P_x|/2) points (left) and the
/// rest (right). Below the last dimension every node links to the tree over
/// the same points for the next dimension; nodes of the last dimension carry
/// the monoid fold of their subset.
///
/// canonical_size_total() is the sum of |P_x| over all nodes, which bounds the
/// construction work. QueryCounter::visited_nodes counts nodes entered.
///
/// Subtrees over at most `bucket` points are stored as a small point bucket
/// and expanded on the fly. The shape of a subtree depends only on its points,
/// so every observable (node names, counts, visits, results) is the same as
/// for the fully stored tree, which is what bucket = 0 builds.
template <Monoid M>
class RangeTree {
 public:
  using value_type = typename M::value_type;

  static constexpr std::size_t kDefaultBucket = 8;
  static constexpr std::size_t kMaxBucket = 32;

  struct NodeView {
    std::size_t dimension;  // 0-based
    Coord lo;
    Coord hi;
    std::size_t canonical_size;
    bool leaf;
    std::optional<value_type> value;  // only on the last dimension
  };

  /// `coords` holds values.size() points of `dims` coordinates each, row-major.
  static RangeTree build(std::size_t dims, std::span<const Coord> coords, std::span<const value_type> values,
                         std::size_t bucket = kDefaultBucket) {
    if (dims == 0) throw InvalidArgument("range tree dimension must be at least 1");
    if (values.empty()) throw InvalidArgument("range tree over an empty point set");
    if (coords.size() != values.size() * dims) throw InvalidArgument("coordinate count does not match dimension");
    if (values.size() >= kBucketNode) throw ResourceError("too many points for a range tree");
    if (bucket > kMaxBucket) throw InvalidArgument("bucket size above 32");
    RangeTree t;
    t.dims_ = dims;
    t.size_ = values.size();
    t.bucket_ = bucket;
    t.coords_.assign(coords.begin(), coords.end());
    t.point_values_.assign(values.begin(), values.end());
    t.rank_ = t.compute_ranks();
    t.by_rank_.assign(dims * t.size_, 0);
    for (std::size_t dim = 0; dim < dims; ++dim)
      for (std::uint32_t p = 0; p < t.size_; ++p) t.by_rank_[dim * t.size_ + t.rank_[dim * t.size_ + p]] = p;
    t.scratch_.assign(dims, std::vector<std::uint32_t>(t.size_));
    t.bits_.assign((t.size_ + 63) / 64, 0);
    t.fill_virtual_tables();
    std::vector<std::uint32_t> order(t.by_rank_.begin(), t.by_rank_.begin() + static_cast<std::ptrdiff_t>(t.size_));
    t.root_ = t.build_range(0, order.data(), 0, order.size());
    t.rank_ = {};
    t.by_rank_ = {};
    t.bits_ = {};
    t.scratch_ = {};
    return t;
  }

  static RangeTree build(std::span<const Point<value_type>> points, std::size_t dims,
                         std::size_t bucket = kDefaultBucket) {
    std::vector<Coord> coords;
    std::vector<value_type> values;
    coords.reserve(points.size() * dims);
    values.reserve(points.size());
    for (const auto& p : points) {
      if (p.coords.size() != dims) throw InvalidArgument("point dimension mismatch");
      coords.insert(coords.end(), p.coords.begin(), p.coords.end());
      values.push_back(p.value);
    }
    return build(dims, coords, values, bucket);
  }

  value_type query(const QueryBox& box, QueryCounter& counter) const {
    if (box.dimension() != dims_) throw InvalidArgument("query box dimension mismatch");
    return query_node(root_, 0, box, counter);
  }

  value_type query(const QueryBox& box) const {
    QueryCounter unused;
    return query(box, unused);
  }

  std::size_t dimension() const noexcept { return dims_; }
  std::size_t size() const noexcept { return size_; }
  /// Nodes of the full tree, including those kept implicitly in buckets.
  std::uint64_t node_count() const noexcept { return node_total_; }
  /// Nodes actually stored.
  std::size_t stored_node_count() const noexcept { return nodes_.size(); }
  std::uint64_t canonical_size_total() const noexcept { return canonical_total_; }
  /// h = ceil(log2 n).
  std::size_t height() const noexcept { return ceil_log2(size_); }

  /// Node reached by a path of 'L', 'R', 'D' letters from the root.
  std::optional<NodeView> find(std::string_view name) const {
    auto c = locate(name);
    if (!c) return std::nullopt;
    return view(*c);
  }

  /// Input indices of the points in the canonical subset of the named node.
  std::vector<std::size_t> canonical_subset(std::string_view name) const {
    std::vector<std::size_t> out;
    auto c = locate(name);
    if (!c) return out;
    collect(*c, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Visits every node with its L/R/D name. Intended for small trees.
  void for_each_node(const std::function<void(const std::string&, const NodeView&)>& fn) const {
    std::string name;
    walk(enter(root_, 0), name, fn);
  }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint32_t kBucketNode = kNone - 1;

  // Stored node. Kinds by `right`: kNone marks a single-point leaf (left is
  // the point), kBucketNode a bucket (left indexes buckets_), anything else
  // an internal node. On the last dimension `down` indexes values_.
  struct Node {
    Coord lo;
    Coord hi;
    std::uint32_t left;
    std::uint32_t right;
    std::uint32_t down;
    std::uint32_t size;
  };

  // Points of a bucket in the order of its dimension, plus for every later
  // dimension the local indices in that dimension's order.
  struct Bucket {
    std::uint32_t points;  // offset into bucket_points_
    std::uint32_t order;   // offset into bucket_order_
    std::uint8_t count;
    std::uint8_t dim;
  };

  // A node of the full tree: a stored node, or a subset of a bucket.
  struct Cursor {
    std::uint32_t id;    // node id, or bucket index when mask != 0
    std::uint32_t mask;  // local points of the bucket
    std::size_t dim;
  };

  Coord coord(std::uint32_t p, std::size_t dim) const { return coords_[p * dims_ + dim]; }

  // rank_[dim * n + p]: position of p in the global order for `dim`.
  std::vector<std::uint32_t> compute_ranks() const {
    const std::size_t n = size_;
    std::vector<std::uint32_t> ranks(dims_ * n);
    std::vector<std::uint32_t> order(n);
    for (std::size_t dim = 0; dim < dims_; ++dim) {
      std::iota(order.begin(), order.end(), 0u);
      std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        const Coord ca = coord(a, dim), cb = coord(b, dim);
        if (ca != cb) return ca < cb;
        for (std::size_t j = 0; j < dims_; ++j)
          if (coord(a, j) != coord(b, j)) return coord(a, j) < coord(b, j);
        return a < b;
      });
      for (std::size_t r = 0; r < n; ++r) ranks[dim * n + order[r]] = static_cast<std::uint32_t>(r);
    }
    return ranks;
  }

  // Node and canonical totals of a full subtree over m <= bucket points
  // rooted at dimension dim; they depend on m and dim only.
  void fill_virtual_tables() {
    const std::size_t rows = bucket_ + 1;
    virtual_nodes_.assign(rows * dims_, 0);
    virtual_canonical_.assign(rows * dims_, 0);
    for (std::size_t dim = dims_; dim-- > 0;)
      for (std::size_t m = 1; m < rows; ++m) {
        std::uint64_t nodes = 1, canon = m;
        if (m > 1) {
          const std::size_t a = (m + 1) / 2;
          nodes += virtual_nodes_[a * dims_ + dim] + virtual_nodes_[(m - a) * dims_ + dim];
          canon += virtual_canonical_[a * dims_ + dim] + virtual_canonical_[(m - a) * dims_ + dim];
        }
        if (dim + 1 < dims_) {
          nodes += virtual_nodes_[m * dims_ + dim + 1];
          canon += virtual_canonical_[m * dims_ + dim + 1];
        }
        virtual_nodes_[m * dims_ + dim] = nodes;
        virtual_canonical_[m * dims_ + dim] = canon;
      }
  }

  // Writes pts[0..m) to out in the global order of `dim`. Large subsets are
  // bucketed through a rank bitmap, small ones sorted directly.
  void sort_by_dimension(const std::uint32_t* pts, std::size_t m, std::size_t dim, std::uint32_t* out) {
    const std::uint32_t* r = rank_.data() + dim * size_;
    if (m * 64 < size_) {
      std::copy(pts, pts + m, out);
      std::sort(out, out + m, [r](std::uint32_t a, std::uint32_t b) { return r[a] < r[b]; });
      return;
    }
    for (std::size_t i = 0; i < m; ++i) bits_[r[pts[i]] >> 6] |= std::uint64_t{1} << (r[pts[i]] & 63);
    const std::uint32_t* inv = by_rank_.data() + dim * size_;
    std::size_t k = 0;
    for (std::size_t w = 0; w < bits_.size(); ++w) {
      for (std::uint64_t word = bits_[w]; word != 0; word &= word - 1)
        out[k++] = inv[w * 64 + static_cast<std::size_t>(std::countr_zero(word))];
      bits_[w] = 0;
    }
  }

  std::uint32_t new_node() {
    if (nodes_.size() >= kBucketNode - 1) throw ResourceError("range tree node count exceeds 32-bit index space");
    nodes_.push_back({});
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  std::uint32_t make_bucket(std::size_t dim, const std::uint32_t* sorted, std::size_t count) {
    Bucket b{static_cast<std::uint32_t>(bucket_points_.size()), static_cast<std::uint32_t>(bucket_order_.size()),
             static_cast<std::uint8_t>(count), static_cast<std::uint8_t>(dim)};
    bucket_points_.insert(bucket_points_.end(), sorted, sorted + count);
    std::uint8_t local[kMaxBucket];
    for (std::size_t j = dim + 1; j < dims_; ++j) {
      for (std::size_t i = 0; i < count; ++i) local[i] = static_cast<std::uint8_t>(i);
      const std::uint32_t* r = rank_.data() + j * size_;
      std::sort(local, local + count, [&](std::uint8_t x, std::uint8_t y) { return r[sorted[x]] < r[sorted[y]]; });
      bucket_order_.insert(bucket_order_.end(), local, local + count);
    }
    buckets_.push_back(b);
    return static_cast<std::uint32_t>(buckets_.size() - 1);
  }

  // sorted[a..b) is ordered by dimension `dim`.
  std::uint32_t build_range(std::size_t dim, const std::uint32_t* sorted, std::size_t a, std::size_t b) {
    const std::uint32_t id = new_node();
    const std::size_t count = b - a;
    Node node{coord(sorted[a], dim), coord(sorted[b - 1], dim), kNone, kNone, kNone,
              static_cast<std::uint32_t>(count)};
    if (count <= bucket_) {
      node.left = make_bucket(dim, sorted + a, count);
      node.right = kBucketNode;
      node_total_ += virtual_nodes_[count * dims_ + dim];
      canonical_total_ += virtual_canonical_[count * dims_ + dim];
      nodes_[id] = node;
      return id;
    }
    ++node_total_;
    canonical_total_ += count;
    const bool last = dim + 1 == dims_;
    if (count == 1) {
      node.left = sorted[a];
      if (last) {
        node.down = static_cast<std::uint32_t>(values_.size());
        values_.push_back(point_values_[sorted[a]]);
      } else {
        node.down = build_range(dim + 1, sorted + a, 0, 1);
      }
    } else {
      const std::size_t mid = a + (count + 1) / 2;
      node.left = build_range(dim, sorted, a, mid);
      node.right = build_range(dim, sorted, mid, b);
      if (last) {
        node.down = static_cast<std::uint32_t>(values_.size());
        values_.push_back(M::combine(value_of(node.left), value_of(node.right)));
      } else {
        // The subtree for dim + 1 only writes buffers of higher dimensions.
        std::uint32_t* next = scratch_[dim + 1].data();
        sort_by_dimension(sorted + a, count, dim + 1, next);
        node.down = build_range(dim + 1, next, 0, count);
      }
    }
    nodes_[id] = node;
    return id;
  }

  // Fold of a stored last-dimension node.
  value_type value_of(std::uint32_t id) const {
    const Node& x = nodes_[id];
    if (x.right != kBucketNode) return values_[x.down];
    const Bucket& b = buckets_[x.left];
    return fold(b, full_mask(b.count));
  }

  static std::uint32_t full_mask(std::size_t count) {
    return count == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << count) - 1;
  }

  value_type fold(const Bucket& b, std::uint32_t mask) const {
    auto acc = M::identity();
    for (std::uint32_t m = mask; m != 0; m &= m - 1)
      acc = M::combine(acc, point_values_[bucket_points_[b.points + static_cast<std::size_t>(std::countr_zero(m))]]);
    return acc;
  }

  // Local indices of `mask` in the order of dimension `dim`, written to out.
  std::size_t ordered(const Bucket& b, std::uint32_t mask, std::size_t dim, std::uint8_t* out) const {
    std::size_t k = 0;
    if (dim == b.dim) {
      for (std::uint32_t m = mask; m != 0; m &= m - 1) out[k++] = static_cast<std::uint8_t>(std::countr_zero(m));
      return k;
    }
    const std::uint8_t* order = bucket_order_.data() + b.order + (dim - b.dim - 1) * b.count;
    for (std::size_t i = 0; i < b.count; ++i)
      if (mask >> order[i] & 1) out[k++] = order[i];
    return k;
  }

  Coord local_coord(const Bucket& b, std::uint8_t local, std::size_t dim) const {
    return coord(bucket_points_[b.points + local], dim);
  }

  value_type query_bucket(const Bucket& b, std::uint32_t mask, std::size_t dim, const QueryBox& box,
                          QueryCounter& counter) const {
    ++counter.visited_nodes;
    std::uint8_t seq[kMaxBucket];
    const std::size_t m = ordered(b, mask, dim, seq);
    const Coord xlo = local_coord(b, seq[0], dim), xhi = local_coord(b, seq[m - 1], dim);
    const auto& lo = box.lower[dim];
    const auto& hi = box.upper[dim];
    if ((lo && *lo > xhi) || (hi && xlo > *hi)) return M::identity();
    if ((!lo || *lo <= xlo) && (!hi || xhi <= *hi)) {
      if (dim + 1 == dims_) return fold(b, mask);
      return query_bucket(b, mask, dim + 1, box, counter);
    }
    const auto [left, right] = split(seq, m);
    return M::combine(query_bucket(b, left, dim, box, counter), query_bucket(b, right, dim, box, counter));
  }

  static std::pair<std::uint32_t, std::uint32_t> split(const std::uint8_t* seq, std::size_t m) {
    std::uint32_t left = 0, right = 0;
    const std::size_t a = (m + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) (i < a ? left : right) |= std::uint32_t{1} << seq[i];
    return {left, right};
  }

  value_type query_node(std::uint32_t id, std::size_t dim, const QueryBox& box, QueryCounter& counter) const {
    const Node& x = nodes_[id];
    if (x.right == kBucketNode) {
      const Bucket& b = buckets_[x.left];
      return query_bucket(b, full_mask(b.count), dim, box, counter);
    }
    ++counter.visited_nodes;
    const auto& lo = box.lower[dim];
    const auto& hi = box.upper[dim];
    if ((lo && *lo > x.hi) || (hi && x.lo > *hi)) return M::identity();
    if ((!lo || *lo <= x.lo) && (!hi || x.hi <= *hi)) {
      if (dim + 1 == dims_) return values_[x.down];
      return query_node(x.down, dim + 1, box, counter);
    }
    return M::combine(query_node(x.left, dim, box, counter), query_node(x.right, dim, box, counter));
  }

  // Cursor for stored node id at dimension dim, opening buckets.
  Cursor enter(std::uint32_t id, std::size_t dim) const {
    const Node& x = nodes_[id];
    if (x.right == kBucketNode) return {x.left, full_mask(buckets_[x.left].count), dim};
    return {id, 0, dim};
  }

  struct Children {
    std::optional<Cursor> left, right, down;
  };

  Children children(const Cursor& c) const {
    Children out;
    const bool more = c.dim + 1 < dims_;
    if (c.mask != 0) {
      const Bucket& b = buckets_[c.id];
      std::uint8_t seq[kMaxBucket];
      const std::size_t m = ordered(b, c.mask, c.dim, seq);
      if (m > 1) {
        const auto [l, r] = split(seq, m);
        out.left = Cursor{c.id, l, c.dim};
        out.right = Cursor{c.id, r, c.dim};
      }
      if (more) out.down = Cursor{c.id, c.mask, c.dim + 1};
      return out;
    }
    const Node& x = nodes_[c.id];
    if (x.right != kNone) {
      out.left = enter(x.left, c.dim);
      out.right = enter(x.right, c.dim);
    }
    if (more) out.down = enter(x.down, c.dim + 1);
    return out;
  }

  std::optional<Cursor> locate(std::string_view name) const {
    Cursor c = enter(root_, 0);
    for (char ch : name) {
      const auto kids = children(c);
      const auto& next = ch == 'L' ? kids.left : ch == 'R' ? kids.right : ch == 'D' ? kids.down : std::nullopt;
      if (!next) return std::nullopt;
      c = *next;
    }
    return c;
  }

  NodeView view(const Cursor& c) const {
    const bool last = c.dim + 1 == dims_;
    if (c.mask != 0) {
      const Bucket& b = buckets_[c.id];
      std::uint8_t seq[kMaxBucket];
      const std::size_t m = ordered(b, c.mask, c.dim, seq);
      NodeView v{c.dim, local_coord(b, seq[0], c.dim), local_coord(b, seq[m - 1], c.dim), m, m == 1, std::nullopt};
      if (last) v.value = fold(b, c.mask);
      return v;
    }
    const Node& x = nodes_[c.id];
    NodeView v{c.dim, x.lo, x.hi, x.size, x.right == kNone, std::nullopt};
    if (last) v.value = values_[x.down];
    return v;
  }

  void collect(const Cursor& c, std::vector<std::size_t>& out) const {
    if (c.mask != 0) {
      const Bucket& b = buckets_[c.id];
      for (std::uint32_t m = c.mask; m != 0; m &= m - 1)
        out.push_back(bucket_points_[b.points + static_cast<std::size_t>(std::countr_zero(m))]);
      return;
    }
    const Node& x = nodes_[c.id];
    if (x.right == kNone) {
      out.push_back(x.left);
      return;
    }
    collect(enter(x.left, c.dim), out);
    collect(enter(x.right, c.dim), out);
  }

  void walk(const Cursor& c, std::string& name,
            const std::function<void(const std::string&, const NodeView&)>& fn) const {
    fn(name, view(c));
    const auto kids = children(c);
    if (kids.left) {
      name.push_back('L');
      walk(*kids.left, name, fn);
      name.back() = 'R';
      walk(*kids.right, name, fn);
      name.pop_back();
    }
    if (kids.down) {
      name.push_back('D');
      walk(*kids.down, name, fn);
      name.pop_back();
    }
  }

  std::size_t dims_ = 0;
  std::size_t size_ = 0;
  std::size_t bucket_ = 0;
  std::uint32_t root_ = 0;
  std::uint64_t canonical_total_ = 0;
  std::uint64_t node_total_ = 0;
  std::vector<Coord> coords_;
  std::vector<value_type> point_values_;
  std::vector<std::uint32_t> rank_;     // rank_[dim * n + p], build only
  std::vector<std::uint32_t> by_rank_;  // inverse of rank_ per dimension, build only
  std::vector<std::vector<std::uint32_t>> scratch_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint64_t> virtual_nodes_;
  std::vector<std::uint64_t> virtual_canonical_;
  std::vector<Node> nodes_;
  std::vector<value_type> values_;
  std::vector<Bucket> buckets_;
  std::vector<std::uint32_t> bucket_points_;
  std::vector<std::uint8_t> bucket_order_;
};

}  // namespace twdist
