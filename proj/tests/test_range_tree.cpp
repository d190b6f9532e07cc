#include <doctest.h>

#include <map>
#include <string>

#include "twdist/bounds.hpp"
#include "twdist/generators.hpp"
#include "twdist/oracle.hpp"
#include "twdist/range_tree.hpp"

using namespace twdist;

namespace {

using MaxTree = RangeTree<MaxDistance>;
using CountTree = RangeTree<CountSum>;

// p(0,0,0)=5, q(2,0,0)=6, r(0,2,1)=7, s(2,1,2)=8
std::vector<Point<MaxDistance::value_type>> four_points() {
  return {{{0, 0, 0}, 5}, {{2, 0, 0}, 6}, {{0, 2, 1}, 7}, {{2, 1, 2}, 8}};
}

QueryBox box3(std::optional<Coord> xl, std::optional<Coord> xh) {
  auto b = QueryBox::unbounded(3);
  b.lower[0] = xl;
  b.upper[0] = xh;
  return b;
}

// Sum of canonical subset sizes and node count of a tree over m points with
// `dims` dimensions left, straight from the recursive definition.
std::pair<std::uint64_t, std::uint64_t> definition_totals(std::size_t m, std::size_t dims) {
  std::uint64_t canon = m, nodes = 1;
  if (dims > 1) {
    const auto [c, k] = definition_totals(m, dims - 1);
    canon += c, nodes += k;
  }
  if (m > 1) {
    const auto l = definition_totals((m + 1) / 2, dims);
    const auto r = definition_totals(m / 2, dims);
    canon += l.first + r.first, nodes += l.second + r.second;
  }
  return {canon, nodes};
}

// Largest visit count the query recursion can reach on a tree over m points
// with `dims` dimensions left. `cut` says which box sides may fall strictly
// inside the node's range: bit 0 the lower, bit 1 the upper.
std::uint64_t worst_visits(std::size_t dims, std::size_t m, int cut) {
  static std::map<std::tuple<std::size_t, std::size_t, int>, std::uint64_t> memo;
  const auto key = std::make_tuple(dims, m, cut);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const std::uint64_t covered = dims == 1 ? 1 : 1 + worst_visits(dims - 1, m, 3);
  std::uint64_t best = covered;
  if (cut != 0 && m > 1) {
    const std::size_t l = (m + 1) / 2, r = m / 2;
    auto w = [&](std::size_t size, int c) { return worst_visits(dims, size, c); };
    std::uint64_t split = 0;
    if (cut & 1) split = std::max({split, w(l, 1) + w(r, 0), 1 + w(r, 1)});  // lower side in left or right
    if (cut & 2) split = std::max({split, w(l, 2) + 1, w(l, 0) + w(r, 2)});
    if (cut == 3) split = std::max({split, w(l, 3) + 1, 1 + w(r, 3), w(l, 1) + w(r, 2)});
    best = std::max(best, 1 + split);
    if (cut == 3) best = std::max({best, w(m, 1), w(m, 2)});
  }
  return memo[key] = best;
}

QueryBox random_box(SplitMix64& rng, std::size_t d, Coord lo, Coord hi) {
  QueryBox b = QueryBox::unbounded(d);
  for (std::size_t j = 0; j < d; ++j) {
    Coord a = rng.between(lo - 2, hi + 2), c = rng.between(lo - 2, hi + 2);
    if (a > c) std::swap(a, c);
    if (!rng.chance(0.15)) b.lower[j] = a;
    if (!rng.chance(0.15)) b.upper[j] = c;
  }
  return b;
}

}  // namespace

TEST_SUITE("range_tree") {
  TEST_CASE("aggregate of the four-point example") {
    const auto pts = four_points();
    std::vector<Point<MaxDistance::value_type>> prs{pts[0], pts[2], pts[3]};
    // f(s) = 8 dominates {p,r,s}
    CHECK(aggregate<MaxDistance>(std::span<const Point<MaxDistance::value_type>>(prs)) == Distance{8});
    CHECK_FALSE(aggregate<MaxDistance>(std::span<const Point<MaxDistance::value_type>>()).has_value());

    std::vector<Point<CountSumValue>> counts{{{0}, {1, 5}}, {{0}, {1, 6}}, {{0}, {1, 7}}, {{0}, {1, 8}}};
    CHECK(aggregate<CountSum>(std::span<const Point<CountSumValue>>(counts)) == CountSumValue{4, 26});
  }

  TEST_CASE("four-point tree structure") {
    const auto pts = four_points();
    for (std::size_t bucket : {std::size_t{0}, std::size_t{8}}) {
      CAPTURE(bucket);
      const auto t = MaxTree::build(pts, 3, bucket);
      CHECK(t.canonical_subset("L") == std::vector<std::size_t>{0, 2});
      CHECK(t.canonical_subset("R") == std::vector<std::size_t>{1, 3});
      // second dimension orders p, q, s, r
      CHECK(t.canonical_subset("DL") == std::vector<std::size_t>{0, 1});
      CHECK(t.canonical_subset("DR") == std::vector<std::size_t>{2, 3});

      CHECK(t.find("DD")->value == std::optional<MaxDistance::value_type>(Distance{8}));
      const auto dld = *t.find("DLD");
      CHECK(dld.lo == 0);
      CHECK(dld.hi == 0);
      CHECK(dld.value == std::optional<MaxDistance::value_type>(Distance{6}));
      const auto drd = *t.find("DRD");
      CHECK(drd.lo == 1);
      CHECK(drd.hi == 2);
      CHECK(drd.value == std::optional<MaxDistance::value_type>(Distance{8}));
      const auto ldd = *t.find("LDD");
      CHECK(ldd.lo == 0);
      CHECK(ldd.hi == 1);
      CHECK(ldd.value == std::optional<MaxDistance::value_type>(Distance{7}));
      CHECK(t.find("RDD")->value == std::optional<MaxDistance::value_type>(Distance{8}));
      CHECK(t.find("D")->dimension == 1);
      CHECK_FALSE(t.find("DDD").has_value());
      CHECK_FALSE(t.find("LLL").has_value());
    }
  }

  TEST_CASE("four-point queries") {
    const auto pts = four_points();
    const auto t = MaxTree::build(pts, 3);
    CHECK(t.query(box3(0, 0)) == Distance{7});
    CHECK(t.query(QueryBox::unbounded(3)) == Distance{8});
    CHECK(range_query_oracle<MaxDistance>(std::span<const Point<MaxDistance::value_type>>(pts), QueryBox::unbounded(3)) ==
          Distance{8});
    CHECK_FALSE(t.query(box3(3, std::nullopt)).has_value());
    CHECK_FALSE(range_query_oracle<MaxDistance>(std::span<const Point<MaxDistance::value_type>>(pts),
                                                box3(3, std::nullopt))
                    .has_value());
  }

  TEST_CASE("single point is a leaf chain") {
    std::vector<Point<MaxDistance::value_type>> one{{{4, -1, 9}, 3}};
    const auto t = MaxTree::build(one, 3);
    const std::string names[] = {"", "D", "DD"};
    for (std::size_t i = 0; i < 3; ++i) {
      const auto v = *t.find(names[i]);
      CHECK(v.leaf);
      CHECK(v.lo == one[0].coords[i]);
      CHECK(v.hi == one[0].coords[i]);
      CHECK(v.canonical_size == 1);
    }
    CHECK(t.find("DD")->value == std::optional<MaxDistance::value_type>(Distance{3}));
    CHECK(t.node_count() == 3);
  }

  TEST_CASE("rejects bad input") {
    std::vector<Point<MaxDistance::value_type>> none;
    CHECK_THROWS_AS(MaxTree::build(none, 2), InvalidArgument);
    auto pts = four_points();
    CHECK_THROWS_AS(MaxTree::build(pts, 0), InvalidArgument);
    CHECK_THROWS_AS(MaxTree::build(pts, 3, 33), InvalidArgument);
  }

  TEST_CASE("binomial bound") {
    CHECK(binomial_bound(1, 5) == 1);
    CHECK(binomial_bound(777, 0) == 1);
    CHECK(binomial_bound(1024, 3) == 286);
    CHECK(binomial(10, 11) == 0);
    CHECK_THROWS_AS(binomial(200, 100), OverflowError);
  }

  TEST_CASE("canonical totals follow the definition and the bound") {
    for (std::size_t n : {1, 2, 3, 7, 64, 100, 256}) {
      for (std::size_t d = 1; d <= 4; ++d) {
        auto pts = gen_points_count(n, d, 0, 50, n * 31 + d);
        const auto t = CountTree::build(pts, d);
        const auto [canon, nodes] = definition_totals(n, d);
        CHECK(t.canonical_size_total() == canon);
        CHECK(t.node_count() == nodes);
        CHECK(t.canonical_size_total() <= construction_bound(n, d));
      }
    }
  }

  TEST_CASE("bucketed storage is observably identical to full storage") {
    for (std::size_t d = 1; d <= 4; ++d) {
      auto pts = gen_points_max(70, d, 0, 6, 100 + d);  // small range forces ties
      const auto full = MaxTree::build(pts, d, 0);
      const auto packed = MaxTree::build(pts, d, 8);
      CHECK(packed.stored_node_count() < full.stored_node_count());
      CHECK(packed.node_count() == full.node_count());
      CHECK(packed.canonical_size_total() == full.canonical_size_total());

      std::map<std::string, std::tuple<std::size_t, Coord, Coord, std::size_t, bool, std::optional<MaxDistance::value_type>>>
          a, b;
      full.for_each_node([&](const std::string& name, const auto& v) {
        a[name] = {v.dimension, v.lo, v.hi, v.canonical_size, v.leaf, v.value};
      });
      packed.for_each_node([&](const std::string& name, const auto& v) {
        b[name] = {v.dimension, v.lo, v.hi, v.canonical_size, v.leaf, v.value};
      });
      CHECK(a == b);
      CHECK(a.size() == full.node_count());

      SplitMix64 rng(d);
      for (int i = 0; i < 200; ++i) {
        const auto box = random_box(rng, d, 0, 6);
        QueryCounter ca, cb;
        CHECK(full.query(box, ca) == packed.query(box, cb));
        CHECK(ca.visited_nodes == cb.visited_nodes);
      }
    }
  }

  TEST_CASE("random boxes agree with the linear scan") {
    SplitMix64 rng(42);
    for (int inst = 0; inst < 20; ++inst) {
      const std::size_t n = 1 + rng.below(512), d = 1 + rng.below(6);
      const Coord hi = rng.chance(0.5) ? 8 : 1000;
      auto mp = gen_points_max(n, d, 0, hi, rng.next());
      auto cp = gen_points_count(n, d, 0, hi, rng.next());
      const auto mt = MaxTree::build(mp, d);
      const auto ct = CountTree::build(cp, d);
      for (int q = 0; q < 25; ++q) {
        const auto box = random_box(rng, d, 0, hi);
        QueryCounter c;
        REQUIRE(mt.query(box, c) ==
                range_query_oracle<MaxDistance>(std::span<const Point<MaxDistance::value_type>>(mp), box));
        CHECK(c.visited_nodes <= worst_visits(d, n, 3));
        REQUIRE(ct.query(box) == range_query_oracle<CountSum>(std::span<const Point<CountSumValue>>(cp), box));
      }
    }
  }

  TEST_CASE("visit counts in one dimension") {
    std::vector<Point<MaxDistance::value_type>> pts;
    for (Coord c = 0; c < 16; ++c) pts.push_back({{c}, Distance(c)});
    const auto t = MaxTree::build(pts, 1);
    auto box = QueryBox::unbounded(1);
    box.lower[0] = 1;
    box.upper[0] = 14;
    QueryCounter c;
    CHECK(t.query(box, c) == Distance{14});
    // root, then on each side 7 nodes: the path down to the cut leaf and the
    // covered or rejected sibling at every level
    CHECK(c.visited_nodes == 15);
    CHECK(query_visit_bound(16, 1) == 10);

    std::uint64_t two_sided = 0, one_sided = 0;
    for (Coord l = -1; l <= 16; ++l)
      for (Coord r = l; r <= 16; ++r) {
        box.lower[0] = l;
        box.upper[0] = r;
        QueryCounter q;
        t.query(box, q);
        two_sided = std::max(two_sided, q.visited_nodes);
      }
    box.lower[0] = std::nullopt;
    for (Coord r = -1; r <= 16; ++r) {
      box.upper[0] = r;
      QueryCounter q;
      t.query(box, q);
      one_sided = std::max(one_sided, q.visited_nodes);
    }
    CHECK(two_sided == worst_visits(1, 16, 3));
    CHECK(one_sided == worst_visits(1, 16, 2));
    CHECK(one_sided <= query_visit_bound(16, 1));
  }

  TEST_CASE("one-sided boxes stay within 2^d C(h+d,d)") {
    SplitMix64 rng(6);
    for (std::size_t d = 1; d <= 5; ++d)
      for (std::size_t n : {16, 100, 512}) {
        auto pts = gen_points_count(n, d, 0, 1000, rng.next());
        const auto t = CountTree::build(pts, d);
        for (int q = 0; q < 200; ++q) {
          auto box = random_box(rng, d, 0, 1000);
          for (auto& lo : box.lower) lo = std::nullopt;
          QueryCounter c;
          t.query(box, c);
          CHECK(c.visited_nodes <= worst_visits(d, n, 2));
          CHECK(c.visited_nodes <= query_visit_bound(n, d));
        }
      }
  }

  TEST_CASE("box entirely above the points gives the identity") {
    auto pts = gen_points_count(40, 2, 0, 10, 9);
    const auto t = CountTree::build(pts, 2);
    auto box = QueryBox::unbounded(2);
    box.lower[0] = 11;
    CHECK(t.query(box) == CountSumValue{});
  }

  TEST_CASE("small dimension inequality") {
    for (unsigned h = 2; h <= 20; ++h)
      for (unsigned d = 1; d < h; ++d) CHECK(small_dimension_bound_holds(d, h));
  }
}
