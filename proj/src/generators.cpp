#include "twdist/generators.hpp"

#include <algorithm>
#include <numeric>

namespace twdist {

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
  // Lemire's nearly divisionless method.
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::int64_t SplitMix64::between(std::int64_t lo, std::int64_t hi) noexcept {
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
  const std::uint64_t off = span == ~std::uint64_t{0} ? next() : below(span + 1);
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + off);
}

bool SplitMix64::chance(double p) noexcept {
  return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
}

SplitMix64 SplitMix64::split(std::uint64_t seed, std::uint64_t index) noexcept {
  SplitMix64 mix(seed ^ (index * 0xd1b54a32d192ed03ULL));
  return SplitMix64(mix.next());
}

namespace {

template <class T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

}  // namespace

GeneratedTw gen_partial_ktree(std::size_t n, std::size_t k, double keep_prob, Weight weight_max, std::uint64_t seed) {
  if (k < 1 || n <= k) throw InvalidArgument("partial k-tree needs n > k >= 1");
  if (weight_max < 1) throw InvalidArgument("weight_max must be at least 1");
  SplitMix64 rng(seed);
  std::vector<Vertex> label(n);
  std::iota(label.begin(), label.end(), Vertex{0});
  shuffle(label, rng);
  auto weight = [&] { return static_cast<Weight>(rng.between(1, static_cast<std::int64_t>(weight_max))); };

  std::vector<Edge> edges;
  TreeDecomposition td;
  td.vertex_count = n;
  // Initial clique on construction vertices 0..k: a spanning path plus optional chords.
  std::vector<Vertex> first(k + 1);
  std::iota(first.begin(), first.end(), Vertex{0});
  for (std::size_t a = 0; a <= k; ++a)
    for (std::size_t b = a + 1; b <= k; ++b)
      if (b == a + 1 || rng.chance(keep_prob)) edges.push_back({label[a], label[b], weight()});
  td.bags.push_back(first);

  for (std::size_t v = k + 1; v < n; ++v) {
    const std::size_t host = rng.below(td.bags.size());
    std::vector<Vertex> clique = td.bags[host];
    clique.erase(clique.begin() + static_cast<std::ptrdiff_t>(rng.below(clique.size())));
    const std::size_t anchor = rng.below(clique.size());
    for (std::size_t i = 0; i < clique.size(); ++i)
      if (i == anchor || rng.chance(keep_prob)) edges.push_back({label[clique[i]], label[v], weight()});
    clique.push_back(static_cast<Vertex>(v));
    td.bags.push_back(std::move(clique));
    td.tree_edges.emplace_back(host, td.bags.size() - 1);
  }
  for (auto& bag : td.bags) {
    for (auto& x : bag) x = label[x];
    std::sort(bag.begin(), bag.end());
  }
  return {Graph(n, edges), std::move(td)};
}

GeneratedVc gen_planted_cover(std::size_t n, std::size_t k, std::uint64_t seed, bool universal) {
  if (k < 1 || n <= k) throw InvalidArgument("planted cover needs n > k >= 1");
  SplitMix64 rng(seed);
  const double density = 0.15 + 0.45 * static_cast<double>(rng.below(1000)) / 1000.0;
  std::vector<Edge> edges;
  for (Vertex a = 0; a < k; ++a)
    for (Vertex b = a + 1; b < k; ++b)
      if (rng.chance(0.5) || (universal && a == 0)) edges.push_back({a, b, 1});
  for (Vertex w = static_cast<Vertex>(k); w < n; ++w) {
    bool any = false;
    for (Vertex c = 0; c < k; ++c)
      if (rng.chance(density) || (universal && c == 0)) {
        edges.push_back({c, w, 1});
        any = true;
      }
    if (!any) edges.push_back({static_cast<Vertex>(rng.below(k)), w, 1});
  }

  // Join components through edges between cover vertices.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) parent[find(e.u)] = find(e.v);
  for (Vertex c = 1; c < k; ++c)
    if (find(c) != find(0)) {
      edges.push_back({0, c, 1});
      parent[find(c)] = find(0);
    }
  std::vector<Vertex> cover(k);
  std::iota(cover.begin(), cover.end(), Vertex{0});
  return {Graph(n, edges), VertexCover::from(std::move(cover))};
}

namespace {

template <class V, class ValueFn>
std::vector<Point<V>> gen_points(std::size_t n, std::size_t d, Coord lo, Coord hi, std::uint64_t seed,
                                 ValueFn value) {
  if (lo > hi) throw InvalidArgument("empty coordinate range");
  SplitMix64 rng(seed);
  std::vector<Point<V>> pts(n);
  for (auto& p : pts) {
    p.coords.resize(d);
    for (auto& c : p.coords) c = rng.between(lo, hi);
    p.value = value(rng);
  }
  return pts;
}

}  // namespace

std::vector<Point<MaxDistance::value_type>> gen_points_max(std::size_t n, std::size_t d, Coord lo, Coord hi,
                                                           std::uint64_t seed) {
  return gen_points<MaxDistance::value_type>(n, d, lo, hi, seed,
                                             [](SplitMix64& r) { return MaybeDistance(r.below(1001)); });
}

std::vector<Point<CountSumValue>> gen_points_count(std::size_t n, std::size_t d, Coord lo, Coord hi,
                                                   std::uint64_t seed) {
  return gen_points<CountSumValue>(n, d, lo, hi, seed, [](SplitMix64& r) { return CountSumValue{1, r.below(1001)}; });
}

}  // namespace twdist
