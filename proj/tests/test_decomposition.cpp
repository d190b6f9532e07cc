#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "support.hpp"
#include "twdist/decomposition.hpp"
#include "twdist/generators.hpp"
#include "twdist/graph_io.hpp"
#include "twdist/separator_tree.hpp"

using namespace twdist;
using namespace twdist::testing;

namespace {

// Minimum over all elimination orders of the largest back-degree (n <= 8).
std::size_t brute_treewidth(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::size_t best = n;
  do {
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
    std::vector<char> gone(n, 0);
    std::size_t width = 0;
    for (Vertex v : order) {
      std::vector<Vertex> nb;
      for (Vertex u = 0; u < n; ++u)
        if (!gone[u] && adj[v][u]) nb.push_back(u);
      width = std::max(width, nb.size());
      for (Vertex a : nb)
        for (Vertex b : nb)
          if (a != b) adj[a][b] = 1;
      gone[v] = 1;
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

TreeDecomposition path_td(std::size_t n) {
  TreeDecomposition td;
  td.vertex_count = n;
  for (Vertex v = 0; v + 1 < n; ++v) td.bags.push_back({v, v + 1});
  for (std::size_t i = 0; i + 1 < td.bags.size(); ++i) td.tree_edges.push_back({i, i + 1});
  return td;
}

}  // namespace

TEST_SUITE("decomposition") {
  TEST_CASE("parse and width") {
    auto one = parse_td("s td 1 4 4\nb 1 1 2 3 4\n");
    CHECK(one.width() == 3);
    auto path = parse_td("c path\ns td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n");
    CHECK(path.width() == 1);
    CHECK(path.bags.size() == 3);
    CHECK(validate_td(path_graph(4), path).ok());
    CHECK(parse_td(format_td(path)).bags == path.bags);
  }

  TEST_CASE("sample file") {
    auto td = parse_td(read_text_file(TWDIST_TEST_DATA "/p4.td"));
    CHECK(td.bags.size() == 3);
    CHECK(td.width() == 1);
    CHECK(validate_td(read_graph_file(TWDIST_TEST_DATA "/p4.gr"), td).ok());
  }

  TEST_CASE("malformed decompositions") {
    CHECK_THROWS_AS(parse_td("s td 2 2 3\nb 1 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_td("s td 1 2 3\nb 1 1 5\n"), ParseError);
    CHECK_THROWS_AS(parse_td("b 1 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_td("s td 1 3 3\nb 1 1 2\n"), ParseError);
  }

  TEST_CASE("violations") {
    auto td = path_td(4);
    td.bags[1] = {1};  // drops edge 2-3
    auto r = validate_td(path_graph(4), td);
    CHECK(r.violated == TdAxiom::kEdgeCoverage);
    CHECK(r.message.find("2-3") != std::string::npos);

    auto gap = path_td(4);
    gap.bags[2] = {0, 2, 3};  // vertex 1 now sits in the first and last bag
    auto c = validate_td(path_graph(4), gap);
    CHECK(c.violated == TdAxiom::kConnectivity);

    auto miss = path_td(4);
    miss.vertex_count = 5;
    CHECK(validate_td(path_graph(5), miss).violated != TdAxiom::kNone);
  }

  TEST_CASE("heuristic decompositions") {
    auto tree = random_connected(40, 0, 1, 8);
    auto td = heuristic_td(tree);
    CHECK(td.width() == 1);
    CHECK(validate_td(tree, td).ok());

    for (std::size_t n = 3; n <= 7; ++n) {
      auto c = cycle_graph(n);
      CHECK(brute_treewidth(c) == 2);
      auto ctd = heuristic_td(c);
      CHECK(ctd.width() == 2);
      CHECK(validate_td(c, ctd).ok());
    }

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto full = gen_partial_ktree(60, 3, 1.0, 1, seed);
      auto htd = heuristic_td(full.graph);
      CHECK(validate_td(full.graph, htd).ok());
      CHECK(htd.width() >= 3);  // a full 3-tree contains K4
    }

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto g = random_connected(7, 5, 1, seed);
      auto htd = heuristic_td(g);
      CHECK(validate_td(g, htd).ok());
      CHECK(htd.width() >= brute_treewidth(g));
    }
  }
}

TEST_SUITE("separator_tree") {
  TEST_CASE("single vertex") {
    Graph g(1, {});
    auto t = skew_separator_tree(g, heuristic_td(g), 1);
    REQUIRE(t.nodes.size() == 1);
    CHECK(t.nodes[t.root].leaf());
    CHECK(t.nodes[t.root].separator == std::vector<Vertex>{0});
    CHECK(validate_sst(g, t, 1).ok);
  }

  TEST_CASE("path of nine vertices") {
    auto g = path_graph(9);
    auto t = skew_separator_tree(g, path_td(9), 2);
    const auto& root = t.nodes[t.root];
    REQUIRE_FALSE(root.leaf());
    CHECK(root.separator.size() <= 2);
    const auto x = t.nodes[root.left].vertices.size();
    CHECK(x * 3 >= 9);
    CHECK(x * 3 <= 18);
    CHECK(validate_sst(g, t, 2).ok);
  }

  TEST_CASE("random partial k-trees") {
    for (std::size_t k = 1; k <= 6; ++k)
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto inst = gen_partial_ktree(150 + 40 * k, k, 0.6, 10, seed * 7 + k);
        auto t = skew_separator_tree(inst.graph, inst.td, k + 1);
        auto r = validate_sst(inst.graph, t, k + 1);
        CHECK_MESSAGE(r.ok, r.message);
      }
  }

  TEST_CASE("k below width + 1 is rejected") {
    auto inst = gen_partial_ktree(50, 3, 1.0, 1, 2);
    CHECK_THROWS_AS(skew_separator_tree(inst.graph, inst.td, 2), InvalidArgument);
  }

  TEST_CASE("crossing edge") {
    auto g = path_graph(3);
    SkewSeparatorTree t;
    t.k = 2;
    t.nodes = {{{0, 1, 2}, {}, 1, 2}, {{0, 1}, {}, -1, -1}, {{2}, {}, -1, -1}};
    t.root = 0;
    auto r = validate_sst(g, t, 2);
    CHECK_FALSE(r.ok);
    CHECK(r.message.find("edge 2-3") != std::string::npos);
  }

  TEST_CASE("fully skewed split") {
    auto g = path_graph(3);
    SkewSeparatorTree t;
    t.k = 2;
    t.nodes = {{{0, 1, 2}, {1}, 1, 2}, {{0, 1, 2}, {}, -1, -1}, {{1}, {1}, -1, -1}};
    t.root = 0;
    auto r = validate_sst(g, t, 2);
    CHECK_FALSE(r.ok);
    CHECK(r.message.find("unbalanced") != std::string::npos);
  }
}
