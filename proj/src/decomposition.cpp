#include "twdist/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "text_lines.hpp"

namespace twdist {

std::size_t TreeDecomposition::width() const noexcept {
  std::size_t largest = 0;
  for (const auto& b : bags) largest = std::max(largest, b.size());
  return largest == 0 ? 0 : largest - 1;
}

TreeDecomposition parse_td(std::string_view text) {
  TreeDecomposition td;
  bool have_header = false;
  std::size_t bag_count = 0, max_bag = 0;
  std::vector<char> defined;

  detail::for_each_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& tok) {
    if (tok.empty() || tok[0] == "c") return;
    if (tok[0] == "s") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (tok.size() != 5 || tok[1] != "td") throw ParseError(line_no, "header must be 's td <bags> <width+1> <n>'");
      bag_count = detail::parse_uint(tok[2], line_no, "bag count");
      max_bag = detail::parse_uint(tok[3], line_no, "bag size");
      td.vertex_count = detail::parse_uint(tok[4], line_no, "vertex count");
      td.bags.resize(bag_count);
      defined.assign(bag_count, 0);
      have_header = true;
      return;
    }
    if (!have_header) throw ParseError(line_no, "content before 's td' header");
    if (tok[0] == "b") {
      if (tok.size() < 2) throw ParseError(line_no, "bag line without id");
      const auto id = detail::parse_uint(tok[1], line_no, "bag id");
      if (id < 1 || id > bag_count) throw ParseError(line_no, "bag id out of range");
      if (defined[id - 1]) throw ParseError(line_no, "bag " + std::to_string(id) + " defined twice");
      defined[id - 1] = 1;
      auto& bag = td.bags[id - 1];
      for (std::size_t i = 2; i < tok.size(); ++i) {
        const auto v = detail::parse_uint(tok[i], line_no, "vertex id");
        if (v < 1 || v > td.vertex_count) throw ParseError(line_no, "vertex id out of range");
        bag.push_back(static_cast<Vertex>(v - 1));
      }
      std::sort(bag.begin(), bag.end());
      if (std::adjacent_find(bag.begin(), bag.end()) != bag.end())
        throw ParseError(line_no, "vertex repeated within a bag");
      return;
    }
    if (tok.size() != 2) throw ParseError(line_no, "malformed tree edge");
    const auto a = detail::parse_uint(tok[0], line_no, "bag id");
    const auto b = detail::parse_uint(tok[1], line_no, "bag id");
    if (a < 1 || a > bag_count || b < 1 || b > bag_count) throw ParseError(line_no, "tree edge bag id out of range");
    td.tree_edges.emplace_back(a - 1, b - 1);
  });
  if (!have_header) throw ParseError(0, "missing 's td' header");
  for (std::size_t i = 0; i < bag_count; ++i)
    if (!defined[i]) throw ParseError(0, "bag " + std::to_string(i + 1) + " is never defined");
  std::size_t largest = 0;
  for (const auto& b : td.bags) largest = std::max(largest, b.size());
  if (largest != max_bag)
    throw ParseError(0, "header announces bag size " + std::to_string(max_bag) + ", largest bag has " +
                            std::to_string(largest));
  return td;
}

std::string format_td(const TreeDecomposition& td) {
  std::ostringstream out;
  out << "s td " << td.bags.size() << ' ' << (td.bags.empty() ? 0 : td.width() + 1) << ' ' << td.vertex_count
      << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (Vertex v : td.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (const auto& [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
  return out.str();
}

namespace {

std::string vname(Vertex v) { return std::to_string(v + 1); }

}  // namespace

TdReport validate_td(const Graph& g, const TreeDecomposition& td) {
  const std::size_t n = g.vertex_count();
  const std::size_t nb = td.bags.size();
  if (td.vertex_count != n)
    return {TdAxiom::kStructure, "decomposition is for " + std::to_string(td.vertex_count) + " vertices, graph has " +
                                     std::to_string(n)};
  for (std::size_t i = 0; i < nb; ++i)
    for (Vertex v : td.bags[i])
      if (v >= n) return {TdAxiom::kStructure, "bag " + std::to_string(i + 1) + " contains unknown vertex"};

  // The bag graph must be a tree.
  if (nb > 0) {
    if (td.tree_edges.size() != nb - 1)
      return {TdAxiom::kStructure, "bag tree has " + std::to_string(td.tree_edges.size()) + " edges, expected " +
                                       std::to_string(nb - 1)};
    std::vector<std::size_t> parent(nb);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [a, b] : td.tree_edges) {
      if (a >= nb || b >= nb) return {TdAxiom::kStructure, "tree edge references unknown bag"};
      const auto ra = find(a), rb = find(b);
      if (ra == rb)
        return {TdAxiom::kStructure, "bag tree has a cycle through " + std::to_string(a + 1) + "-" +
                                         std::to_string(b + 1)};
      parent[ra] = rb;
    }
  }

  std::vector<std::vector<std::size_t>> occurs(n);
  for (std::size_t i = 0; i < nb; ++i)
    for (Vertex v : td.bags[i]) occurs[v].push_back(i);
  for (Vertex v = 0; v < n; ++v)
    if (occurs[v].empty()) return {TdAxiom::kVertexCoverage, "vertex " + vname(v) + " is in no bag"};

  for (const auto& e : g.edges()) {
    const auto& a = occurs[e.u];
    const auto& b = occurs[e.v];
    std::size_t i = 0, j = 0;
    bool covered = false;
    while (i < a.size() && j < b.size() && !covered) {
      if (a[i] == b[j]) covered = true;
      else if (a[i] < b[j]) ++i;
      else ++j;
    }
    if (!covered) return {TdAxiom::kEdgeCoverage, "edge " + vname(e.u) + "-" + vname(e.v) + " is in no bag"};
  }

  // In a tree, the bags holding v are connected iff they span |bags(v)| - 1 tree edges.
  std::vector<std::size_t> inner_edges(n, 0);
  for (const auto& [a, b] : td.tree_edges) {
    const auto& x = td.bags[a];
    const auto& y = td.bags[b];
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i] == y[j]) {
        ++inner_edges[x[i]];
        ++i, ++j;
      } else if (x[i] < y[j]) {
        ++i;
      } else {
        ++j;
      }
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (inner_edges[v] + 1 != occurs[v].size())
      return {TdAxiom::kConnectivity, "bags containing vertex " + vname(v) + " are not connected in the tree"};
  return {};
}

TreeDecomposition heuristic_td(const Graph& g) {
  const std::size_t n = g.vertex_count();
  TreeDecomposition td;
  td.vertex_count = n;
  if (n == 0) return td;

  std::vector<std::vector<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v)
    for (const auto& a : g.neighbors(v)) adj[v].push_back(a.to);

  std::vector<std::uint32_t> mark(n, 0);
  std::uint32_t stamp = 0;
  auto fill_of = [&](Vertex v) -> std::uint64_t {
    const auto& nv = adj[v];
    ++stamp;
    for (Vertex u : nv) mark[u] = stamp;
    std::uint64_t inner = 0;
    for (Vertex u : nv)
      for (Vertex w : adj[u])
        if (mark[w] == stamp) ++inner;
    const std::uint64_t d = nv.size();
    return d * (d - 1) / 2 - inner / 2;
  };
  auto adjacent = [&](Vertex a, Vertex b) { return std::binary_search(adj[a].begin(), adj[a].end(), b); };
  auto insert_sorted = [](std::vector<Vertex>& list, Vertex x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  };

  using Key = std::tuple<std::uint64_t, std::size_t, Vertex>;
  std::set<Key> queue;
  std::vector<Key> key(n);
  for (Vertex v = 0; v < n; ++v) {
    key[v] = {fill_of(v), adj[v].size(), v};
    queue.insert(key[v]);
  }

  std::vector<std::size_t> position(n);
  std::vector<std::vector<Vertex>> higher(n);  // neighbours at elimination time
  std::vector<char> eliminated(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    const Vertex v = std::get<2>(*queue.begin());
    queue.erase(queue.begin());
    eliminated[v] = 1;
    position[v] = step;
    const std::vector<Vertex> nb = adj[v];
    higher[v] = nb;

    std::vector<std::pair<Vertex, Vertex>> added;
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (!adjacent(nb[i], nb[j])) added.emplace_back(nb[i], nb[j]);
    for (Vertex u : nb) adj[u].erase(std::lower_bound(adj[u].begin(), adj[u].end(), v));
    for (const auto& [a, b] : added) {
      insert_sorted(adj[a], b);
      insert_sorted(adj[b], a);
    }
    adj[v].clear();

    std::vector<Vertex> affected(nb.begin(), nb.end());
    for (const auto& [a, b] : added) {
      const auto& small = adj[a].size() < adj[b].size() ? adj[a] : adj[b];
      const Vertex other = adj[a].size() < adj[b].size() ? b : a;
      for (Vertex w : small)
        if (w != other && adjacent(other, w)) affected.push_back(w);
    }
    std::sort(affected.begin(), affected.end());
    affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
    for (Vertex u : affected) {
      queue.erase(key[u]);
      key[u] = {fill_of(u), adj[u].size(), u};
      queue.insert(key[u]);
    }
  }

  td.bags.resize(n);
  std::vector<std::size_t> roots;
  for (Vertex v = 0; v < n; ++v) {
    auto& bag = td.bags[v];
    bag = higher[v];
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    if (higher[v].empty()) {
      roots.push_back(v);
      continue;
    }
    const Vertex parent = *std::min_element(higher[v].begin(), higher[v].end(),
                                            [&](Vertex a, Vertex b) { return position[a] < position[b]; });
    td.tree_edges.emplace_back(v, parent);
  }
  // One root per connected component; chain them into a single tree.
  for (std::size_t i = 1; i < roots.size(); ++i) td.tree_edges.emplace_back(roots[i - 1], roots[i]);
  return td;
}

}  // namespace twdist
