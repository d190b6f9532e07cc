#include "twdist/separator_tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>

namespace twdist {

namespace {

constexpr Vertex kAbsent = std::numeric_limits<Vertex>::max();

// One recursion level: structure graph G[V_t] plus ancestor separator cliques,
// and the decomposition restricted to V_t. All ids are local.
struct Level {
  std::vector<Vertex> orig;
  std::vector<std::vector<Vertex>> adj;
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::vector<std::size_t>> tree;
};

struct Split {
  std::vector<Vertex> separator;
  std::vector<Vertex> left;   // L_t
  std::vector<Vertex> right;  // R_t
};

bool subset(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Restricts bags through `local_of` and contracts tree edges whose one side is
// a subset of the other (this also removes empty bags).
void restrict_bags(const Level& from, const std::vector<Vertex>& local_of, Level& to) {
  const std::size_t nb = from.bags.size();
  std::vector<std::vector<Vertex>> bags(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    for (Vertex v : from.bags[i])
      if (local_of[v] != kAbsent) bags[i].push_back(local_of[v]);
    std::sort(bags[i].begin(), bags[i].end());
  }
  std::vector<std::size_t> rep(nb);
  std::iota(rep.begin(), rep.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (rep[x] != x) x = rep[x] = rep[rep[x]];
    return x;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < nb; ++a)
    for (std::size_t b : from.tree[a])
      if (a < b) edges.emplace_back(a, b);
  for (const auto& [a, b] : edges) {
    const auto ra = find(a), rb = find(b);
    if (subset(bags[ra], bags[rb])) rep[ra] = rb;
    else if (subset(bags[rb], bags[ra])) rep[rb] = ra;
  }
  std::vector<std::size_t> index(nb, std::numeric_limits<std::size_t>::max());
  to.bags.clear();
  for (std::size_t i = 0; i < nb; ++i)
    if (find(i) == i) {
      index[i] = to.bags.size();
      to.bags.push_back(std::move(bags[i]));
    }
  to.tree.assign(to.bags.size(), {});
  for (const auto& [a, b] : edges) {
    const auto ra = index[find(a)], rb = index[find(b)];
    if (ra != rb) {
      to.tree[ra].push_back(rb);
      to.tree[rb].push_back(ra);
    }
  }
}

Level child_level(const Level& level, const std::vector<Vertex>& keep, const std::vector<Vertex>& separator) {
  std::vector<Vertex> local_of(level.orig.size(), kAbsent);
  Level out;
  for (Vertex v : keep) {
    local_of[v] = static_cast<Vertex>(out.orig.size());
    out.orig.push_back(level.orig[v]);
  }
  out.adj.assign(keep.size(), {});
  for (Vertex v : keep)
    for (Vertex u : level.adj[v])
      if (local_of[u] != kAbsent) out.adj[local_of[v]].push_back(local_of[u]);
  for (Vertex a : separator)
    for (Vertex b : separator)
      if (a != b) out.adj[local_of[a]].push_back(local_of[b]);
  for (auto& list : out.adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  restrict_bags(level, local_of, out);
  return out;
}

// Component labels of level.adj with `blocked` vertices removed.
std::vector<std::size_t> components(const Level& level, const std::vector<char>& blocked,
                                    std::vector<std::size_t>& label) {
  const std::size_t n = level.adj.size();
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  label.assign(n, kNone);
  std::vector<std::size_t> sizes;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < n; ++s) {
    if (blocked[s] || label[s] != kNone) continue;
    const std::size_t c = sizes.size();
    sizes.push_back(0);
    label[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      ++sizes[c];
      for (Vertex w : level.adj[u])
        if (!blocked[w] && label[w] == kNone) {
          label[w] = c;
          stack.push_back(w);
        }
    }
  }
  return sizes;
}

// Chooses components for the left side so that n/(k+1) <= |B| + s <= nk/(k+1)
// with both sides nonempty, preferring s closest to half of the remainder.
std::optional<std::vector<char>> group_components(const std::vector<std::size_t>& sizes, std::size_t n,
                                                  std::size_t bag_size, std::size_t k) {
  const std::size_t rest = n - bag_size;
  if (sizes.size() < 2) return std::nullopt;
  constexpr int kUnreached = -1;
  std::vector<int> reached_by(rest + 1, kUnreached);
  reached_by[0] = static_cast<int>(sizes.size());  // sentinel: reachable with no component
  for (std::size_t c = 0; c < sizes.size(); ++c)
    for (std::size_t s = rest; s >= sizes[c] && s > 0; --s)
      if (reached_by[s] == kUnreached && reached_by[s - sizes[c]] != kUnreached &&
          (s == sizes[c] || reached_by[s - sizes[c]] < static_cast<int>(c)))
        reached_by[s] = static_cast<int>(c);
  std::optional<std::size_t> best;
  for (std::size_t s = 1; s < rest; ++s) {
    if (reached_by[s] == kUnreached) continue;
    const std::size_t x = bag_size + s;
    if (x * (k + 1) < n || x * (k + 1) > n * k) continue;
    auto gap = [&](std::size_t v) { return v * 2 > rest ? v * 2 - rest : rest - v * 2; };
    if (!best || gap(s) < gap(*best)) best = s;
  }
  if (!best) return std::nullopt;
  std::vector<char> take(sizes.size(), 0);
  for (std::size_t s = *best; s > 0;) {
    const auto c = static_cast<std::size_t>(reached_by[s]);
    take[c] = 1;
    s -= sizes[c];
  }
  return take;
}

std::optional<Split> split_at_bag(const Level& level, std::size_t bag, std::size_t k) {
  const std::size_t n = level.adj.size();
  const auto& b = level.bags[bag];
  std::vector<char> blocked(n, 0);
  for (Vertex v : b) blocked[v] = 1;
  std::vector<std::size_t> label;
  const auto sizes = components(level, blocked, label);
  const auto take = group_components(sizes, n, b.size(), k);
  if (!take) return std::nullopt;

  // side: 0 separator, 1 left, 2 right
  std::vector<char> side(n, 0);
  for (Vertex v = 0; v < n; ++v)
    if (!blocked[v]) side[v] = (*take)[label[v]] ? 1 : 2;
  auto touches = [&](Vertex v, char s) {
    return std::any_of(level.adj[v].begin(), level.adj[v].end(), [&](Vertex w) { return side[w] == s; });
  };
  // Separator vertices without right neighbours join the left side (|X| is unchanged).
  for (Vertex v : b)
    if (!touches(v, 2)) side[v] = 1;
  // Separator vertices without left neighbours join the right side while |X| stays balanced.
  std::size_t x_size = std::count_if(side.begin(), side.end(), [](char s) { return s != 2; });
  for (Vertex v : b)
    if (side[v] == 0 && !touches(v, 1) && (x_size - 1) * (k + 1) >= n) {
      side[v] = 2;
      --x_size;
    }
  Split split;
  for (Vertex v = 0; v < n; ++v) {
    if (side[v] == 0) split.separator.push_back(v);
    else if (side[v] == 1) split.left.push_back(v);
    else split.right.push_back(v);
  }
  if (split.left.empty() || split.right.empty() || split.separator.empty()) return std::nullopt;
  return split;
}

std::optional<Split> find_split(const Level& level, std::size_t k) {
  const std::size_t n = level.adj.size();
  const std::size_t nb = level.bags.size();
  if (n < 3 || nb == 0) return std::nullopt;

  std::vector<std::size_t> some_bag(n, 0);
  for (std::size_t i = 0; i < nb; ++i)
    for (Vertex v : level.bags[i]) some_bag[v] = i;

  // Walk towards the bag whose removal leaves no component larger than half the rest.
  std::vector<char> visited(nb, 0);
  std::size_t current = 0;
  std::vector<std::size_t> label;
  std::vector<std::size_t> branch(nb);
  for (std::size_t steps = 0; steps < nb; ++steps) {
    visited[current] = 1;
    const auto& b = level.bags[current];
    std::vector<char> blocked(n, 0);
    for (Vertex v : b) blocked[v] = 1;
    const auto sizes = components(level, blocked, label);
    if (sizes.empty()) break;
    const auto big = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    if (sizes[big] * 2 <= n - b.size()) break;
    Vertex witness = 0;
    while (blocked[witness] || label[witness] != big) ++witness;
    // Label each bag by the neighbour of `current` through which it is reached.
    std::vector<std::size_t> stack;
    branch.assign(nb, nb);
    for (std::size_t nbh : level.tree[current]) {
      branch[nbh] = nbh;
      stack.push_back(nbh);
    }
    branch[current] = current;
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (std::size_t y : level.tree[x])
        if (branch[y] == nb) {
          branch[y] = branch[x];
          stack.push_back(y);
        }
    }
    const auto next = branch[some_bag[witness]];
    if (next == current || next == nb || visited[next]) break;
    current = next;
  }
  if (auto split = split_at_bag(level, current, k)) return split;

  // Fallback for small levels: any bag that admits a balanced grouping.
  const std::size_t edges_total =
      std::accumulate(level.adj.begin(), level.adj.end(), std::size_t{0},
                      [](std::size_t acc, const auto& list) { return acc + list.size(); });
  if (nb * (n + edges_total) > 20'000'000) return std::nullopt;
  for (std::size_t i = 0; i < nb; ++i)
    if (i != current)
      if (auto split = split_at_bag(level, i, k)) return split;
  return std::nullopt;
}

int build_node(SkewSeparatorTree& t, const Level& level) {
  const int id = static_cast<int>(t.nodes.size());
  t.nodes.emplace_back();
  {
    auto& node = t.nodes.back();
    node.vertices = level.orig;
    std::sort(node.vertices.begin(), node.vertices.end());
  }
  auto split = find_split(level, t.k);
  if (!split) {
    auto& node = t.nodes[id];
    if (node.vertices.size() <= t.k) node.separator = node.vertices;
    return id;
  }
  std::vector<Vertex> sep_orig;
  for (Vertex v : split->separator) sep_orig.push_back(level.orig[v]);
  std::sort(sep_orig.begin(), sep_orig.end());
  t.nodes[id].separator = sep_orig;

  auto side = [&](const std::vector<Vertex>& part) {
    std::vector<Vertex> keep(part);
    keep.insert(keep.end(), split->separator.begin(), split->separator.end());
    std::sort(keep.begin(), keep.end());
    return child_level(level, keep, split->separator);
  };
  const int left = build_node(t, side(split->left));
  const int right = build_node(t, side(split->right));
  t.nodes[id].left = left;
  t.nodes[id].right = right;
  return id;
}

}  // namespace

std::size_t SkewSeparatorTree::depth() const {
  if (root < 0) return 0;
  std::size_t best = 0;
  std::vector<std::pair<int, std::size_t>> stack{{root, 1}};
  while (!stack.empty()) {
    auto [id, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    if (!nodes[id].leaf()) {
      stack.emplace_back(nodes[id].left, d + 1);
      stack.emplace_back(nodes[id].right, d + 1);
    }
  }
  return best;
}

SkewSeparatorTree skew_separator_tree(const Graph& g, const TreeDecomposition& td, std::size_t k) {
  const auto report = validate_td(g, td);
  if (!report.ok()) throw InvalidArgument("invalid tree decomposition: " + report.message);
  if (k < td.width() + 1 || k == 0) throw InvalidArgument("separator size k must be at least width + 1");

  SkewSeparatorTree t;
  t.k = k;
  if (g.vertex_count() == 0) return t;

  Level level;
  level.orig.resize(g.vertex_count());
  std::iota(level.orig.begin(), level.orig.end(), Vertex{0});
  level.adj.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (const auto& a : g.neighbors(v)) level.adj[v].push_back(a.to);
  level.bags = td.bags;
  level.tree.assign(td.bags.size(), {});
  for (const auto& [a, b] : td.tree_edges) {
    level.tree[a].push_back(b);
    level.tree[b].push_back(a);
  }
  // Compact once so that walks start from a reduced bag tree.
  std::vector<Vertex> identity(level.orig.begin(), level.orig.end());
  Level compact;
  compact.orig = level.orig;
  compact.adj = std::move(level.adj);
  restrict_bags(level, identity, compact);
  t.root = build_node(t, compact);
  return t;
}

SkewSeparatorTree mirrored(SkewSeparatorTree t) {
  for (auto& node : t.nodes) std::swap(node.left, node.right);
  return t;
}

SstReport validate_sst(const Graph& g, const SkewSeparatorTree& t, std::size_t k) {
  const std::size_t n = g.vertex_count();
  if (t.root < 0) return n == 0 ? SstReport{} : SstReport{false, "empty tree for a nonempty graph"};
  auto fail = [](int id, const std::string& what) { return SstReport{false, "node " + std::to_string(id) + ": " + what}; };

  if (t.nodes[t.root].vertices.size() != n) return fail(t.root, "root does not hold every vertex");
  for (std::size_t i = 0; i < n; ++i)
    if (t.nodes[t.root].vertices[i] != i) return fail(t.root, "root does not hold every vertex");

  // 0 = outside V_t, 1 = L_t, 2 = R_t, 3 = Z_t
  std::vector<char> side(n, 0);
  struct Frame {
    int id;
    std::vector<int> ancestors;
  };
  std::vector<Frame> stack{{t.root, {}}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    const auto& node = t.nodes[f.id];
    if (node.separator.size() > k)
      return fail(f.id, "separator has " + std::to_string(node.separator.size()) + " > k vertices");
    if (!std::includes(node.vertices.begin(), node.vertices.end(), node.separator.begin(), node.separator.end()))
      return fail(f.id, "separator is not inside the node's vertex set");
    if (node.leaf()) continue;

    const auto& xs = t.nodes[node.left].vertices;
    const auto& ys = t.nodes[node.right].vertices;
    std::vector<Vertex> both, either;
    std::set_intersection(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(both));
    std::set_union(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(either));
    if (both != node.separator) return fail(f.id, "children overlap in more than the separator");
    if (either != node.vertices) return fail(f.id, "children do not cover the node's vertex set");

    for (Vertex v : xs) side[v] = 1;
    for (Vertex v : ys) side[v] = 2;
    for (Vertex v : node.separator) side[v] = 3;
    std::optional<SstReport> violation;
    for (const auto& e : g.edges())
      if ((side[e.u] == 1 && side[e.v] == 2) || (side[e.u] == 2 && side[e.v] == 1)) {
        violation = fail(f.id, "edge " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1) +
                                   " crosses the separator");
        break;
      }
    if (!violation)
      for (int a : f.ancestors) {
        bool in_left = false, in_right = false;
        for (Vertex v : t.nodes[a].separator) {
          in_left |= side[v] == 1;
          in_right |= side[v] == 2;
        }
        if (in_left && in_right) {
          violation = fail(f.id, "separator clique of node " + std::to_string(a) + " crosses the separator");
          break;
        }
      }
    for (Vertex v : node.vertices) side[v] = 0;
    if (violation) return *violation;

    const std::size_t nt = node.vertices.size();
    const std::size_t x = xs.size(), y = ys.size();
    if (x * (k + 1) < nt || x * (k + 1) > nt * k)
      return fail(f.id, "unbalanced: |L u Z| = " + std::to_string(x) + " for n = " + std::to_string(nt));
    if (x == nt || y == nt) return fail(f.id, "a side is empty");
    if (y * (k + 1) > nt * k + k * (k + 1)) return fail(f.id, "right side exceeds nk/(k+1) + k");

    std::vector<int> next = f.ancestors;
    next.push_back(f.id);
    stack.push_back({node.right, next});
    stack.push_back({node.left, std::move(next)});
  }
  return {};
}

}  // namespace twdist
