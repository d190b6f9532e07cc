#include "twdist/tw_distance.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "twdist/bounds.hpp"
#include "twdist/range_tree.hpp"

namespace twdist {

void RangeTreeStats::merge(const RangeTreeStats& o) {
  trees_built += o.trees_built;
  queries += o.queries;
  max_canonical_total = std::max(max_canonical_total, o.max_canonical_total);
  max_query_visits = std::max(max_query_visits, o.max_query_visits);
  construction_violations += o.construction_violations;
  query_violations += o.query_violations;
  max_points = std::max(max_points, o.max_points);
  max_dimension = std::max(max_dimension, o.max_dimension);
}

namespace {

Distance known(const MaybeDistance& d) {
  if (!d) throw DisconnectedError("graph is not connected");
  return *d;
}

template <Monoid M>
typename M::value_type point_value(Distance d_zi_y);

template <>
MaxDistance::value_type point_value<MaxDistance>(Distance d) {
  return d;
}

template <>
CountSumValue point_value<CountSum>(Distance d) {
  return {1, d};
}

}  // namespace

template <Monoid M>
VisitingTable<M> visiting_eccentricities(std::span<const Vertex> queries, std::span<const Vertex> targets,
                                         std::span<const DistanceRow> rows, const VisitingOptions& opts,
                                         RangeTreeStats* stats) {
  using V = typename M::value_type;
  const std::size_t k = rows.size();
  if (k == 0) throw InvalidArgument("visiting eccentricities need a nonempty separator");
  VisitingTable<M> table;
  table.k = k;
  table.values.assign(queries.size() * k, M::identity());
  if (targets.empty() || queries.empty()) return table;

  const std::size_t dims = opts.drop_self_dimension ? k - 1 : k;
  const std::size_t nq = queries.size();

  // Signed distance between z_j and v.
  auto dist = [&](std::size_t j, Vertex v) { return to_signed(known(rows[j].dist[v])); };

  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Coord> coords;
    std::vector<V> values;
    coords.reserve(targets.size() * dims);
    values.reserve(targets.size());
    for (Vertex y : targets) {
      const Coord base = dist(i, y);
      for (std::size_t j = 0; j < k; ++j) {
        if (opts.drop_self_dimension && j == i) continue;
        coords.push_back(base - dist(j, y));
      }
      values.push_back(point_value<M>(static_cast<Distance>(base)));
    }

    if (dims == 0) {
      const V all = aggregate<M>(std::span<const V>(values));
      for (std::size_t x = 0; x < nq; ++x) table.values[x * k + i] = all;
      if (stats) {
        stats->queries += nq;
        stats->max_points = std::max<std::uint64_t>(stats->max_points, values.size());
      }
      continue;
    }

    const auto tree = RangeTree<M>::build(dims, coords, values);
    const std::uint64_t visit_bound = query_visit_bound(values.size(), dims);
    std::uint64_t max_visits = 0, violations = 0;
    std::exception_ptr failure;

    // y is attributed to z_i iff d(x,z_i)+d(z_i,y) < d(x,z_j)+d(z_j,y) for
    // j < i and <= for j > i, i.e. p_j(y) <= d(x,z_j) - d(x,z_i) - [j < i].
#pragma omp parallel for schedule(static) reduction(max : max_visits) reduction(+ : violations) if (opts.parallel)
    for (std::size_t q = 0; q < nq; ++q) {
      try {
        const Vertex x = queries[q];
        const Coord dx_i = dist(i, x);
        QueryBox box = QueryBox::unbounded(dims);
        std::size_t c = 0;
        for (std::size_t j = 0; j < k; ++j) {
          if (opts.drop_self_dimension && j == i) continue;
          box.upper[c++] = dist(j, x) - dx_i - (j < i ? 1 : 0);
        }
        QueryCounter counter;
        table.values[q * k + i] = tree.query(box, counter);
        max_visits = std::max(max_visits, counter.visited_nodes);
        if (counter.visited_nodes > visit_bound) ++violations;
      } catch (...) {
#pragma omp critical(twdist_visiting_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    if (stats) {
      ++stats->trees_built;
      stats->queries += nq;
      stats->max_canonical_total = std::max(stats->max_canonical_total, tree.canonical_size_total());
      if (tree.canonical_size_total() > construction_bound(values.size(), dims)) ++stats->construction_violations;
      stats->max_query_visits = std::max(stats->max_query_visits, max_visits);
      stats->query_violations += violations;
      stats->max_points = std::max<std::uint64_t>(stats->max_points, values.size());
      stats->max_dimension = std::max<std::uint64_t>(stats->max_dimension, dims);
    }
  }
  return table;
}

template VisitingTable<MaxDistance> visiting_eccentricities<MaxDistance>(std::span<const Vertex>,
                                                                         std::span<const Vertex>,
                                                                         std::span<const DistanceRow>,
                                                                         const VisitingOptions&, RangeTreeStats*);
template VisitingTable<CountSum> visiting_eccentricities<CountSum>(std::span<const Vertex>, std::span<const Vertex>,
                                                                   std::span<const DistanceRow>,
                                                                   const VisitingOptions&, RangeTreeStats*);

MaybeDistance combine_visiting(std::span<const Distance> dist_to_z, std::span<const MaxDistance::value_type> row) {
  if (dist_to_z.size() != row.size()) throw InvalidArgument("separator size mismatch");
  MaybeDistance best;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!row[i]) continue;
    const Distance d = checked_add(dist_to_z[i], *row[i]);
    if (!best || d > *best) best = d;
  }
  return best;
}

std::uint64_t combine_visiting_sum(std::span<const Distance> dist_to_z, std::span<const CountSumValue> row) {
  if (dist_to_z.size() != row.size()) throw InvalidArgument("separator size mismatch");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < row.size(); ++i)
    total = checked_add(total, checked_add(checked_mul(row[i].count, dist_to_z[i]), row[i].sum));
  return total;
}

bool default_base_case(std::size_t n, std::size_t k) {
  if (n <= 3) return true;
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return nn / std::log(nn) < 4.0 * kk * (kk + 1.0);
}

namespace {

struct LevelResult {
  std::vector<Distance> ecc;  // indexed by local vertex id
  std::uint64_t wiener = 0;
};

class Solver {
 public:
  Solver(const SkewSeparatorTree& t, const TwOptions& opts, std::size_t n)
      : t_(t), opts_(opts), local_(n, kAbsent) {}

  LevelResult solve(const Graph& h, const std::vector<Vertex>& orig, int node_id, std::size_t depth) {
    const auto& node = t_.nodes[static_cast<std::size_t>(node_id)];
    const std::size_t n = h.vertex_count();
    if (node.vertices.size() != n) throw InternalError("separator tree does not match recursion level");
    ++stats_.levels;
    stats_.max_depth = std::max<std::uint64_t>(stats_.max_depth, depth);

    const bool base = node.leaf() || node.separator.empty() ||
                      (opts_.base_case_max_vertices ? n <= *opts_.base_case_max_vertices
                                                    : default_base_case(n, t_.k));
    if (base) return base_case(h);

    for (Vertex v = 0; v < n; ++v) local_[orig[v]] = v;
    auto to_local = [&](const std::vector<Vertex>& vs) {
      std::vector<Vertex> out;
      out.reserve(vs.size());
      for (Vertex v : vs) {
        if (local_[v] == kAbsent) throw InternalError("separator tree vertex outside recursion level");
        out.push_back(local_[v]);
      }
      return out;
    };
    const auto& left = t_.nodes[static_cast<std::size_t>(node.left)];
    const auto& right = t_.nodes[static_cast<std::size_t>(node.right)];
    const std::vector<Vertex> z = to_local(node.separator);
    const std::vector<Vertex> x = to_local(left.vertices);
    const std::vector<Vertex> y = to_local(right.vertices);
    for (Vertex v : orig) local_[v] = kAbsent;
    const std::size_t k = z.size();

    std::vector<DistanceRow> rows;
    rows.reserve(k);
    for (Vertex s : z) {
      rows.push_back(dijkstra(h, s));
      ++stats_.shortest_path_runs;
    }
    for (const auto& r : rows)
      for (const auto& d : r.dist) known(d);

    std::vector<char> in_z(n, 0);
    for (Vertex v : z) in_z[v] = 1;
    auto minus_z = [&](const std::vector<Vertex>& vs) {
      std::vector<Vertex> out;
      for (Vertex v : vs)
        if (!in_z[v]) out.push_back(v);
      return out;
    };
    const std::vector<Vertex> x_only = minus_z(x);
    const std::vector<Vertex> y_only = minus_z(y);
    auto dist_to_z = [&](Vertex v) {
      std::vector<Distance> d(k);
      for (std::size_t i = 0; i < k; ++i) d[i] = *rows[i].dist[v];
      return d;
    };

    const VisitingOptions vopts{opts_.drop_self_dimension, opts_.parallel};
    std::vector<Distance> cross(n, 0);  // e(v; other side) for v outside Z
    if (opts_.eccentricities) {
      auto side = [&](const std::vector<Vertex>& from, const std::vector<Vertex>& to) {
        const auto table = visiting_eccentricities<MaxDistance>(from, to, rows, vopts, &stats_.range_trees);
        for (std::size_t q = 0; q < from.size(); ++q) {
          const auto e = combine_visiting(dist_to_z(from[q]), table.row(q));
          cross[from[q]] = e.value_or(0);
        }
      };
      side(x_only, y);
      side(y_only, x);
    }

    std::uint64_t cross_sum = 0;
    if (opts_.wiener) {
      const auto table = visiting_eccentricities<CountSum>(x_only, y_only, rows, vopts, &stats_.range_trees);
      for (std::size_t q = 0; q < x_only.size(); ++q)
        cross_sum = checked_add(cross_sum, combine_visiting_sum(dist_to_z(x_only[q]), table.row(q)));
    }

    std::uint64_t inside_z = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) inside_z = checked_add(inside_z, *rows[a].dist[z[b]]);

    const Graph augmented = add_shortcut_clique(h, z, rows);
    LevelResult out;
    out.ecc.assign(n, 0);
    auto recurse = [&](const std::vector<Vertex>& part, int child) {
      const auto sub = induced_subgraph(augmented, part);
      std::vector<Vertex> sub_orig(part.size());
      for (std::size_t i = 0; i < part.size(); ++i) sub_orig[i] = orig[part[i]];
      auto res = solve(sub.graph, sub_orig, child, depth + 1);
      for (std::size_t i = 0; i < part.size(); ++i) out.ecc[part[i]] = std::max(res.ecc[i], cross[part[i]]);
      return res.wiener;
    };
    const std::uint64_t wx = recurse(x, node.left);
    const std::uint64_t wy = recurse(y, node.right);

    for (std::size_t i = 0; i < k; ++i) {
      Distance e = 0;
      for (const auto& d : rows[i].dist) e = std::max(e, *d);
      out.ecc[z[i]] = e;
    }
    if (opts_.wiener) {
      const std::uint64_t total = checked_add(checked_add(wx, wy), cross_sum);
      if (total < inside_z) throw InternalError("inconsistent Wiener decomposition");
      out.wiener = total - inside_z;
    }
    return out;
  }

  const TwStats& stats() const { return stats_; }

 private:
  static constexpr Vertex kAbsent = ~Vertex{0};

  LevelResult base_case(const Graph& h) {
    ++stats_.base_cases;
    const std::size_t n = h.vertex_count();
    LevelResult out;
    out.ecc.assign(n, 0);
    std::vector<std::uint64_t> row_sum(n, 0);
    std::exception_ptr failure;
    const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8) if (opts_.parallel && n > 64)
    for (std::ptrdiff_t s = 0; s < sn; ++s) {
      try {
        const auto row = dijkstra(h, static_cast<Vertex>(s));
        Distance e = 0;
        std::uint64_t sum = 0;
        for (const auto& d : row.dist) {
          const Distance dv = known(d);
          e = std::max(e, dv);
          sum = checked_add(sum, dv);
        }
        out.ecc[static_cast<std::size_t>(s)] = e;
        row_sum[static_cast<std::size_t>(s)] = sum;
      } catch (...) {
#pragma omp critical(twdist_base_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
    stats_.shortest_path_runs += n;
    std::uint64_t doubled = 0;
    for (auto s : row_sum) doubled = checked_add(doubled, s);
    out.wiener = doubled / 2;
    return out;
  }

  const SkewSeparatorTree& t_;
  const TwOptions& opts_;
  std::vector<Vertex> local_;
  TwStats stats_;
};

}  // namespace

TwResult distances_tw(const Graph& g, const SkewSeparatorTree& t, const TwOptions& opts) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return {make_report({}, opts.wiener ? std::optional<std::uint64_t>(0) : std::nullopt), {}};
  if (!check_connected(g)) throw DisconnectedError("graph is not connected");
  if (t.root < 0 || t.nodes[static_cast<std::size_t>(t.root)].vertices.size() != n)
    throw InvalidArgument("separator tree does not cover the graph");
  Solver solver(t, opts, n);
  std::vector<Vertex> ids(n);
  for (Vertex v = 0; v < n; ++v) ids[v] = v;
  auto res = solver.solve(g, ids, t.root, 0);
  TwResult out;
  if (!opts.eccentricities) res.ecc.clear();
  out.report = make_report(std::move(res.ecc), opts.wiener ? std::optional<std::uint64_t>(res.wiener) : std::nullopt);
  out.stats = solver.stats();
  return out;
}

DistanceReport eccentricities_tw(const Graph& g, const SkewSeparatorTree& t, const TwOptions& opts) {
  TwOptions o = opts;
  o.wiener = false;
  return distances_tw(g, t, o).report;
}

std::uint64_t wiener_tw(const Graph& g, const SkewSeparatorTree& t, const TwOptions& opts) {
  TwOptions o = opts;
  o.wiener = true;
  return *distances_tw(g, t, o).report.wiener;
}

}  // namespace twdist
