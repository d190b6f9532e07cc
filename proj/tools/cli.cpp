#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "twdist/bounds.hpp"
#include "twdist/decomposition.hpp"
#include "twdist/generators.hpp"
#include "twdist/graph_io.hpp"
#include "twdist/oracle.hpp"
#include "twdist/report.hpp"
#include "twdist/separator_tree.hpp"
#include "twdist/tw_distance.hpp"
#include "twdist/vc_distance.hpp"

namespace twdist::cli {
namespace {

struct DistancesConfig {
  std::string graph_path;
  std::string algo = "tw";
  std::string td_path;
  bool heuristic_td = false;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t kmax = 16;
  bool parallel = false;
  std::size_t base_case = 0;  // 0: default rule
  bool wiener = true;
};

struct BenchConfig {
  std::size_t tw = 2;
  std::vector<std::size_t> sizes;
  std::uint64_t seed = 1;
  double keep_prob = 0.7;
  Weight weight_max = 100;
  std::size_t base_case = 0;
  bool parallel = false;
};

struct ValidateConfig {
  std::string graph_path;
  std::string td_path;
  bool check_sst = false;
};

struct GenerateConfig {
  std::string family = "ktree";
  std::size_t n = 100;
  std::size_t k = 2;
  std::uint64_t seed = 1;
  double keep_prob = 0.7;
  Weight weight_max = 1;
  bool universal = false;
  std::string prefix;
};

std::string format_report(const DistanceReport& r, const ReportContext& ctx, const std::string& format) {
  if (format == "json") return format_json(r, ctx);
  if (format == "csv") return format_csv(r, ctx);
  return format_text(r, ctx);
}

TreeDecomposition load_td(const DistancesConfig& cfg, const Graph& g) {
  if (cfg.td_path.empty()) return heuristic_td(g);
  auto td = parse_td(read_text_file(cfg.td_path));
  if (td.vertex_count != g.vertex_count())
    throw ParseError(0, "decomposition has " + std::to_string(td.vertex_count) + " vertices, graph has " +
                            std::to_string(g.vertex_count()));
  const auto report = validate_td(g, td);
  if (!report.ok()) throw InvalidArgument("invalid decomposition: " + report.message);
  return td;
}

Counters tw_counters(const TwStats& s) {
  return {{"recursion_depth", s.max_depth},
          {"levels", s.levels},
          {"base_cases", s.base_cases},
          {"shortest_path_runs", s.shortest_path_runs},
          {"range_trees_built", s.range_trees.trees_built},
          {"range_queries", s.range_trees.queries},
          {"max_canonical_total", s.range_trees.max_canonical_total},
          {"max_query_visits", s.range_trees.max_query_visits},
          {"construction_bound_violations", s.range_trees.construction_violations},
          {"query_bound_violations", s.range_trees.query_violations}};
}

int cmd_distances(const DistancesConfig& cfg, std::ostream& out) {
  const Graph g = read_graph_file(cfg.graph_path);
  if (!check_connected(g)) throw DisconnectedError("graph is not connected");
  DistanceReport report;
  ReportContext ctx;
  ctx.algorithm = cfg.algo;
  if (cfg.algo == "tw") {
    const auto td = load_td(cfg, g);
    const std::size_t k = g.vertex_count() == 0 ? 1 : td.width() + 1;
    const auto sst = skew_separator_tree(g, td, k);
    TwOptions opts;
    opts.parallel = cfg.parallel;
    opts.wiener = cfg.wiener;
    if (cfg.base_case > 0) opts.base_case_max_vertices = cfg.base_case;
    auto res = distances_tw(g, sst, opts);
    report = std::move(res.report);
    ctx.k = k;
    ctx.counters = tw_counters(res.stats);
  } else if (cfg.algo == "vc") {
    if (!g.unit_weights()) throw InvalidArgument("the vc algorithm needs an unweighted graph");
    const auto cover = find_vertex_cover(g, cfg.kmax);
    if (!cover) throw ResourceError("no vertex cover of size at most " + std::to_string(cfg.kmax));
    auto res = ecc_wiener_vc(g, *cover, cfg.parallel);
    if (!cfg.wiener) res.report.wiener.reset();
    report = std::move(res.report);
    ctx.k = cover->size();
    ctx.counters = {{"searches", res.stats.searches}, {"neighborhood_classes", res.stats.classes}};
  } else {
    report = report_oracle(g, cfg.parallel);
    if (!cfg.wiener) report.wiener.reset();
  }
  out << format_report(report, ctx, cfg.format);
  return kExitOk;
}

int cmd_bench(const BenchConfig& cfg, std::ostream& out) {
  out << "n,tw,k,build_canonical_total,max_query_visits,wall_ms,bound_construction,bound_query\n";
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
    const std::size_t n = cfg.sizes[i];
    const auto inst = gen_partial_ktree(n, cfg.tw, cfg.keep_prob, cfg.weight_max, cfg.seed + i);
    const std::size_t k = cfg.tw + 1;
    const auto sst = skew_separator_tree(inst.graph, inst.td, k);
    TwOptions opts;
    opts.parallel = cfg.parallel;
    if (cfg.base_case > 0) opts.base_case_max_vertices = cfg.base_case;
    const auto start = std::chrono::steady_clock::now();
    const auto res = distances_tw(inst.graph, sst, opts);
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    out << n << ',' << cfg.tw << ',' << k << ',' << res.stats.range_trees.max_canonical_total << ','
        << res.stats.range_trees.max_query_visits << ',' << ms << ',' << construction_bound(n, k) << ','
        << query_visit_bound(n, k) << '\n';
  }
  return kExitOk;
}

int cmd_validate(const ValidateConfig& cfg, std::ostream& out) {
  const Graph g = read_graph_file(cfg.graph_path);
  const auto td = parse_td(read_text_file(cfg.td_path));
  if (td.vertex_count != g.vertex_count())
    throw ParseError(0, "decomposition has " + std::to_string(td.vertex_count) + " vertices, graph has " +
                            std::to_string(g.vertex_count()));
  const auto report = validate_td(g, td);
  if (!report.ok()) {
    out << "invalid: " << report.message << '\n';
    return kExitFailure;
  }
  out << "valid decomposition, width " << td.width() << '\n';
  if (cfg.check_sst && g.vertex_count() > 0) {
    const std::size_t k = td.width() + 1;
    const auto sst = skew_separator_tree(g, td, k);
    const auto sr = validate_sst(g, sst, k);
    if (!sr.ok) {
      out << "invalid separator tree: " << sr.message << '\n';
      return kExitFailure;
    }
    out << "valid separator tree, k " << k << ", depth " << sst.depth() << '\n';
  }
  return kExitOk;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << text;
}

int cmd_generate(const GenerateConfig& cfg, std::ostream& out) {
  if (cfg.family == "ktree") {
    const auto inst = gen_partial_ktree(cfg.n, cfg.k, cfg.keep_prob, cfg.weight_max, cfg.seed);
    write_file(cfg.prefix + ".gr", format_graph(inst.graph));
    write_file(cfg.prefix + ".td", format_td(inst.td));
    out << "wrote " << cfg.prefix << ".gr and " << cfg.prefix << ".td\n";
  } else {
    const auto inst = gen_planted_cover(cfg.n, cfg.k, cfg.seed, cfg.universal);
    write_file(cfg.prefix + ".gr", format_graph(inst.graph));
    out << "wrote " << cfg.prefix << ".gr\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact eccentricities, diameter, radius and Wiener index", "twdist"};
  app.require_subcommand(1);

  DistancesConfig dc;
  auto* distances = app.add_subcommand("distances", "Compute the distance report of a graph");
  distances->add_option("graph", dc.graph_path, "Graph file (p tw / p sp format)")->required();
  distances->add_option("--algo", dc.algo, "Algorithm")->check(CLI::IsMember({"tw", "vc", "oracle"}));
  auto* td_opt = distances->add_option("--td", dc.td_path, "Tree decomposition (.td) for --algo tw");
  auto* heur_opt = distances->add_flag("--heuristic-td", dc.heuristic_td, "Use a min-fill decomposition (default)");
  td_opt->excludes(heur_opt);
  distances->add_option("--format", dc.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  distances->add_option("--seed", dc.seed, "Seed (recorded; the algorithms are deterministic)");
  distances->add_option("--kmax", dc.kmax, "Largest vertex cover searched by --algo vc");
  distances->add_flag("--parallel", dc.parallel, "Use OpenMP threads");
  distances->add_option("--base-case", dc.base_case, "Solve recursion levels of at most this size directly");
  distances->add_flag("!--no-wiener", dc.wiener, "Skip the Wiener index");

  BenchConfig bc;
  auto* bench = app.add_subcommand("bench", "Range-tree work counters on random partial k-trees");
  bench->add_option("--tw", bc.tw, "Treewidth of the generated instances")->check(CLI::Range(1, 12));
  bench->add_option("--n", bc.sizes, "Instance sizes")->delimiter(',');
  bench->add_option("--seed", bc.seed, "Seed of the first instance");
  bench->add_option("--keep-prob", bc.keep_prob, "Probability of keeping a non-spanning k-tree edge");
  bench->add_option("--weight-max", bc.weight_max, "Largest edge length");
  bench->add_option("--base-case", bc.base_case, "Solve recursion levels of at most this size directly");
  bench->add_flag("--parallel", bc.parallel, "Use OpenMP threads");

  ValidateConfig vc;
  auto* validate = app.add_subcommand("validate", "Check a tree decomposition against a graph");
  validate->add_option("graph", vc.graph_path, "Graph file")->required();
  validate->add_option("td", vc.td_path, "Tree decomposition file")->required();
  validate->add_flag("--sst", vc.check_sst, "Also build and check the separator tree");

  GenerateConfig gc;
  auto* generate = app.add_subcommand("generate", "Write a random instance");
  generate->add_option("family", gc.family, "ktree or cover")->check(CLI::IsMember({"ktree", "cover"}));
  generate->add_option("--n", gc.n, "Vertex count");
  generate->add_option("--k", gc.k, "Treewidth (ktree) or cover size (cover)");
  generate->add_option("--seed", gc.seed, "Seed");
  generate->add_option("--keep-prob", gc.keep_prob, "Probability of keeping a non-spanning k-tree edge");
  generate->add_option("--weight-max", gc.weight_max, "Largest edge length (ktree)");
  generate->add_flag("--universal", gc.universal, "Make cover vertex 1 adjacent to all (cover)");
  generate->add_option("--out", gc.prefix, "Output path prefix")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*distances) {
      if (dc.algo != "tw" && (!dc.td_path.empty() || dc.heuristic_td))
        throw InvalidArgument("--td and --heuristic-td only apply to --algo tw");
      return cmd_distances(dc, out);
    }
    if (*bench) return cmd_bench(bc, out);
    if (*validate) return cmd_validate(vc, out);
    return cmd_generate(gc, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const DisconnectedError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDisconnected;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kExitOverflow;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace twdist::cli
