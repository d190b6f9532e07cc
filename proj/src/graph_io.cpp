#include "twdist/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "text_lines.hpp"

namespace twdist {

Graph parse_graph(std::string_view text) {
  enum class Kind { kUnweighted, kWeighted };
  Kind kind{};
  bool have_header = false;
  std::size_t n = 0, m = 0;
  std::vector<Edge> edges;

  detail::for_each_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& tok) {
    if (tok.empty() || tok[0] == "c") return;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate header");
      if (tok.size() != 4) throw ParseError(line_no, "header must be 'p tw|sp <n> <m>'");
      if (tok[1] == "tw") kind = Kind::kUnweighted;
      else if (tok[1] == "sp") kind = Kind::kWeighted;
      else throw ParseError(line_no, "unknown graph format '" + std::string(tok[1]) + "'");
      n = detail::parse_uint(tok[2], line_no, "vertex count");
      m = detail::parse_uint(tok[3], line_no, "edge count");
      have_header = true;
      return;
    }
    if (!have_header) throw ParseError(line_no, "edge before header");
    std::size_t first = 0;
    if (tok[0] == "a") {
      if (kind != Kind::kWeighted) throw ParseError(line_no, "'a' lines require a 'p sp' header");
      first = 1;
    }
    const std::size_t fields = tok.size() - first;
    if (kind == Kind::kWeighted ? fields != 3 : (fields != 2 && fields != 3))
      throw ParseError(line_no, "malformed edge line");
    const auto u = detail::parse_uint(tok[first], line_no, "vertex id");
    const auto v = detail::parse_uint(tok[first + 1], line_no, "vertex id");
    if (u < 1 || u > n || v < 1 || v > n) throw ParseError(line_no, "vertex id out of range");
    if (u == v) throw ParseError(line_no, "self-loop");
    Weight w = 1;
    if (fields == 3) {
      if (!tok[first + 2].empty() && tok[first + 2][0] == '-') throw ParseError(line_no, "negative edge length");
      w = detail::parse_uint(tok[first + 2], line_no, "edge length");
    }
    edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w});
  });
  if (!have_header) throw ParseError(0, "missing 'p' header");
  if (edges.size() != m)
    throw ParseError(0, "header announces " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  return Graph(n, edges);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Graph read_graph_file(const std::filesystem::path& path) { return parse_graph(read_text_file(path)); }

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  const bool unit = g.unit_weights();
  out << "p " << (unit ? "tw" : "sp") << ' ' << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) {
    if (unit) out << e.u + 1 << ' ' << e.v + 1 << '\n';
    else out << "a " << e.u + 1 << ' ' << e.v + 1 << ' ' << e.w << '\n';
  }
  return out.str();
}

}  // namespace twdist
