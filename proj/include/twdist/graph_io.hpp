#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "twdist/graph.hpp"

namespace twdist {

// PACE-style text formats, 1-indexed vertices on disk:
//   p tw <n> <m>   followed by m lines "u v" (length 1) or "u v w"
//   p sp <n> <m>   followed by m lines "a u v w" (the leading "a" is optional)
// Lines starting with 'c' are comments. Parallel edges collapse to the
// shortest; the number of edge lines must equal m.
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::filesystem::path& path);

// Writes "p sp" when any edge length differs from 1, "p tw" otherwise.
std::string format_graph(const Graph& g);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace twdist
