#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "twiso/graph.hpp"
#include "twiso/tree_decomposition.hpp"

namespace twiso {

// Graph files: `p tw <n> <m>` then `e <u> <v>` lines (bare `<u> <v>` is also
// read). Decomposition files: `p td <bags> <width+1> <n>`, `b <id> <v>...`,
// `t <id> <id>`, optional `r <id>`. Everything external is 1-based; lines
// starting with `c` are comments. Malformed input throws ParseError.

Graph parse_graph(std::istream &in);
Graph read_graph(const std::filesystem::path &path);
std::string format_graph(const Graph &g);

TreeDecomposition parse_decomposition(std::istream &in);
TreeDecomposition read_decomposition(const std::filesystem::path &path);
std::string format_decomposition(const TreeDecomposition &d, std::size_t vertex_count);

/// `map <g> <h>` lines, 1-based.
std::string format_mapping(const Permutation &image);

} // namespace twiso
