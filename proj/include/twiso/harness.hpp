#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "twiso/graph.hpp"
#include "twiso/tree_decomposition.hpp"

namespace twiso {

/// Plain backtracking over degree-compatible vertex maps. Shares no code with
/// the decomposition-based algorithms so it can serve as their reference.
std::optional<Permutation> brute_force_iso(const Graph &g, const Graph &h);

struct InstanceBundle {
  Graph graph;
  std::optional<TreeDecomposition> decomposition;
  std::uint64_t seed = 0;
};

/// Random k-tree on n vertices with its natural width-k decomposition; each
/// edge is then kept with probability edge_keep_ratio and labels are shuffled.
/// Throws InvalidParams unless n > k >= 1 and 0 <= ratio <= 1.
InstanceBundle generate_partial_ktree(std::size_t n, std::size_t k,
                                      double edge_keep_ratio, std::uint64_t seed);

/// Seed 0 is the identity; any other seed draws a permutation from it.
std::pair<Graph, Permutation> random_relabel(const Graph &g, std::uint64_t seed);

} // namespace twiso
