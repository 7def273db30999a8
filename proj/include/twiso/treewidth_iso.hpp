#pragma once

#include <cstddef>
#include <optional>

#include "twiso/graph.hpp"
#include "twiso/tree_decomposition.hpp"

namespace twiso {

/// Isomorphism f : G -> H together with a tree isomorphism between the
/// decompositions such that every bag of dG maps onto its partner bag of dH.
/// Throws InvalidDecomposition if either decomposition is invalid.
bool iso_respecting_both(const Graph &g, const TreeDecomposition &dG,
                         const Graph &h, const TreeDecomposition &dH);
std::optional<Permutation> respecting_isomorphism(const Graph &g,
                                                  const TreeDecomposition &dG,
                                                  const Graph &h,
                                                  const TreeDecomposition &dH);

struct SearchStats {
  std::size_t frames_pushed = 0;
  std::size_t frames_popped = 0;
  std::size_t max_stack_depth = 0;
  std::size_t stack_checks = 0;
  std::size_t memo_hits = 0;
  std::size_t subproblems = 0;
};

struct OneDecompResult {
  std::optional<Permutation> mapping;
  SearchStats stats;
};

/// Decides G ~= H given a decomposition of G only. Any returned map has been
/// checked edge by edge. Throws InvalidDecomposition, SizeMismatch when the
/// vertex counts differ, WidthExceeded when dG is wider than k.
std::optional<Permutation> iso_one_decomp(const Graph &g, const TreeDecomposition &dG,
                                          const Graph &h, std::size_t k);
OneDecompResult iso_one_decomp_detailed(const Graph &g, const TreeDecomposition &dG,
                                        const Graph &h, std::size_t k);

/// Computes a width-k decomposition of one side and runs iso_one_decomp.
/// Throws WidthExceeded when both graphs have treewidth above k.
bool iso_tw(const Graph &g, const Graph &h, std::size_t k);
std::optional<Permutation> find_isomorphism_tw(const Graph &g, const Graph &h,
                                               std::size_t k);

/// Stable colour refinement run on the disjoint union, so colours are
/// comparable across the two graphs.
std::pair<std::vector<int>, std::vector<int>> joint_colour_refinement(const Graph &g,
                                                                      const Graph &h);

} // namespace twiso
