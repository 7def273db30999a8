#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twiso/graph.hpp"
#include "twiso/tdd.hpp"

namespace twiso {

/// Bags over a tree given by its edge list. The root is optional; algorithms
/// that need one default to bag 0.
struct TreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<std::pair<BagId, BagId>> tree_edges;
  std::optional<BagId> root;

  /// Largest bag size minus one (0 when every bag is empty).
  std::size_t width() const;
};

enum class TdClause { Structure, VertexCoverage, EdgeCoverage, Connectivity };

struct TdViolation {
  TdClause clause;
  std::string detail;
  std::optional<Vertex> vertex;
  std::optional<Edge> edge;
};

struct TdReport {
  std::vector<TdViolation> violations;
  std::size_t width = 0;
  bool valid() const noexcept { return violations.empty(); }
};

TdReport validate_tree_decomposition(const Graph &g, const TreeDecomposition &d);

/// Parent/children view of a decomposition tree hanging from `root`.
struct RootedTree {
  BagId root = 0;
  std::vector<BagId> parent; // root maps to itself
  std::vector<std::vector<BagId>> children;
  std::vector<BagId> preorder;
};

/// Throws InvalidDecomposition if the tree edges do not form a tree.
RootedTree root_tree(const TreeDecomposition &d, BagId root);

/// Union of the bags in the subtree below each bag.
std::vector<VertexSet> subtree_vertices(const TreeDecomposition &d,
                                        const RootedTree &t);

/// Children of r sorted by the least label of their subtree outside X_r.
/// Children adding no vertex outside X_r come first, by bag content.
std::vector<BagId> lex_subtree_order(const Graph &g, const TreeDecomposition &d,
                                     BagId r, const std::vector<BagId> &children);

/// True iff claimed_component is child_bag plus every vertex that child_bag
/// cuts off from parent_bag \ child_bag, and no edge leaves the cut-off part
/// except into child_bag or parent_bag. With parent_bag inside child_bag
/// nothing is cut off.
bool is_valid_child_bag(const Graph &h, const VertexSet &parent_bag,
                        const VertexSet &child_bag,
                        const VertexSet &claimed_component);

/// Exact search over elimination orders; nullopt when treewidth exceeds k.
std::optional<TreeDecomposition> compute_tree_decomposition(const Graph &g,
                                                            std::size_t k);

} // namespace twiso
