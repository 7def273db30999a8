#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "twiso/graph.hpp"
#include "twiso/tdd.hpp"

namespace twiso {

using NodeId = std::size_t;

enum class NodeKind { Bag, Separator };

struct AugmentedNode {
  NodeKind kind;
  BagId bag = 0;            // meaningful for Bag nodes
  VertexSet vertices;       // bag contents or the separating set
  NodeId parent = 0;        // root maps to itself
  std::vector<NodeId> children;
};

/// Bag nodes alternating with minimum-separating-set nodes over a minimal tree
/// distance decomposition. Under each bag the separating sets are distinct and
/// ordered by content; under each separating set the child bags are ordered by
/// bag id.
class AugmentedTree {
public:
  /// Throws InvalidDecomposition unless validate_tdd(g, d) is empty.
  AugmentedTree(Graph g, TreeDistanceDecomposition d);

  const Graph &graph() const noexcept { return graph_; }
  const TreeDistanceDecomposition &decomposition() const noexcept { return tdd_; }
  const std::vector<AugmentedNode> &nodes() const noexcept { return nodes_; }
  const AugmentedNode &node(NodeId id) const { return nodes_.at(id); }
  NodeId root() const noexcept { return 0; }
  NodeId bag_node(BagId bag) const { return bag_node_.at(bag); }
  std::size_t depth_of(NodeId id) const;

  /// Vertices associated with some node of the subtree rooted at id.
  const VertexSet &subtree_vertices(NodeId id) const { return subtree_vertices_.at(id); }

  /// `B(v,...)` and `S(v,...)` with children in brackets.
  std::string serialize(Vertex label_offset = 0) const;

private:
  Graph graph_;
  TreeDistanceDecomposition tdd_;
  std::vector<AugmentedNode> nodes_;
  std::vector<NodeId> bag_node_;
  std::vector<VertexSet> subtree_vertices_;
};

struct SubtreeHandle {
  const AugmentedTree *tree;
  NodeId node;
};

AugmentedTree build_augmented_tree(const Graph &g,
                                   const TreeDistanceDecomposition &d);

InducedSubgraph subtree_graph(SubtreeHandle h);
std::size_t subtree_size(SubtreeHandle h);

} // namespace twiso
