#include "twiso/augmented_tree.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace twiso {

AugmentedTree::AugmentedTree(Graph g, TreeDistanceDecomposition d)
    : graph_(std::move(g)), tdd_(std::move(d)) {
  if (auto violations = validate_tdd(graph_, tdd_); !violations.empty())
    throw Error(ErrorCode::InvalidDecomposition, violations.front().detail);

  const auto kids = tdd_.children();
  bag_node_.assign(tdd_.bag_count(), 0);

  // Breadth over bags: each bag node gets its separating-set nodes, each
  // separating-set node collects the child bags it separates.
  std::vector<BagId> order{tdd_.root};
  nodes_.push_back({NodeKind::Bag, tdd_.root, tdd_.bags[tdd_.root], 0, {}});
  bag_node_[tdd_.root] = 0;
  for (std::size_t at = 0; at < order.size(); ++at) {
    BagId a = order[at];
    NodeId a_node = bag_node_[a];
    std::map<VertexSet, std::vector<BagId>> by_separator;
    for (BagId b : kids[a]) {
      VertexSet sep = set_intersection(tdd_.bags[a], neighbors_of_set(graph_, tdd_.bags[b]));
      by_separator[sep].push_back(b);
    }
    for (auto &[sep, members] : by_separator) {
      NodeId s_node = nodes_.size();
      nodes_.push_back({NodeKind::Separator, 0, sep, a_node, {}});
      nodes_[a_node].children.push_back(s_node);
      for (BagId b : members) {
        NodeId b_node = nodes_.size();
        nodes_.push_back({NodeKind::Bag, b, tdd_.bags[b], s_node, {}});
        nodes_[s_node].children.push_back(b_node);
        bag_node_[b] = b_node;
        order.push_back(b);
      }
    }
  }

  // Children always follow their parent in node order, so a reverse sweep
  // accumulates subtree vertex sets.
  subtree_vertices_.resize(nodes_.size());
  for (NodeId id = nodes_.size(); id-- > 0;) {
    VertexSet acc = nodes_[id].vertices;
    for (NodeId c : nodes_[id].children) acc = set_union(acc, subtree_vertices_[c]);
    subtree_vertices_[id] = std::move(acc);
  }
}

std::size_t AugmentedTree::depth_of(NodeId id) const {
  const AugmentedNode &n = node(id);
  return n.kind == NodeKind::Bag ? tdd_.depth[n.bag]
                                 : tdd_.depth[node(n.parent).bag];
}

std::string AugmentedTree::serialize(Vertex label_offset) const {
  std::ostringstream os;
  auto emit = [&](auto &&self, NodeId id) -> void {
    const AugmentedNode &n = nodes_[id];
    os << (n.kind == NodeKind::Bag ? 'B' : 'S') << '(';
    bool first = true;
    for (Vertex v : n.vertices) {
      if (!first) os << ',';
      os << v + label_offset;
      first = false;
    }
    os << ')';
    if (n.children.empty()) return;
    os << '[';
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) os << ' ';
      self(self, n.children[i]);
    }
    os << ']';
  };
  emit(emit, root());
  return os.str();
}

AugmentedTree build_augmented_tree(const Graph &g,
                                   const TreeDistanceDecomposition &d) {
  return AugmentedTree(g, d);
}

InducedSubgraph subtree_graph(SubtreeHandle h) {
  return induced_subgraph(h.tree->graph(), h.tree->subtree_vertices(h.node));
}

std::size_t subtree_size(SubtreeHandle h) {
  return h.tree->subtree_vertices(h.node).size();
}

} // namespace twiso
