#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twiso/augmented_tree.hpp"
#include "twiso/graph.hpp"

namespace twiso {

enum class Order { Less, Equal, Greater };

/// An arrangement of a bag: sequence[i] is the vertex placed at position i.
struct BagOrdering {
  std::vector<Vertex> sequence;
  auto operator<=>(const BagOrdering &) const = default;
};

/// Token stream produced by the order. Lists are written as `1 item` per
/// element and closed by `0`, so plain lexicographic comparison of two streams
/// is lexicographic comparison of the structures, with a proper prefix first.
using OrderCode = std::vector<std::uint32_t>;

/// Admissible pairs of bag orderings. Each ordering carries a tag; a left and a
/// right ordering form an admitted pair iff their tags are equal. At the top
/// level every ordering carries the same tag, giving Sym(X) x Sym(X') even for
/// bags of different sizes. Below the root admitted pairs always have equal
/// length. When descending into a
/// child the tag records where the separating set sits under the parent
/// ordering and the bipartite edges between it and the child bag, so equal
/// tags means the pair extends the parent correspondence and matches the
/// bipartite graphs.
struct ThetaSet {
  struct Choice {
    BagOrdering ordering;
    OrderCode tag;
  };
  std::vector<Choice> left;
  std::vector<Choice> right;

  static ThetaSet full(const VertexSet &left_bag, const VertexSet &right_bag);
  std::vector<std::pair<std::size_t, std::size_t>> admitted_pairs() const;
  bool empty() const;
};

/// Theta for two child bag nodes given the orderings chosen for their parent
/// bags. Child handles must be grandchildren of the parent handles.
ThetaSet restricted_theta(SubtreeHandle parent_left, const BagOrdering &sigma_left,
                          SubtreeHandle child_left, SubtreeHandle parent_right,
                          const BagOrdering &sigma_right, SubtreeHandle child_right);

/// Isomorphism order of two subtrees rooted at bag nodes. Each side is
/// represented by its smallest (tag, bag subgraph, subtree size, child count,
/// ordered children) over the orderings theta allows, and the two are compared
/// lexicographically. Throws NoAdmissibleMapping when theta admits no pair.
Order compare_augmented(SubtreeHandle left, SubtreeHandle right,
                        const ThetaSet &theta);

/// Minimal code of the whole augmented tree over all root-bag orderings.
OrderCode root_code(const AugmentedTree &tree);

struct CanonicalForm {
  std::vector<std::uint8_t> bytes;
  std::string hex() const;
  auto operator<=>(const CanonicalForm &) const = default;
};

struct Canonization {
  CanonicalForm form;
  Permutation labeling; // vertex -> canonical label
  VertexSet root;       // root set realising the form
};

/// Isomorphism for connected graphs of tree distance width <= k. Throws
/// DisconnectedGraph, or WidthExceeded when neither graph has width <= k.
bool iso_tdw(const Graph &g, const Graph &h, std::size_t k);

Canonization canonize_tdw(const Graph &g, std::size_t k);
CanonicalForm canon_tdw(const Graph &g, std::size_t k);
Permutation canonical_map(const Graph &g, std::size_t k);

/// Root sets of size <= k whose minimal decomposition has width <= k.
std::vector<VertexSet> admissible_roots(const Graph &g, std::size_t k);

} // namespace twiso
