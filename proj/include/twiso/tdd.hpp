#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "twiso/graph.hpp"

namespace twiso {

using BagId = std::size_t;

/// Rooted tree of pairwise disjoint bags. A bag's depth equals the graph
/// distance of each of its vertices from the root bag, and every edge lies
/// within one bag or between tree-adjacent bags.
struct TreeDistanceDecomposition {
  std::vector<VertexSet> bags;
  std::vector<BagId> parent; // root maps to itself
  std::vector<std::size_t> depth;
  BagId root = 0;

  std::size_t bag_count() const noexcept { return bags.size(); }
  /// Largest bag size.
  std::size_t width() const;
  /// Children of every bag, ascending by bag id.
  std::vector<std::vector<BagId>> children() const;
};

/// One output line of the depth-first construction.
struct DecompositionRecord {
  BagId bag_id;
  std::size_t bag_depth;
  std::vector<Vertex> vertices;
};

std::vector<DecompositionRecord> records(const TreeDistanceDecomposition &d);

/// `b <bag_id> <depth> <v1> <v2> ...`, vertices shifted by label_offset.
std::string render_records(const TreeDistanceDecomposition &d,
                           Vertex label_offset = 1);

// The three traversal functions below only look at (g, s, x): they never
// need the decomposition built so far.

/// Vertices of the parent bag of the non-root bag x.
VertexSet parent_bag(const Graph &g, const VertexSet &s, const VertexSet &x);

/// Child bag of x holding the least-labeled vertex among x's children.
std::optional<VertexSet> first_child(const Graph &g, const VertexSet &s,
                                     const VertexSet &x);

/// The sibling of x whose least label follows x's least label most closely.
std::optional<VertexSet> next_sibling(const Graph &g, const VertexSet &s,
                                      const VertexSet &x);

/// All child bags of x, ordered by their least label.
std::vector<VertexSet> child_bags(const Graph &g, const VertexSet &s,
                                  const VertexSet &x);

/// The unique minimal tree distance decomposition of g rooted at s, bag ids
/// in depth-first discovery order with the root at 0.
TreeDistanceDecomposition build_minimal_tdd(const Graph &g, const VertexSet &s);

enum class TddClause { Structure, Partition, Depth, EdgeLocality, Minimality };

struct TddViolation {
  TddClause clause;
  std::string detail;
  std::optional<Vertex> vertex; // witness, when the clause has one
  std::optional<BagId> bag;
};

/// Empty result means valid.
std::vector<TddViolation> validate_tdd(const Graph &g,
                                       const TreeDistanceDecomposition &d);

struct TdwResult {
  std::size_t width;
  VertexSet root; // a root set achieving the width
};

/// Minimum over root sets of size <= k_max of the width of the minimal
/// decomposition; nullopt when every candidate exceeds k_max.
std::optional<TdwResult> tree_distance_width_with_root(const Graph &g,
                                                       std::size_t k_max);
std::optional<std::size_t> tree_distance_width(const Graph &g,
                                               std::size_t k_max);

/// Calls visit(set) for every subset of 0..n-1 with size in [1, max_size], in
/// order of size then lexicographic content.
template <typename Visit>
void for_each_subset(std::size_t n, std::size_t max_size, Visit &&visit) {
  for (std::size_t size = 1; size <= max_size && size <= n; ++size) {
    std::vector<Vertex> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = static_cast<Vertex>(i);
    while (true) {
      if (!visit(VertexSet::from_unsorted(pick))) return;
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == static_cast<Vertex>(n - size + i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
}

} // namespace twiso
