#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "twiso/error.hpp"

namespace twiso {

using Vertex = std::int32_t;
inline constexpr Vertex kNoVertex = -1;

struct Edge {
  Vertex u;
  Vertex v;
  auto operator<=>(const Edge &) const = default;
};

/// Ascending set of vertex labels. Iteration order is always ascending, which
/// fixes every downstream tie-break.
class VertexSet {
public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members);
  /// Sorts and removes duplicates.
  static VertexSet from_unsorted(std::vector<Vertex> members);
  static VertexSet range(Vertex count);

  bool contains(Vertex v) const;
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  Vertex front() const { return members_.front(); }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  const std::vector<Vertex> &members() const noexcept { return members_; }

  bool is_subset_of(const VertexSet &other) const;
  bool intersects(const VertexSet &other) const;

  friend VertexSet set_union(const VertexSet &a, const VertexSet &b);
  friend VertexSet set_intersection(const VertexSet &a, const VertexSet &b);
  friend VertexSet set_difference(const VertexSet &a, const VertexSet &b);

  auto operator<=>(const VertexSet &) const = default;

private:
  std::vector<Vertex> members_;
};

/// Simple undirected graph on vertices 0..n-1. Immutable after construction.
class Graph {
public:
  Graph() = default;
  explicit Graph(std::size_t vertex_count);
  /// Throws InvalidVertex for out-of-range endpoints and InvalidEdge for
  /// self-loops or repeated pairs.
  Graph(std::size_t vertex_count, std::span<const Edge> edges);
  Graph(std::size_t vertex_count, std::initializer_list<Edge> edges)
      : Graph(vertex_count, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }
  bool has_vertex(Vertex v) const noexcept {
    return v >= 0 && static_cast<std::size_t>(v) < adjacency_.size();
  }
  bool has_edge(Vertex u, Vertex v) const;
  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  /// All edges as (min,max) pairs in ascending order.
  std::vector<Edge> edges() const;
  VertexSet vertices() const {
    return VertexSet::range(static_cast<Vertex>(vertex_count()));
  }

  void check_vertex(Vertex v) const;

  bool operator==(const Graph &) const = default;

private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// A graph on a subset of another graph's vertices, relabeled densely in
/// ascending order of the original labels.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_original; // local -> original
  std::vector<Vertex> to_local;    // original -> local, kNoVertex if dropped
};

struct BipartiteSubgraph {
  InducedSubgraph induced;
  VertexSet u_side; // local labels
  VertexSet w_side; // local labels
};

/// Shortest path length, or nullopt when u and v lie in different components.
std::optional<std::size_t> distance(const Graph &g, Vertex u, Vertex v);

/// Breadth-first distances from a set of sources; nullopt for unreachable.
std::vector<std::optional<std::size_t>> distances_from(const Graph &g,
                                                      const VertexSet &sources);

std::optional<std::size_t> set_distance(const Graph &g, const VertexSet &s,
                                        Vertex u);

/// Open neighbourhood of a set: vertices adjacent to some member of s that are
/// not themselves in s.
VertexSet neighbors_of_set(const Graph &g, const VertexSet &s);

/// Components of g minus `removed`, each ascending, listed by smallest member.
std::vector<VertexSet> connected_components(const Graph &g,
                                            const VertexSet &removed = {});

bool is_connected(const Graph &g);

/// True iff some vertex of source \ forbidden reaches target in g \ forbidden.
bool reachable_avoiding(const Graph &g, const VertexSet &source, Vertex target,
                        const VertexSet &forbidden);

InducedSubgraph induced_subgraph(const Graph &g, const VertexSet &keep);

BipartiteSubgraph induced_bipartite(const Graph &g, const VertexSet &u_side,
                                    const VertexSet &w_side);

/// Image list over 0..n-1: vertex v maps to image[v].
using Permutation = std::vector<Vertex>;

bool is_permutation(std::span<const Vertex> image, std::size_t n);
Permutation inverse(std::span<const Vertex> image);
Permutation compose(std::span<const Vertex> first, std::span<const Vertex> then);

/// Vertex v of g becomes image[v]. Throws InvalidParams if image is not a
/// permutation of 0..n-1.
Graph relabel(const Graph &g, std::span<const Vertex> image);

/// True iff image is a bijection V(g) -> V(h) mapping edges onto edges.
bool is_isomorphism(const Graph &g, const Graph &h,
                    std::span<const Vertex> image);

} // namespace twiso
