#include "twiso/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace twiso {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidVertex: return "InvalidVertex";
  case ErrorCode::InvalidEdge: return "InvalidEdge";
  case ErrorCode::EmptySet: return "EmptySet";
  case ErrorCode::InvalidQuery: return "InvalidQuery";
  case ErrorCode::InvalidBipartition: return "InvalidBipartition";
  case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
  case ErrorCode::RootHasNoParent: return "RootHasNoParent";
  case ErrorCode::InvalidDecomposition: return "InvalidDecomposition";
  case ErrorCode::NoAdmissibleMapping: return "NoAdmissibleMapping";
  case ErrorCode::WidthExceeded: return "WidthExceeded";
  case ErrorCode::SizeMismatch: return "SizeMismatch";
  case ErrorCode::InvalidParams: return "InvalidParams";
  case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// VertexSet -----------------------------------------------------------------

VertexSet::VertexSet(std::initializer_list<Vertex> members)
    : VertexSet(from_unsorted(std::vector<Vertex>(members))) {}

VertexSet VertexSet::from_unsorted(std::vector<Vertex> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  VertexSet s;
  s.members_ = std::move(members);
  return s;
}

VertexSet VertexSet::range(Vertex count) {
  VertexSet s;
  s.members_.resize(static_cast<std::size_t>(std::max<Vertex>(count, 0)));
  for (std::size_t i = 0; i < s.members_.size(); ++i)
    s.members_[i] = static_cast<Vertex>(i);
  return s;
}

bool VertexSet::contains(Vertex v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

bool VertexSet::is_subset_of(const VertexSet &other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

bool VertexSet::intersects(const VertexSet &other) const {
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a;
    else ++b;
  }
  return false;
}

VertexSet set_union(const VertexSet &a, const VertexSet &b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out.members_));
  return out;
}

VertexSet set_intersection(const VertexSet &a, const VertexSet &b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out.members_));
  return out;
}

VertexSet set_difference(const VertexSet &a, const VertexSet &b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out.members_));
  return out;
}

// Graph ---------------------------------------------------------------------

Graph::Graph(std::size_t vertex_count) : adjacency_(vertex_count) {}

Graph::Graph(std::size_t vertex_count, std::span<const Edge> edges)
    : adjacency_(vertex_count) {
  for (const Edge &e : edges) {
    check_vertex(e.u);
    check_vertex(e.v);
    if (e.u == e.v)
      throw Error(ErrorCode::InvalidEdge,
                  "self-loop at vertex " + std::to_string(e.u));
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (std::size_t v = 0; v < adjacency_.size(); ++v) {
    auto &adj = adjacency_[v];
    std::sort(adj.begin(), adj.end());
    if (auto dup = std::adjacent_find(adj.begin(), adj.end()); dup != adj.end())
      throw Error(ErrorCode::InvalidEdge, "duplicate edge {" +
                                              std::to_string(v) + "," +
                                              std::to_string(*dup) + "}");
  }
  edge_count_ = edges.size();
}

void Graph::check_vertex(Vertex v) const {
  if (!has_vertex(v))
    throw Error(ErrorCode::InvalidVertex,
                "vertex " + std::to_string(v) + " not in [0," +
                    std::to_string(vertex_count()) + ")");
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (!has_vertex(u) || !has_vertex(v)) return false;
  const auto &adj = adjacency_[u];
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[v];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < adjacency_.size(); ++u)
    for (Vertex v : adjacency_[u])
      if (static_cast<Vertex>(u) < v) out.push_back({static_cast<Vertex>(u), v});
  return out;
}

// Primitives ----------------------------------------------------------------

namespace {

void check_set(const Graph &g, const VertexSet &s) {
  for (Vertex v : s) g.check_vertex(v);
}

// Marks every vertex reachable from `sources` without entering a blocked one.
std::vector<char> flood(const Graph &g, const VertexSet &sources,
                        const std::vector<char> &blocked) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    if (blocked[s] || seen[s]) continue;
    seen[s] = 1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (blocked[w] || seen[w]) continue;
      seen[w] = 1;
      queue.push_back(w);
    }
  }
  return seen;
}

std::vector<char> mask_of(const Graph &g, const VertexSet &s) {
  std::vector<char> mask(g.vertex_count(), 0);
  for (Vertex v : s) mask[v] = 1;
  return mask;
}

} // namespace

std::vector<std::optional<std::size_t>> distances_from(const Graph &g,
                                                      const VertexSet &sources) {
  check_set(g, sources);
  std::vector<std::optional<std::size_t>> dist(g.vertex_count());
  std::deque<Vertex> queue;
  for (Vertex s : sources) {
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (dist[w]) continue;
      dist[w] = *dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

std::optional<std::size_t> distance(const Graph &g, Vertex u, Vertex v) {
  g.check_vertex(u);
  g.check_vertex(v);
  return distances_from(g, VertexSet{u})[v];
}

std::optional<std::size_t> set_distance(const Graph &g, const VertexSet &s,
                                        Vertex u) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "set_distance of empty set");
  g.check_vertex(u);
  return distances_from(g, s)[u];
}

VertexSet neighbors_of_set(const Graph &g, const VertexSet &s) {
  check_set(g, s);
  std::vector<Vertex> out;
  for (Vertex v : s)
    for (Vertex w : g.neighbors(v))
      if (!s.contains(w)) out.push_back(w);
  return VertexSet::from_unsorted(std::move(out));
}

std::vector<VertexSet> connected_components(const Graph &g,
                                            const VertexSet &removed) {
  check_set(g, removed);
  std::vector<char> blocked = mask_of(g, removed);
  std::vector<VertexSet> parts;
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
    if (blocked[v]) continue;
    std::vector<char> seen = flood(g, VertexSet{v}, blocked);
    std::vector<Vertex> members;
    for (Vertex w = 0; w < static_cast<Vertex>(g.vertex_count()); ++w)
      if (seen[w]) {
        members.push_back(w);
        blocked[w] = 1;
      }
    parts.push_back(VertexSet::from_unsorted(std::move(members)));
  }
  return parts;
}

bool is_connected(const Graph &g) {
  return connected_components(g).size() <= 1;
}

bool reachable_avoiding(const Graph &g, const VertexSet &source, Vertex target,
                        const VertexSet &forbidden) {
  check_set(g, source);
  check_set(g, forbidden);
  g.check_vertex(target);
  if (forbidden.contains(target))
    throw Error(ErrorCode::InvalidQuery,
                "target " + std::to_string(target) + " is forbidden");
  return flood(g, source, mask_of(g, forbidden))[target] != 0;
}

InducedSubgraph induced_subgraph(const Graph &g, const VertexSet &keep) {
  check_set(g, keep);
  InducedSubgraph out;
  out.to_original = keep.members();
  out.to_local.assign(g.vertex_count(), kNoVertex);
  for (std::size_t i = 0; i < out.to_original.size(); ++i)
    out.to_local[out.to_original[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (Vertex u : keep)
    for (Vertex w : g.neighbors(u))
      if (u < w && out.to_local[w] != kNoVertex)
        edges.push_back({out.to_local[u], out.to_local[w]});
  out.graph = Graph(keep.size(), edges);
  return out;
}

BipartiteSubgraph induced_bipartite(const Graph &g, const VertexSet &u_side,
                                    const VertexSet &w_side) {
  check_set(g, u_side);
  check_set(g, w_side);
  if (u_side.intersects(w_side))
    throw Error(ErrorCode::InvalidBipartition, "sides overlap");
  BipartiteSubgraph out;
  VertexSet all = set_union(u_side, w_side);
  InducedSubgraph &ind = out.induced;
  ind.to_original = all.members();
  ind.to_local.assign(g.vertex_count(), kNoVertex);
  for (std::size_t i = 0; i < ind.to_original.size(); ++i)
    ind.to_local[ind.to_original[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (Vertex u : u_side)
    for (Vertex w : g.neighbors(u))
      if (w_side.contains(w)) {
        Vertex a = ind.to_local[u], b = ind.to_local[w];
        edges.push_back({std::min(a, b), std::max(a, b)});
      }
  ind.graph = Graph(all.size(), edges);
  std::vector<Vertex> us, ws;
  for (Vertex u : u_side) us.push_back(ind.to_local[u]);
  for (Vertex w : w_side) ws.push_back(ind.to_local[w]);
  out.u_side = VertexSet::from_unsorted(std::move(us));
  out.w_side = VertexSet::from_unsorted(std::move(ws));
  return out;
}

bool is_permutation(std::span<const Vertex> image, std::size_t n) {
  if (image.size() != n) return false;
  std::vector<char> hit(n, 0);
  for (Vertex v : image) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

Permutation inverse(std::span<const Vertex> image) {
  if (!is_permutation(image, image.size()))
    throw Error(ErrorCode::InvalidParams, "not a permutation");
  Permutation inv(image.size());
  for (std::size_t i = 0; i < image.size(); ++i)
    inv[image[i]] = static_cast<Vertex>(i);
  return inv;
}

Permutation compose(std::span<const Vertex> first, std::span<const Vertex> then) {
  Permutation out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = then[first[i]];
  return out;
}

Graph relabel(const Graph &g, std::span<const Vertex> image) {
  if (!is_permutation(image, g.vertex_count()))
    throw Error(ErrorCode::InvalidParams, "relabeling is not a permutation");
  std::vector<Edge> edges;
  for (Edge e : g.edges()) {
    Vertex a = image[e.u], b = image[e.v];
    edges.push_back({std::min(a, b), std::max(a, b)});
  }
  return Graph(g.vertex_count(), edges);
}

bool is_isomorphism(const Graph &g, const Graph &h,
                    std::span<const Vertex> image) {
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
    return false;
  if (!is_permutation(image, g.vertex_count())) return false;
  for (Edge e : g.edges())
    if (!h.has_edge(image[e.u], image[e.v])) return false;
  return true;
}

} // namespace twiso
