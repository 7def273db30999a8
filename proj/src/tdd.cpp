#include "twiso/tdd.hpp"

#include <algorithm>
#include <sstream>

namespace twiso {

std::size_t TreeDistanceDecomposition::width() const {
  std::size_t w = 0;
  for (const auto &bag : bags) w = std::max(w, bag.size());
  return w;
}

std::vector<std::vector<BagId>> TreeDistanceDecomposition::children() const {
  std::vector<std::vector<BagId>> out(bags.size());
  for (BagId i = 0; i < parent.size(); ++i)
    if (i != root && parent[i] < bags.size()) out[parent[i]].push_back(i);
  return out;
}

std::vector<DecompositionRecord> records(const TreeDistanceDecomposition &d) {
  std::vector<DecompositionRecord> out;
  for (BagId i = 0; i < d.bags.size(); ++i)
    out.push_back({i, d.depth[i], d.bags[i].members()});
  return out;
}

std::string render_records(const TreeDistanceDecomposition &d,
                           Vertex label_offset) {
  std::ostringstream os;
  for (const auto &rec : records(d)) {
    os << "b " << rec.bag_id << ' ' << rec.bag_depth;
    for (Vertex v : rec.vertices) os << ' ' << v + label_offset;
    os << '\n';
  }
  return os.str();
}

namespace {

void check_inputs(const Graph &g, const VertexSet &s, const VertexSet &x) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "root set is empty");
  if (x.empty()) throw Error(ErrorCode::EmptySet, "bag is empty");
  for (Vertex v : s) g.check_vertex(v);
  for (Vertex v : x) g.check_vertex(v);
}

// Members of Gamma(x)\x split by whether s reaches them in g \ x.
struct Frontier {
  std::vector<Vertex> toward_root;
  std::vector<Vertex> away_from_root;
};

Frontier frontier(const Graph &g, const VertexSet &s, const VertexSet &x) {
  Frontier f;
  VertexSet sources = set_difference(s, x);
  for (Vertex v : neighbors_of_set(g, x)) {
    if (reachable_avoiding(g, sources, v, x)) f.toward_root.push_back(v);
    else f.away_from_root.push_back(v);
  }
  return f;
}

} // namespace

VertexSet parent_bag(const Graph &g, const VertexSet &s, const VertexSet &x) {
  check_inputs(g, s, x);
  if (x == s)
    throw Error(ErrorCode::RootHasNoParent, "the root bag has no parent");
  std::vector<Vertex> near = frontier(g, s, x).toward_root;
  if (near.empty()) return {};
  // The neighbours of x found above are only part of the parent bag: it is
  // the whole level d-1 slice of their component among vertices at depth
  // >= d-1.
  auto dist = distances_from(g, s);
  const std::size_t level = *dist[near.front()];
  if (level == 0) return s;
  std::vector<Vertex> shallower;
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
    if (!dist[v] || *dist[v] < level) shallower.push_back(v);
  for (const VertexSet &part : connected_components(g, VertexSet::from_unsorted(shallower)))
    if (part.contains(near.front())) {
      std::vector<Vertex> bag;
      for (Vertex v : part)
        if (*dist[v] == level) bag.push_back(v);
      return VertexSet::from_unsorted(std::move(bag));
    }
  return {};
}

std::vector<VertexSet> child_bags(const Graph &g, const VertexSet &s,
                                  const VertexSet &x) {
  check_inputs(g, s, x);
  std::vector<Vertex> away = frontier(g, s, x).away_from_root;
  std::vector<VertexSet> out;
  if (away.empty()) return out;
  for (const VertexSet &component : connected_components(g, x)) {
    std::vector<Vertex> members;
    for (Vertex v : away)
      if (component.contains(v)) members.push_back(v);
    if (!members.empty()) out.push_back(VertexSet::from_unsorted(members));
  }
  std::sort(out.begin(), out.end(),
            [](const VertexSet &a, const VertexSet &b) { return a.front() < b.front(); });
  return out;
}

std::optional<VertexSet> first_child(const Graph &g, const VertexSet &s,
                                     const VertexSet &x) {
  auto children = child_bags(g, s, x);
  if (children.empty()) return std::nullopt;
  return children.front();
}

std::optional<VertexSet> next_sibling(const Graph &g, const VertexSet &s,
                                      const VertexSet &x) {
  VertexSet p = parent_bag(g, s, x);
  for (const VertexSet &sibling : child_bags(g, s, p))
    if (sibling.front() > x.front()) return sibling;
  return std::nullopt;
}

TreeDistanceDecomposition build_minimal_tdd(const Graph &g, const VertexSet &s) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "root set is empty");
  for (Vertex v : s) g.check_vertex(v);
  if (!is_connected(g))
    throw Error(ErrorCode::DisconnectedGraph,
                "tree distance decompositions need a connected graph");

  TreeDistanceDecomposition d;
  auto add_bag = [&d](VertexSet bag, BagId parent, std::size_t depth) {
    d.bags.push_back(std::move(bag));
    d.parent.push_back(parent);
    d.depth.push_back(depth);
    return d.bags.size() - 1;
  };
  BagId current = add_bag(s, 0, 0);

  // Depth-first: descend to the first child when there is one, otherwise
  // move to the next sibling, climbing until one exists or the root is hit.
  while (true) {
    if (auto child = first_child(g, s, d.bags[current])) {
      current = add_bag(std::move(*child), current, d.depth[current] + 1);
      continue;
    }
    bool moved = false;
    while (current != d.root) {
      if (auto sibling = next_sibling(g, s, d.bags[current])) {
        BagId p = d.parent[current];
        current = add_bag(std::move(*sibling), p, d.depth[current]);
        moved = true;
        break;
      }
      current = d.parent[current];
    }
    if (!moved) break;
  }
  return d;
}

std::vector<TddViolation> validate_tdd(const Graph &g,
                                       const TreeDistanceDecomposition &d) {
  std::vector<TddViolation> out;
  const std::size_t count = d.bags.size();
  auto structure = [&out](std::string detail, std::optional<BagId> bag = {}) {
    out.push_back({TddClause::Structure, std::move(detail), std::nullopt, bag});
  };

  if (count == 0) {
    if (g.vertex_count() != 0) structure("no bags");
    return out;
  }
  if (d.parent.size() != count || d.depth.size() != count) {
    structure("parent/depth arrays do not match bag count");
    return out;
  }
  if (d.root >= count || d.parent[d.root] != d.root) {
    structure("root does not map to itself");
    return out;
  }
  for (BagId i = 0; i < count; ++i) {
    if (d.parent[i] >= count) {
      structure("parent out of range", i);
      return out;
    }
    if (d.bags[i].empty()) structure("empty bag", i);
    for (Vertex v : d.bags[i])
      if (!g.has_vertex(v)) {
        structure("bag holds a vertex outside the graph", i);
        return out;
      }
  }
  // Tree distance of every bag, rejecting cycles.
  std::vector<std::size_t> tree_depth(count, 0);
  for (BagId i = 0; i < count; ++i) {
    BagId walk = i;
    std::size_t steps = 0;
    while (walk != d.root && steps <= count) {
      walk = d.parent[walk];
      ++steps;
    }
    if (walk != d.root) {
      structure("parent links contain a cycle", i);
      return out;
    }
    tree_depth[i] = steps;
    if (d.depth[i] != steps)
      structure("recorded depth differs from tree distance", i);
  }
  if (!out.empty()) return out;

  // Partition.
  std::vector<std::optional<BagId>> bag_of(g.vertex_count());
  for (BagId i = 0; i < count; ++i)
    for (Vertex v : d.bags[i]) {
      if (bag_of[v])
        out.push_back({TddClause::Partition, "vertex in two bags", v, i});
      bag_of[v] = i;
    }
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
    if (!bag_of[v]) out.push_back({TddClause::Partition, "vertex in no bag", v, {}});
  if (!out.empty()) return out;

  // Depth equals distance from the root bag.
  auto dist = distances_from(g, d.bags[d.root]);
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
    BagId b = *bag_of[v];
    if (!dist[v] || *dist[v] != tree_depth[b])
      out.push_back({TddClause::Depth, "vertex depth differs from its distance to the root bag",
                     v, b});
  }

  // Edge locality.
  for (Edge e : g.edges()) {
    BagId a = *bag_of[e.u], b = *bag_of[e.v];
    if (a == b || d.parent[a] == b || d.parent[b] == a) continue;
    out.push_back({TddClause::EdgeLocality,
                   "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                       "} spans non-adjacent bags",
                   e.u, a});
  }

  // Minimality: every subtree induces a connected subgraph.
  auto kids = d.children();
  for (BagId i = 0; i < count; ++i) {
    std::vector<Vertex> members;
    std::vector<BagId> todo{i};
    while (!todo.empty()) {
      BagId b = todo.back();
      todo.pop_back();
      members.insert(members.end(), d.bags[b].begin(), d.bags[b].end());
      todo.insert(todo.end(), kids[b].begin(), kids[b].end());
    }
    auto sub = induced_subgraph(g, VertexSet::from_unsorted(members));
    if (!is_connected(sub.graph))
      out.push_back({TddClause::Minimality, "subtree does not induce a connected subgraph",
                     std::nullopt, i});
  }
  return out;
}

std::optional<TdwResult> tree_distance_width_with_root(const Graph &g,
                                                       std::size_t k_max) {
  if (!is_connected(g))
    throw Error(ErrorCode::DisconnectedGraph, "tree distance width of a disconnected graph");
  if (g.vertex_count() == 0) return TdwResult{0, {}};
  std::optional<TdwResult> best;
  for_each_subset(g.vertex_count(), k_max, [&](const VertexSet &root) {
    // A root set never yields a width below its own size.
    if (best && best->width <= root.size()) return false;
    std::size_t w = build_minimal_tdd(g, root).width();
    if (!best || w < best->width) best = TdwResult{w, root};
    return true;
  });
  if (!best || best->width > k_max) return std::nullopt;
  return best;
}

std::optional<std::size_t> tree_distance_width(const Graph &g,
                                               std::size_t k_max) {
  auto r = tree_distance_width_with_root(g, k_max);
  if (!r) return std::nullopt;
  return r->width;
}

} // namespace twiso
