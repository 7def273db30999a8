#include "oracles.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>

namespace twiso::testing {

namespace {
constexpr std::size_t kFar = std::numeric_limits<std::size_t>::max();

Graph build(std::size_t n, const std::vector<Edge> &edges) { return Graph(n, edges); }

// Vertices reachable from start inside allowed.
std::vector<Vertex> flood(const Graph &g, Vertex start, const std::vector<char> &allowed) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<Vertex> out{start}, todo{start};
  seen[start] = 1;
  while (!todo.empty()) {
    Vertex v = todo.back();
    todo.pop_back();
    for (Vertex w : g.neighbors(v))
      if (allowed[w] && !seen[w]) {
        seen[w] = 1;
        out.push_back(w);
        todo.push_back(w);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}
} // namespace

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i < n; ++i) e.push_back({Vertex(i - 1), Vertex(i)});
  return build(n, e);
}

Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i < n; ++i) e.push_back({Vertex(i - 1), Vertex(i)});
  e.push_back({0, Vertex(n - 1)});
  return build(n, e);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.push_back({Vertex(i), Vertex(j)});
  return build(n, e);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.push_back({0, Vertex(i)});
  return build(leaves + 1, e);
}

std::vector<std::size_t> bfs_levels(const Graph &g, const VertexSet &sources) {
  std::vector<std::size_t> dist(g.vertex_count(), kFar);
  std::vector<Vertex> frontier;
  for (Vertex s : sources) {
    dist[s] = 0;
    frontier.push_back(s);
  }
  for (std::size_t d = 1; !frontier.empty(); ++d) {
    std::vector<Vertex> next;
    for (Vertex v : frontier)
      for (Vertex w : g.neighbors(v))
        if (dist[w] == kFar) {
          dist[w] = d;
          next.push_back(w);
        }
    frontier = std::move(next);
  }
  return dist;
}

std::vector<OracleBag> tdd_by_levels(const Graph &g, const VertexSet &s) {
  const std::size_t n = g.vertex_count();
  auto dist = bfs_levels(g, s);
  std::size_t deepest = 0;
  for (auto d : dist)
    if (d != kFar) deepest = std::max(deepest, d);

  auto level_slice = [&](std::size_t d, Vertex member) {
    std::vector<char> allowed(n, 0);
    for (std::size_t v = 0; v < n; ++v) allowed[v] = dist[v] != kFar && dist[v] >= d;
    std::vector<Vertex> out;
    for (Vertex v : flood(g, member, allowed))
      if (dist[v] == d) out.push_back(v);
    return VertexSet::from_unsorted(out);
  };

  std::vector<OracleBag> out;
  std::set<VertexSet> done;
  for (std::size_t d = 0; d <= deepest; ++d)
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] != d) continue;
      VertexSet bag = d == 0 ? s : level_slice(d, Vertex(v));
      if (!done.insert(bag).second) continue;
      std::optional<VertexSet> parent;
      if (d > 0) {
        // Any neighbour one level up lies in the parent's slice.
        for (Vertex w : g.neighbors(Vertex(v)))
          if (dist[w] == d - 1) {
            parent = d == 1 ? s : level_slice(d - 1, w);
            break;
          }
      }
      out.push_back({bag, d, parent});
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t tdw_exhaustive(const Graph &g) {
  const std::size_t n = g.vertex_count();
  std::size_t best = n;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Vertex> root;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1) root.push_back(Vertex(v));
    std::size_t width = 0;
    for (const auto &b : tdd_by_levels(g, VertexSet::from_unsorted(root)))
      width = std::max(width, b.bag.size());
    best = std::min(best, width);
  }
  return best;
}

std::size_t treewidth_dp(const Graph &g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return 0;
  const std::uint32_t full = (1u << n) - 1;
  // q(S, v): vertices outside S + v reachable from v through S.
  auto q = [&](std::uint32_t s, std::size_t v) {
    std::uint32_t seen = 1u << v, out = 0;
    std::vector<std::size_t> todo{v};
    while (!todo.empty()) {
      std::size_t x = todo.back();
      todo.pop_back();
      for (Vertex w : g.neighbors(Vertex(x))) {
        if (seen >> w & 1) continue;
        seen |= 1u << w;
        if (s >> w & 1) todo.push_back(std::size_t(w));
        else out |= 1u << w;
      }
    }
    return std::size_t(__builtin_popcount(out));
  };
  std::vector<long> tw(full + 1, std::numeric_limits<long>::max());
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s)
    for (std::size_t v = 0; v < n; ++v)
      if (s >> v & 1) {
        std::uint32_t rest = s & ~(1u << v);
        long cand = std::max(tw[rest], long(q(rest, v)));
        tw[s] = std::min(tw[s], cand);
      }
  return std::size_t(std::max(0L, tw[full]));
}

std::vector<bool> certificate(const Graph &g) {
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = Vertex(i);
  std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return std::pair(g.degree(a), a) < std::pair(g.degree(b), b);
  });
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && g.degree(order[j]) == g.degree(order[i])) ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  std::vector<bool> best;
  auto bits = [&] {
    std::vector<bool> out;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) out.push_back(g.has_edge(order[i], order[j]));
    return out;
  };
  auto rec = [&](auto &&self, std::size_t gi) -> void {
    if (gi == groups.size()) {
      auto b = bits();
      if (best.empty() || b < best) best = std::move(b);
      return;
    }
    auto [lo, hi] = groups[gi];
    std::sort(order.begin() + long(lo), order.begin() + long(hi));
    do {
      self(self, gi + 1);
    } while (std::next_permutation(order.begin() + long(lo), order.begin() + long(hi)));
  };
  rec(rec, 0);
  return best;
}

std::vector<Graph> connected_graphs(std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {Graph(1)};
  std::vector<Graph> out;
  std::set<std::vector<bool>> seen;
  for (const Graph &base : connected_graphs(n - 1)) {
    auto edges = base.edges();
    for (std::uint32_t mask = 1; mask < (1u << (n - 1)); ++mask) {
      auto grown = edges;
      for (std::size_t v = 0; v + 1 < n; ++v)
        if (mask >> v & 1) grown.push_back({Vertex(v), Vertex(n - 1)});
      Graph g(n, grown);
      if (seen.insert(certificate(g)).second) out.push_back(std::move(g));
    }
  }
  return out;
}

std::vector<Graph> connected_graphs_up_to(std::size_t max_n) {
  std::vector<Graph> out;
  std::vector<Graph> level;
  for (std::size_t n = 1; n <= max_n; ++n) {
    level = connected_graphs(n);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

Graph random_bounded_tdw(std::size_t n, std::size_t width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::size_t> parent;
  std::vector<Edge> edges;
  Vertex next = 0;
  auto fill_bag = [&](std::size_t size) {
    std::vector<Vertex> bag;
    for (std::size_t i = 0; i < size && std::size_t(next) < n; ++i) bag.push_back(next++);
    for (std::size_t i = 0; i < bag.size(); ++i)
      for (std::size_t j = i + 1; j < bag.size(); ++j)
        if (pick(0, 1)) edges.push_back({bag[i], bag[j]});
    return bag;
  };
  bags.push_back(fill_bag(pick(1, width)));
  // The root bag has no parent to hold it together.
  for (std::size_t i = 1; i < bags[0].size(); ++i) edges.push_back({bags[0][i - 1], bags[0][i]});
  parent.push_back(0);
  while (std::size_t(next) < n) {
    std::size_t host = pick(0, bags.size() - 1);
    auto bag = fill_bag(pick(1, width));
    const auto &up = bags[host];
    for (Vertex v : bag) {
      edges.push_back({up[pick(0, up.size() - 1)], v});
      for (Vertex u : up)
        if (pick(0, 3) == 0) edges.push_back({u, v});
    }
    bags.push_back(std::move(bag));
    parent.push_back(host);
  }
  for (auto &e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, edges);
}

Graph random_connected(std::size_t n, std::size_t extra_edges, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<std::pair<Vertex, Vertex>> edges;
  for (std::size_t v = 1; v < n; ++v) {
    Vertex u = Vertex(std::uniform_int_distribution<std::size_t>(0, v - 1)(rng));
    edges.insert({u, Vertex(v)});
  }
  const std::size_t cap = n * (n - 1) / 2;
  while (extra_edges > 0 && edges.size() < cap) {
    Vertex a = Vertex(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    Vertex b = Vertex(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    if (a == b) continue;
    if (edges.insert({std::min(a, b), std::max(a, b)}).second) --extra_edges;
  }
  std::vector<Edge> out;
  for (auto [a, b] : edges) out.push_back({a, b});
  return Graph(n, out);
}

} // namespace twiso::testing
