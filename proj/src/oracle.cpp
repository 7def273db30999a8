#include "twiso/harness.hpp"

#include <algorithm>

namespace twiso {

std::optional<Permutation> brute_force_iso(const Graph &g, const Graph &h) {
  const std::size_t n = g.vertex_count();
  if (n != h.vertex_count() || g.edge_count() != h.edge_count()) return std::nullopt;
  auto degrees = [](const Graph &x) {
    std::vector<std::size_t> out;
    for (Vertex v : x.vertices()) out.push_back(x.degree(v));
    std::sort(out.begin(), out.end());
    return out;
  };
  if (degrees(g) != degrees(h)) return std::nullopt;

  // Visit g so that each vertex has as many already-placed neighbours as
  // possible; adjacency checks then prune early.
  std::vector<Vertex> order;
  std::vector<char> placed(n, 0);
  std::vector<std::size_t> links(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    Vertex best = kNoVertex;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
      if (placed[v]) continue;
      if (best == kNoVertex || links[v] > links[best] ||
          (links[v] == links[best] && g.degree(v) > g.degree(best)))
        best = v;
    }
    placed[best] = 1;
    order.push_back(best);
    for (Vertex w : g.neighbors(best)) ++links[w];
  }

  Permutation image(n, kNoVertex);
  std::vector<char> used(n, 0);
  auto place = [&](auto &&self, std::size_t i) -> bool {
    if (i == n) return true;
    Vertex v = order[i];
    for (Vertex w = 0; w < static_cast<Vertex>(n); ++w) {
      if (used[w] || h.degree(w) != g.degree(v)) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = g.has_edge(v, order[j]) == h.has_edge(w, image[order[j]]);
      if (!ok) continue;
      image[v] = w;
      used[w] = 1;
      if (self(self, i + 1)) return true;
      used[w] = 0;
    }
    image[v] = kNoVertex;
    return false;
  };
  if (!place(place, 0) || !is_isomorphism(g, h, image)) return std::nullopt;
  return image;
}

} // namespace twiso
