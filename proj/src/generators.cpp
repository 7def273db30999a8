#include "twiso/harness.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace twiso {

InstanceBundle generate_partial_ktree(std::size_t n, std::size_t k,
                                      double edge_keep_ratio, std::uint64_t seed) {
  if (k < 1 || n <= k || !(edge_keep_ratio >= 0.0 && edge_keep_ratio <= 1.0))
    throw Error(ErrorCode::InvalidParams, "need n > k >= 1 and ratio in [0,1]");
  std::mt19937_64 rng(seed);

  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<BagId, BagId>> tree;
  std::vector<Edge> edges;
  std::vector<Vertex> first(k + 1);
  std::iota(first.begin(), first.end(), 0);
  for (Vertex a = 0; a <= static_cast<Vertex>(k); ++a)
    for (Vertex b = a + 1; b <= static_cast<Vertex>(k); ++b) edges.push_back({a, b});
  bags.push_back(first);

  for (Vertex v = static_cast<Vertex>(k) + 1; v < static_cast<Vertex>(n); ++v) {
    BagId host = std::uniform_int_distribution<BagId>(0, bags.size() - 1)(rng);
    std::vector<Vertex> clique = bags[host];
    clique.erase(clique.begin() +
                 static_cast<std::ptrdiff_t>(std::uniform_int_distribution<std::size_t>(0, k)(rng)));
    for (Vertex u : clique) edges.push_back({u, v});
    clique.push_back(v);
    tree.emplace_back(host, bags.size());
    bags.push_back(std::move(clique));
  }

  std::bernoulli_distribution keep(edge_keep_ratio);
  std::vector<Edge> kept;
  for (Edge e : edges)
    if (keep(rng)) kept.push_back(e);

  Permutation shuffle(n);
  std::iota(shuffle.begin(), shuffle.end(), 0);
  std::shuffle(shuffle.begin(), shuffle.end(), rng);

  InstanceBundle out;
  out.seed = seed;
  out.graph = relabel(Graph(n, kept), shuffle);
  TreeDecomposition d;
  for (const auto &bag : bags) {
    std::vector<Vertex> moved;
    for (Vertex v : bag) moved.push_back(shuffle[v]);
    d.bags.push_back(VertexSet::from_unsorted(std::move(moved)));
  }
  d.tree_edges = std::move(tree);
  d.root = 0;
  out.decomposition = std::move(d);
  return out;
}

std::pair<Graph, Permutation> random_relabel(const Graph &g, std::uint64_t seed) {
  Permutation image(g.vertex_count());
  std::iota(image.begin(), image.end(), 0);
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::shuffle(image.begin(), image.end(), rng);
  }
  return {relabel(g, image), image};
}

} // namespace twiso
