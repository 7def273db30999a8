// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Expected answers come from the backtracking oracle and from the reference
// implementations in support/.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "twiso/harness.hpp"
#include "twiso/iso_order.hpp"
#include "twiso/tdd.hpp"
#include "twiso/treewidth_iso.hpp"

using namespace twiso;
using namespace twiso::testing;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
  void fail(const std::string &why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Every connected graph on <= 7 vertices, a relabeled copy of each, and the
// oracle answer for every (graph, copy) pair.
struct Family {
  std::vector<Graph> graphs;
  std::vector<Graph> copies;
  std::vector<char> tdw2, tw2;
  std::vector<std::vector<char>> iso; // iso[i][j]: graphs[i] ~ copies[j]

  Family() {
    graphs = connected_graphs_up_to(7);
    for (std::size_t j = 0; j < graphs.size(); ++j) {
      copies.push_back(random_relabel(graphs[j], 1000 + j).first);
      tdw2.push_back(tdw_exhaustive(graphs[j]) <= 2);
      tw2.push_back(treewidth_dp(graphs[j]) <= 2);
    }
    iso.assign(graphs.size(), std::vector<char>(graphs.size(), 0));
    for (std::size_t i = 0; i < graphs.size(); ++i)
      for (std::size_t j = 0; j < graphs.size(); ++j)
        iso[i][j] = brute_force_iso(graphs[i], copies[j]).has_value();
  }

  std::size_t count(const std::vector<char> &member) const {
    std::size_t c = 0;
    for (char m : member) c += m;
    return c;
  }
};

std::string pairs_text(std::size_t members, std::size_t checked) {
  return std::to_string(members) + " graphs, " + std::to_string(checked) + " ordered pairs";
}

Verdict ac1(const Family &f) {
  Verdict v;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < f.graphs.size(); ++i) {
    if (!f.tdw2[i]) continue;
    for (std::size_t j = 0; j < f.graphs.size(); ++j) {
      if (!f.tdw2[j]) continue;
      ++checked;
      if (iso_tdw(f.graphs[i], f.copies[j], 2) != bool(f.iso[i][j]))
        v.fail("disagreement on pair " + std::to_string(i) + "," + std::to_string(j));
    }
  }
  v.detail = v.pass ? pairs_text(f.count(f.tdw2), checked) : v.detail;
  return v;
}

Verdict ac2(const Family &f) {
  Verdict v;
  std::vector<std::optional<CanonicalForm>> cg(f.graphs.size()), ch(f.graphs.size());
  for (std::size_t i = 0; i < f.graphs.size(); ++i)
    if (f.tdw2[i]) {
      cg[i] = canon_tdw(f.graphs[i], 2);
      ch[i] = canon_tdw(f.copies[i], 2);
    }
  std::size_t checked = 0;
  for (std::size_t i = 0; i < f.graphs.size(); ++i)
    for (std::size_t j = 0; j < f.graphs.size(); ++j) {
      if (!cg[i] || !ch[j]) continue;
      ++checked;
      if ((*cg[i] == *ch[j]) != bool(f.iso[i][j]))
        v.fail("canon disagreement on pair " + std::to_string(i) + "," + std::to_string(j));
    }

  std::mt19937_64 rng(2024);
  std::size_t trials = 0;
  for (std::uint64_t t = 1; t <= 1000; ++t) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 20)(rng);
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
    Graph g = random_bounded_tdw(n, k, rng());
    auto [h, pi] = random_relabel(g, rng() | 1);
    ++trials;
    if (canon_tdw(g, k) != canon_tdw(h, k)) v.fail("canon changed under relabeling, trial " + std::to_string(t));
    Permutation composed = compose(canonical_map(g, k), inverse(canonical_map(h, k)));
    if (!is_isomorphism(g, h, composed))
      v.fail("canonical maps do not compose to an isomorphism, trial " + std::to_string(t));
  }
  if (v.pass) v.detail = pairs_text(f.count(f.tdw2), checked) + ", " + std::to_string(trials) + " random trials";
  return v;
}

Verdict ac3(const Family &f) {
  Verdict v;
  std::vector<std::optional<TreeDecomposition>> dec(f.graphs.size());
  for (std::size_t i = 0; i < f.graphs.size(); ++i)
    if (f.tw2[i]) dec[i] = compute_tree_decomposition(f.graphs[i], 2);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < f.graphs.size(); ++i) {
    if (!f.tw2[i]) continue;
    if (!dec[i]) {
      v.fail("no decomposition for graph " + std::to_string(i));
      continue;
    }
    for (std::size_t j = 0; j < f.graphs.size(); ++j) {
      if (!f.tw2[j]) continue;
      ++checked;
      const Graph &g = f.graphs[i], &h = f.copies[j];
      bool expected = f.iso[i][j];
      if (iso_tw(g, h, 2) != expected) v.fail("iso_tw disagrees on " + std::to_string(i) + "," + std::to_string(j));
      if (g.vertex_count() != h.vertex_count()) continue;
      auto map = iso_one_decomp(g, *dec[i], h, 2);
      if (map.has_value() != expected || (map && !is_isomorphism(g, h, *map)))
        v.fail("iso_one_decomp disagrees on " + std::to_string(i) + "," + std::to_string(j));
    }
  }
  if (v.pass) v.detail = pairs_text(f.count(f.tw2), checked);
  return v;
}

Verdict ac4() {
  Verdict v;
  const double ratios[] = {0.6, 0.8, 1.0};
  std::mt19937_64 rng(77);
  std::size_t small = 0, mapped = 0;
  for (std::size_t b = 0; b < 200; ++b) {
    std::size_t k = 1 + b % 3;
    double ratio = ratios[(b / 3) % 3];
    std::size_t n = std::uniform_int_distribution<std::size_t>(k + 5, 30)(rng);
    std::uint64_t seed = rng();
    InstanceBundle bundle = generate_partial_ktree(n, k, ratio, seed);
    const Graph &g = bundle.graph;
    const TreeDecomposition &d = *bundle.decomposition;
    auto [h, pi] = random_relabel(g, rng() | 1);
    auto map = iso_one_decomp(g, d, h, k);
    if (!map || !is_isomorphism(g, h, *map)) {
      v.fail("no verified isomorphism for bundle " + std::to_string(b));
      continue;
    }
    ++mapped;

    // Partner: another bundle with the same n and k, trimmed to the same edge
    // count. Deleting edges keeps its decomposition valid.
    std::optional<Graph> partner;
    for (std::uint64_t s = 1; !partner && s < 500; ++s) {
      InstanceBundle other = generate_partial_ktree(n, k, ratio, seed + s * 7919);
      if (other.graph.edge_count() < g.edge_count()) continue;
      auto edges = other.graph.edges();
      std::shuffle(edges.begin(), edges.end(), rng);
      edges.resize(g.edge_count());
      Graph cand(n, edges);
      if (n <= 12 && brute_force_iso(g, cand)) continue;
      partner = cand;
    }
    if (!partner) {
      v.fail("no partner found for bundle " + std::to_string(b));
      continue;
    }
    auto other_map = iso_one_decomp(g, d, *partner, k);
    if (other_map && !is_isomorphism(g, *partner, *other_map))
      v.fail("unverified map against partner of bundle " + std::to_string(b));
    if (n <= 12) {
      ++small;
      if (other_map.has_value() != brute_force_iso(g, *partner).has_value())
        v.fail("verdict differs from oracle for bundle " + std::to_string(b));
    }
  }
  if (v.pass)
    v.detail = std::to_string(mapped) + "/200 verified maps, " + std::to_string(small) +
               " partners checked against the oracle";
  return v;
}

Verdict ac5() {
  Verdict v;
  std::size_t runs = 0;
  for (const Graph &g : connected_graphs_up_to(7)) {
    for_each_subset(g.vertex_count(), 2, [&](const VertexSet &s) {
      ++runs;
      auto d = build_minimal_tdd(g, s);
      auto problems = validate_tdd(g, d);
      if (!problems.empty()) v.fail(problems.front().detail);
      auto dist = bfs_levels(g, s);
      for (BagId i = 0; i < d.bag_count(); ++i)
        for (Vertex x : d.bags[i])
          if (dist[x] != d.depth[i]) v.fail("bag depth differs from distance");
      return true;
    });
  }
  if (v.pass) v.detail = std::to_string(runs) + " (graph, root set) decompositions";
  return v;
}

Verdict ac6(const Family &f) {
  Verdict v;
  std::vector<AugmentedTree> pool;
  auto add = [&](const Graph &g) {
    auto roots = admissible_roots(g, 2);
    if (!roots.empty()) pool.emplace_back(g, build_minimal_tdd(g, roots.front()));
  };
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < f.graphs.size(); ++i)
    if (f.tdw2[i]) members.push_back(i);
  // 40 spread-out graphs, then relabeled copies of 20 of them.
  for (std::size_t t = 0; t < 40; ++t) add(f.graphs[members[t * members.size() / 40]]);
  for (std::size_t t = 0; t < 20; ++t) add(f.copies[members[t * members.size() / 20]]);
  if (pool.size() < 50) v.fail("pool too small");

  const std::size_t n = pool.size();
  std::vector<std::vector<Order>> m(n, std::vector<Order>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto &a = pool[i], &b = pool[j];
      m[i][j] = compare_augmented({&a, a.root()}, {&b, b.root()},
                                  ThetaSet::full(a.node(a.root()).vertices, b.node(b.root()).vertices));
    }
  auto flip = [](Order o) {
    return o == Order::Less ? Order::Greater : o == Order::Greater ? Order::Less : Order::Equal;
  };
  auto le = [&](std::size_t i, std::size_t j) { return m[i][j] != Order::Greater; };
  std::size_t equal_pairs = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && m[i][j] == Order::Equal) ++equal_pairs;
      if (m[j][i] != flip(m[i][j])) v.fail("antisymmetry broken");
      for (std::size_t k = 0; k < n; ++k)
        if (le(i, j) && le(j, k) && !le(i, k)) v.fail("transitivity broken");
    }
  if (v.pass)
    v.detail = std::to_string(n) + " trees, " + std::to_string(n * n) + " pairs, " +
               std::to_string(n * n * n) + " triples, " + std::to_string(equal_pairs) + " equal pairs";
  return v;
}

Verdict ac7() {
  Verdict v;
  Graph p(3, {{0, 1}, {1, 2}});
  TreeDecomposition fine;
  fine.bags = {{0, 1}, {1, 2}};
  fine.tree_edges = {{0, 1}};
  fine.root = 0;
  TreeDecomposition coarse;
  coarse.bags = {{0, 1, 2}};
  coarse.root = 0;
  bool respecting = iso_respecting_both(p, fine, p, coarse);
  bool oracle = brute_force_iso(p, p).has_value();
  if (respecting) v.fail("respecting isomorphism reported");
  if (!oracle) v.fail("oracle rejected P3 against itself");
  v.detail = "P3 with bags {0,1},{1,2} vs one bag {0,1,2}: respecting=" +
             std::string(respecting ? "true" : "false") + ", oracle=" + (oracle ? "true" : "false");
  return v;
}

void report(const char *id, const char *name, const std::function<Verdict()> &run, bool &all) {
  auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = run();
  } catch (const std::exception &e) {
    v.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] %s %s: %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), secs);
  std::fflush(stdout);
  all = all && v.pass;
}

} // namespace

int main() {
  bool all = true;
  auto start = std::chrono::steady_clock::now();
  Family family;
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("family: %zu connected graphs on <= 7 vertices, oracle matrix in %.1fs\n",
              family.graphs.size(), secs);
  report("AC1", "tree distance width isomorphism vs oracle", [&] { return ac1(family); }, all);
  report("AC2", "canonical form completeness", [&] { return ac2(family); }, all);
  report("AC3", "treewidth isomorphism vs oracle", [&] { return ac3(family); }, all);
  report("AC4", "random partial k-trees", ac4, all);
  report("AC5", "minimal decompositions validate", ac5, all);
  report("AC6", "order laws", [&] { return ac6(family); }, all);
  report("AC7", "bag-respecting isomorphism is stricter", ac7, all);
  return all ? 0 : 1;
}
