#include "twiso/tree_decomposition.hpp"

#include <algorithm>
#include <unordered_set>

namespace twiso {

std::size_t TreeDecomposition::width() const {
  std::size_t largest = 0;
  for (const auto &bag : bags) largest = std::max(largest, bag.size());
  return largest == 0 ? 0 : largest - 1;
}

namespace {

// Adjacency over bag ids, or nullopt if the edges do not form a tree.
std::optional<std::vector<std::vector<BagId>>> tree_adjacency(const TreeDecomposition &d) {
  const std::size_t count = d.bags.size();
  if (count == 0 || d.tree_edges.size() != count - 1) return std::nullopt;
  std::vector<std::vector<BagId>> adj(count);
  for (auto [a, b] : d.tree_edges) {
    if (a >= count || b >= count || a == b) return std::nullopt;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<char> seen(count, 0);
  std::vector<BagId> todo{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!todo.empty()) {
    BagId x = todo.back();
    todo.pop_back();
    for (BagId y : adj[x])
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        todo.push_back(y);
      }
  }
  if (reached != count) return std::nullopt;
  for (auto &row : adj) std::sort(row.begin(), row.end());
  return adj;
}

} // namespace

TdReport validate_tree_decomposition(const Graph &g, const TreeDecomposition &d) {
  TdReport report;
  report.width = d.width();
  auto adj = tree_adjacency(d);
  if (!adj) {
    report.violations.push_back({TdClause::Structure, "tree edges do not form a tree", {}, {}});
    return report;
  }
  if (d.root && *d.root >= d.bags.size())
    report.violations.push_back({TdClause::Structure, "root out of range", {}, {}});
  for (const auto &bag : d.bags)
    for (Vertex v : bag)
      if (!g.has_vertex(v)) {
        report.violations.push_back(
            {TdClause::Structure, "bag holds a vertex outside the graph", v, {}});
        return report;
      }

  std::vector<std::vector<BagId>> holders(g.vertex_count());
  for (BagId i = 0; i < d.bags.size(); ++i)
    for (Vertex v : d.bags[i]) holders[v].push_back(i);

  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
    if (holders[v].empty())
      report.violations.push_back({TdClause::VertexCoverage, "vertex in no bag", v, {}});

  for (Edge e : g.edges()) {
    bool covered = std::any_of(holders[e.u].begin(), holders[e.u].end(),
                               [&](BagId b) { return d.bags[b].contains(e.v); });
    if (!covered)
      report.violations.push_back({TdClause::EdgeCoverage, "edge in no bag", {}, e});
  }

  // The bags holding v must be connected inside the tree.
  for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
    const auto &hold = holders[v];
    if (hold.size() <= 1) continue;
    std::vector<char> in(d.bags.size(), 0), seen(d.bags.size(), 0);
    for (BagId b : hold) in[b] = 1;
    std::vector<BagId> todo{hold.front()};
    seen[hold.front()] = 1;
    std::size_t reached = 1;
    while (!todo.empty()) {
      BagId x = todo.back();
      todo.pop_back();
      for (BagId y : (*adj)[x])
        if (in[y] && !seen[y]) {
          seen[y] = 1;
          ++reached;
          todo.push_back(y);
        }
    }
    if (reached != hold.size())
      report.violations.push_back(
          {TdClause::Connectivity, "bags holding the vertex are not connected", v, {}});
  }
  return report;
}

RootedTree root_tree(const TreeDecomposition &d, BagId root) {
  auto adj = tree_adjacency(d);
  if (!adj || root >= d.bags.size())
    throw Error(ErrorCode::InvalidDecomposition, "decomposition is not a rooted tree");
  RootedTree t;
  t.root = root;
  t.parent.assign(d.bags.size(), root);
  t.children.assign(d.bags.size(), {});
  std::vector<char> seen(d.bags.size(), 0);
  std::vector<BagId> todo{root};
  seen[root] = 1;
  while (!todo.empty()) {
    BagId x = todo.back();
    todo.pop_back();
    t.preorder.push_back(x);
    for (auto it = (*adj)[x].rbegin(); it != (*adj)[x].rend(); ++it) {
      BagId y = *it;
      if (seen[y]) continue;
      seen[y] = 1;
      t.parent[y] = x;
      todo.push_back(y);
    }
  }
  for (BagId x : t.preorder)
    if (x != root) t.children[t.parent[x]].push_back(x);
  for (auto &c : t.children) std::sort(c.begin(), c.end());
  return t;
}

std::vector<VertexSet> subtree_vertices(const TreeDecomposition &d,
                                        const RootedTree &t) {
  std::vector<VertexSet> out(d.bags.size());
  for (auto it = t.preorder.rbegin(); it != t.preorder.rend(); ++it) {
    VertexSet acc = d.bags[*it];
    for (BagId c : t.children[*it]) acc = set_union(acc, out[c]);
    out[*it] = std::move(acc);
  }
  return out;
}

std::vector<BagId> lex_subtree_order(const Graph &g, const TreeDecomposition &d,
                                     BagId r, const std::vector<BagId> &children) {
  (void)g;
  RootedTree t = root_tree(d, d.root.value_or(r));
  for (BagId c : children)
    if (c >= d.bags.size() || c == t.root || t.parent[c] != r)
      throw Error(ErrorCode::InvalidParams, "bag is not a child of r");
  auto below = subtree_vertices(d, t);
  struct Keyed {
    BagId id;
    std::optional<Vertex> least_fresh;
  };
  std::vector<Keyed> keyed;
  for (BagId c : children) {
    VertexSet fresh = set_difference(below[c], d.bags[r]);
    keyed.push_back({c, fresh.empty() ? std::nullopt : std::optional<Vertex>(fresh.front())});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [&](const Keyed &a, const Keyed &b) {
    if (a.least_fresh.has_value() != b.least_fresh.has_value()) return !a.least_fresh.has_value();
    if (a.least_fresh) return *a.least_fresh < *b.least_fresh;
    return d.bags[a.id] < d.bags[b.id];
  });
  std::vector<BagId> out;
  for (const auto &k : keyed) out.push_back(k.id);
  return out;
}

bool is_valid_child_bag(const Graph &h, const VertexSet &parent_bag,
                        const VertexSet &child_bag,
                        const VertexSet &claimed_component) {
  if (!child_bag.is_subset_of(claimed_component)) return false;
  VertexSet root_side = set_difference(parent_bag, child_bag);
  std::vector<Vertex> cut_off;
  if (!root_side.empty())
    for (const VertexSet &part : connected_components(h, child_bag))
      if (!part.intersects(root_side))
        cut_off.insert(cut_off.end(), part.begin(), part.end());
  VertexSet expected = set_union(child_bag, VertexSet::from_unsorted(cut_off));
  if (expected != claimed_component) return false;
  for (Vertex u : set_difference(claimed_component, child_bag))
    for (Vertex w : h.neighbors(u))
      if (!claimed_component.contains(w) && !parent_bag.contains(w)) return false;
  return true;
}

namespace {

// Exact treewidth decision by elimination orders. The graph after
// eliminating a set of vertices depends only on that set, so failed sets are
// remembered.
class EliminationSearch {
public:
  EliminationSearch(const Graph &g, std::size_t k)
      : n_(g.vertex_count()), k_(k), adj_(n_, std::vector<char>(n_, 0)),
        alive_(n_, true) {
    for (Edge e : g.edges()) adj_[e.u][e.v] = adj_[e.v][e.u] = 1;
  }

  struct Step {
    Vertex v;
    VertexSet higher; // neighbours at elimination time
  };

  bool run() { return search(); }
  const std::vector<Step> &steps() const { return steps_; }
  VertexSet remaining() const {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < n_; ++v)
      if (alive_[v]) out.push_back(static_cast<Vertex>(v));
    return VertexSet::from_unsorted(out);
  }

private:
  std::vector<Vertex> neighbours(Vertex v) const {
    std::vector<Vertex> out;
    for (std::size_t w = 0; w < n_; ++w)
      if (alive_[w] && adj_[v][w]) out.push_back(static_cast<Vertex>(w));
    return out;
  }

  bool is_clique_without(const std::vector<Vertex> &nb, Vertex skip) const {
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (nb[i] != skip && nb[j] != skip && !adj_[nb[i]][nb[j]]) return false;
    return true;
  }

  // Simplicial, or simplicial after dropping one neighbour.
  bool safe_to_eliminate(const std::vector<Vertex> &nb) const {
    if (nb.size() > k_) return false;
    if (is_clique_without(nb, kNoVertex)) return true;
    return std::any_of(nb.begin(), nb.end(),
                       [&](Vertex w) { return is_clique_without(nb, w); });
  }

  void eliminate(Vertex v) {
    auto nb = neighbours(v);
    for (Vertex a : nb)
      for (Vertex b : nb)
        if (a != b) adj_[a][b] = 1;
    alive_[v] = false;
    --alive_count_;
    steps_.push_back({v, VertexSet::from_unsorted(nb)});
  }

  struct Snapshot {
    std::vector<std::vector<char>> adj;
    std::vector<bool> alive;
    std::size_t alive_count;
    std::size_t steps;
  };
  Snapshot snapshot() const { return {adj_, alive_, alive_count_, steps_.size()}; }
  void restore(Snapshot s) {
    adj_ = std::move(s.adj);
    alive_ = std::move(s.alive);
    alive_count_ = s.alive_count;
    steps_.resize(s.steps);
  }

  bool search() {
    for (bool reduced = true; reduced;) {
      reduced = false;
      for (std::size_t v = 0; v < n_ && alive_count_ > k_ + 1; ++v) {
        if (!alive_[v]) continue;
        if (safe_to_eliminate(neighbours(static_cast<Vertex>(v)))) {
          eliminate(static_cast<Vertex>(v));
          reduced = true;
        }
      }
    }
    if (alive_count_ <= k_ + 1) return true;
    if (failed_.count(alive_)) return false;
    for (std::size_t v = 0; v < n_; ++v) {
      if (!alive_[v] || neighbours(static_cast<Vertex>(v)).size() > k_) continue;
      Snapshot before = snapshot();
      eliminate(static_cast<Vertex>(v));
      if (search()) return true;
      restore(std::move(before));
    }
    failed_.insert(alive_);
    return false;
  }

  std::size_t n_, k_;
  std::vector<std::vector<char>> adj_;
  std::vector<bool> alive_;
  std::size_t alive_count_ = n_;
  std::vector<Step> steps_;
  std::unordered_set<std::vector<bool>> failed_;
};

} // namespace

std::optional<TreeDecomposition> compute_tree_decomposition(const Graph &g,
                                                            std::size_t k) {
  EliminationSearch search(g, k);
  if (!search.run()) return std::nullopt;

  // Bag i = eliminated vertex + its neighbours at that time; its parent is the
  // bag of the first of those neighbours to be eliminated later, or the final
  // bag of survivors.
  const auto &steps = search.steps();
  TreeDecomposition d;
  std::vector<std::size_t> step_of(g.vertex_count(), steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) step_of[steps[i].v] = i;
  for (const auto &s : steps) {
    std::vector<Vertex> bag = s.higher.members();
    bag.push_back(s.v);
    d.bags.push_back(VertexSet::from_unsorted(std::move(bag)));
  }
  const BagId final_bag = d.bags.size();
  d.bags.push_back(search.remaining());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::size_t parent = final_bag;
    for (Vertex w : steps[i].higher) parent = std::min(parent, step_of[w]);
    d.tree_edges.emplace_back(std::min<BagId>(i, parent), std::max<BagId>(i, parent));
  }
  d.root = final_bag;
  return d;
}

} // namespace twiso
