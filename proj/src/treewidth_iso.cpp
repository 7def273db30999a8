#include "twiso/treewidth_iso.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace twiso {

namespace {

using Pairs = std::vector<std::pair<Vertex, Vertex>>; // sorted by first

Vertex image_in(const Pairs &phi, Vertex v) {
  auto it = std::lower_bound(phi.begin(), phi.end(), std::pair<Vertex, Vertex>{v, kNoVertex});
  if (it == phi.end() || it->first != v) throw std::logic_error("vertex missing from bag map");
  return it->second;
}

Pairs restrict_to(const Pairs &phi, const VertexSet &keep) {
  Pairs out;
  for (Vertex v : keep) out.emplace_back(v, image_in(phi, v));
  return out;
}

VertexSet image_set(const Pairs &phi) {
  std::vector<Vertex> out;
  for (auto [x, y] : phi) out.push_back(y);
  return VertexSet::from_unsorted(std::move(out));
}

struct RootedSide {
  const Graph *g;
  const TreeDecomposition *d;
  RootedTree t;
  std::vector<VertexSet> below;
  std::vector<VertexSet> glue; // bag intersected with its parent bag

  RootedSide(const Graph &graph, const TreeDecomposition &dec, BagId root)
      : g(&graph), d(&dec), t(root_tree(dec, root)), below(subtree_vertices(dec, t)) {
    glue.resize(dec.bags.size());
    for (BagId b = 0; b < dec.bags.size(); ++b)
      if (b != t.root) glue[b] = set_intersection(dec.bags[b], dec.bags[t.parent[b]]);
  }
};

// Decides whether the subtree below a maps onto the subtree below b bag by
// bag, extending psi on the glue. For fixed bag maps the child relation is a
// disjoint union of complete bipartite blocks, so greedy child matching is
// exact.
class RespectMatcher {
public:
  RespectMatcher(const RootedSide &l, const RootedSide &r) : l_(l), r_(r) {}

  bool match(BagId a, BagId b, const Pairs &psi) {
    Key key{a, b, psi};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second.ok;
    Entry entry = solve(a, b, psi);
    bool ok = entry.ok;
    memo_.emplace(std::move(key), std::move(entry));
    return ok;
  }

  void extract(BagId a, BagId b, const Pairs &psi, Permutation &out) const {
    const Entry &e = memo_.at(Key{a, b, psi});
    for (auto [x, y] : e.phi) out[x] = y;
    for (auto [c, c2] : e.kids) extract(c, c2, restrict_to(e.phi, l_.glue[c]), out);
  }

private:
  using Key = std::tuple<BagId, BagId, Pairs>;
  struct Entry {
    bool ok = false;
    Pairs phi;
    std::vector<std::pair<BagId, BagId>> kids;
  };

  Entry solve(BagId a, BagId b, const Pairs &psi) {
    const VertexSet &xa = l_.d->bags[a];
    const VertexSet &xb = r_.d->bags[b];
    const auto &ka = l_.t.children[a];
    const auto &kb = r_.t.children[b];
    if (xa.size() != xb.size() || ka.size() != kb.size() ||
        l_.below[a].size() != r_.below[b].size() || image_set(psi) != r_.glue[b])
      return {};
    const std::vector<Vertex> &from = xa.members();
    std::vector<Vertex> to(from.size(), kNoVertex);
    std::vector<char> taken(xb.size(), 0);
    Entry result;

    auto fits = [&](std::size_t i, Vertex y) {
      for (std::size_t j = 0; j < i; ++j)
        if (l_.g->has_edge(from[i], from[j]) != r_.g->has_edge(y, to[j])) return false;
      return true;
    };
    auto try_children = [&]() {
      Pairs phi;
      for (std::size_t i = 0; i < from.size(); ++i) phi.emplace_back(from[i], to[i]);
      std::vector<char> used(kb.size(), 0);
      std::vector<std::pair<BagId, BagId>> kids;
      for (BagId c : ka) {
        Pairs psi_c = restrict_to(phi, l_.glue[c]);
        bool found = false;
        for (std::size_t j = 0; j < kb.size() && !found; ++j)
          if (!used[j] && match(c, kb[j], psi_c)) {
            used[j] = 1;
            kids.emplace_back(c, kb[j]);
            found = true;
          }
        if (!found) return false;
      }
      result = {true, std::move(phi), std::move(kids)};
      return true;
    };
    auto extend = [&](auto &&self, std::size_t i) -> bool {
      if (i == from.size()) return try_children();
      auto fixed = std::lower_bound(psi.begin(), psi.end(),
                                    std::pair<Vertex, Vertex>{from[i], kNoVertex});
      if (fixed != psi.end() && fixed->first == from[i]) {
        to[i] = fixed->second;
        std::size_t slot = static_cast<std::size_t>(
            std::lower_bound(xb.begin(), xb.end(), to[i]) - xb.begin());
        if (taken[slot] || !fits(i, to[i])) return false;
        taken[slot] = 1;
        bool ok = self(self, i + 1);
        taken[slot] = 0;
        return ok;
      }
      for (std::size_t slot = 0; slot < xb.size(); ++slot) {
        Vertex y = xb.members()[slot];
        if (taken[slot] || r_.glue[b].contains(y) || !fits(i, y)) continue;
        to[i] = y;
        taken[slot] = 1;
        bool ok = self(self, i + 1);
        taken[slot] = 0;
        if (ok) return true;
      }
      return false;
    };
    extend(extend, 0);
    return result;
  }

  const RootedSide &l_;
  const RootedSide &r_;
  std::map<Key, Entry> memo_;
};

void require_valid(const Graph &g, const TreeDecomposition &d) {
  TdReport report = validate_tree_decomposition(g, d);
  if (!report.valid())
    throw Error(ErrorCode::InvalidDecomposition, report.violations.front().detail);
}

std::vector<int> histogram(std::vector<int> colours) {
  std::sort(colours.begin(), colours.end());
  return colours;
}

// Backtracking search for an isomorphism G -> H guided by a decomposition of
// G. Solve(a, R, psi) asks for a map of V_a onto the H-region R extending psi
// on the glue of a; the bag X_a is guessed inside R and the rest of R is split
// into components that are handed to the children.
class OneDecompSearch {
public:
  OneDecompSearch(const Graph &g, const TreeDecomposition &d, const Graph &h,
                  std::vector<int> gcol, std::vector<int> hcol)
      : g_(g), h_(h), side_(g, d, d.root.value_or(0)), gcol_(std::move(gcol)),
        hcol_(std::move(hcol)), sol_(g.vertex_count(), kNoVertex),
        live_count_(g.vertex_count(), 0), live_(g.vertex_count(), kNoVertex) {
    prepare();
  }

  std::optional<Permutation> run() {
    if (!solve(side_.t.root, h_.vertices(), {})) return std::nullopt;
    if (!is_isomorphism(g_, h_, sol_))
      throw std::logic_error("search produced a map that is not an isomorphism");
    return sol_;
  }

  SearchStats stats;

private:
  struct Comp {
    std::size_t size;
    VertexSet attach;
    std::vector<int> colours;
  };
  struct HComp {
    VertexSet verts;
    VertexSet attach;
    std::vector<int> colours;
  };
  struct Node {
    std::vector<BagId> order;               // children in processing order
    std::vector<std::size_t> cls;           // sibling class per position
    std::vector<std::vector<Comp>> comps;   // components of V_a \ X_a per position
    std::size_t class_count = 0;
  };

  void prepare() {
    const auto &d = *side_.d;
    nodes_.resize(d.bags.size());
    RespectMatcher self_match(side_, side_);
    for (BagId a : side_.t.preorder) {
      Node &node = nodes_[a];
      node.order = lex_subtree_order(g_, d, a, side_.t.children[a]);
      node.comps.resize(node.order.size());
      VertexSet outside_below = set_difference(g_.vertices(), set_difference(side_.below[a], d.bags[a]));
      for (const VertexSet &part : connected_components(g_, set_union(outside_below, d.bags[a]))) {
        std::size_t pos = 0;
        while (!side_.below[node.order[pos]].contains(part.front())) ++pos;
        Comp comp{part.size(), set_intersection(neighbors_of_set(g_, part), d.bags[a]), {}};
        for (Vertex v : part) comp.colours.push_back(gcol_[v]);
        std::sort(comp.colours.begin(), comp.colours.end());
        node.comps[pos].push_back(std::move(comp));
      }
      // Siblings with the same glue whose subtrees match with the glue fixed.
      node.cls.assign(node.order.size(), 0);
      std::vector<std::size_t> reps;
      for (std::size_t i = 0; i < node.order.size(); ++i) {
        BagId c = node.order[i];
        Pairs fixed;
        for (Vertex v : side_.glue[c]) fixed.emplace_back(v, v);
        std::size_t found = reps.size();
        for (std::size_t r = 0; r < reps.size() && found == reps.size(); ++r) {
          BagId rep = node.order[reps[r]];
          if (side_.glue[rep] == side_.glue[c] && self_match.match(c, rep, fixed)) found = r;
        }
        if (found == reps.size()) reps.push_back(i);
        node.cls[i] = found;
      }
      node.class_count = reps.size();
    }
  }

  void push_frame(BagId a, const Pairs &phi) {
    for (auto [x, y] : phi) {
      if (live_count_[x]++ == 0) {
        live_[x] = y;
        ++live_domain_;
      } else if (live_[x] != y) {
        throw std::logic_error("glue vertex mapped inconsistently");
      }
    }
    frames_.push_back(a);
    ++stats.frames_pushed;
    stats.max_stack_depth = std::max(stats.max_stack_depth, frames_.size());
  }

  void pop_frame(const Pairs &phi) {
    for (auto [x, y] : phi)
      if (--live_count_[x] == 0) {
        live_[x] = kNoVertex;
        --live_domain_;
      }
    frames_.pop_back();
    ++stats.frames_popped;
    // The live map must cover exactly the bags still on the stack.
    VertexSet covered;
    for (BagId f : frames_) covered = set_union(covered, side_.d->bags[f]);
    bool consistent = covered.size() == live_domain_ &&
                      std::all_of(covered.begin(), covered.end(),
                                  [&](Vertex v) { return live_[v] != kNoVertex; });
    ++stats.stack_checks;
    if (!consistent) throw std::logic_error("live map differs from the bags on the stack");
  }

  using Key = std::tuple<BagId, std::vector<Vertex>, Pairs>;

  bool solve(BagId a, const VertexSet &region, const Pairs &psi) {
    if (region.size() != side_.below[a].size()) return false;
    Key key{a, region.members(), psi};
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++stats.memo_hits;
      if (!it->second) return false;
      for (auto [x, y] : *it->second) sol_[x] = y;
      return true;
    }
    ++stats.subproblems;

    const std::vector<Vertex> &from = side_.d->bags[a].members();
    VertexSet pool = set_difference(region, image_set(psi));
    std::vector<Vertex> to(from.size(), kNoVertex);
    std::vector<char> taken(pool.size(), 0);

    auto fits = [&](std::size_t i, Vertex y) {
      if (gcol_[from[i]] != hcol_[y]) return false;
      for (std::size_t j = 0; j < i; ++j)
        if (g_.has_edge(from[i], from[j]) != h_.has_edge(y, to[j])) return false;
      return true;
    };
    auto extend = [&](auto &&self, std::size_t i) -> bool {
      if (i == from.size()) {
        Pairs phi;
        for (std::size_t t = 0; t < from.size(); ++t) phi.emplace_back(from[t], to[t]);
        return try_bag_map(a, region, phi);
      }
      auto fixed = std::lower_bound(psi.begin(), psi.end(),
                                    std::pair<Vertex, Vertex>{from[i], kNoVertex});
      if (fixed != psi.end() && fixed->first == from[i]) {
        to[i] = fixed->second;
        return fits(i, to[i]) && self(self, i + 1);
      }
      for (std::size_t slot = 0; slot < pool.size(); ++slot) {
        Vertex y = pool.members()[slot];
        if (taken[slot] || !fits(i, y)) continue;
        to[i] = y;
        taken[slot] = 1;
        bool ok = self(self, i + 1);
        taken[slot] = 0;
        if (ok) return true;
      }
      return false;
    };

    bool ok = extend(extend, 0);
    std::optional<Pairs> stored;
    if (ok) {
      stored.emplace();
      for (Vertex v : set_difference(side_.below[a], side_.glue[a]))
        stored->emplace_back(v, sol_[v]);
    }
    memo_.emplace(std::move(key), std::move(stored));
    return ok;
  }

  bool try_bag_map(BagId a, const VertexSet &region, const Pairs &phi) {
    const Node &node = nodes_[a];
    VertexSet bag_image = image_set(phi);

    std::vector<HComp> hcomps;
    VertexSet outside = set_union(set_difference(h_.vertices(), region), bag_image);
    for (const VertexSet &part : connected_components(h_, outside)) {
      HComp hc{part, set_intersection(neighbors_of_set(h_, part), bag_image), {}};
      for (Vertex v : part) hc.colours.push_back(hcol_[v]);
      std::sort(hc.colours.begin(), hc.colours.end());
      hcomps.push_back(std::move(hc));
    }

    // Components must pair up by size, attachment image and colours.
    using Sig = std::tuple<std::size_t, VertexSet, std::vector<int>>;
    std::vector<Sig> gsig, hsig;
    std::vector<std::vector<Sig>> child_sigs(node.order.size());
    for (std::size_t pos = 0; pos < node.order.size(); ++pos)
      for (const Comp &c : node.comps[pos]) {
        std::vector<Vertex> img;
        for (Vertex v : c.attach) img.push_back(image_in(phi, v));
        child_sigs[pos].emplace_back(c.size, VertexSet::from_unsorted(img), c.colours);
        gsig.push_back(child_sigs[pos].back());
      }
    for (const HComp &hc : hcomps) hsig.emplace_back(hc.verts.size(), hc.attach, hc.colours);
    std::sort(gsig.begin(), gsig.end());
    auto hsorted = hsig;
    std::sort(hsorted.begin(), hsorted.end());
    if (gsig != hsorted) return false;

    push_frame(a, phi);
    std::vector<char> used(hcomps.size(), 0);
    std::vector<std::optional<Vertex>> last_min(node.class_count);
    bool ok = assign(a, phi, hcomps, hsig, child_sigs, 0, used, last_min);
    pop_frame(phi);
    if (ok)
      for (auto [x, y] : phi) sol_[x] = y;
    return ok;
  }

  template <class Sig>
  bool assign(BagId a, const Pairs &phi, const std::vector<HComp> &hcomps,
              const std::vector<Sig> &hsig, const std::vector<std::vector<Sig>> &child_sigs,
              std::size_t pos, std::vector<char> &used,
              std::vector<std::optional<Vertex>> &last_min) {
    const Node &node = nodes_[a];
    if (pos == node.order.size()) return true;
    BagId c = node.order[pos];
    const auto &want = child_sigs[pos];
    std::size_t cls = node.cls[pos];

    std::set<std::vector<std::size_t>> tried;
    std::vector<std::size_t> pick;
    auto choose = [&](auto &&self, std::size_t i) -> bool {
      if (i == want.size()) {
        std::vector<std::size_t> key = pick;
        std::sort(key.begin(), key.end());
        if (!tried.insert(key).second) return false;
        std::vector<Vertex> verts;
        for (std::size_t j : key) verts.insert(verts.end(), hcomps[j].verts.begin(), hcomps[j].verts.end());
        VertexSet u = VertexSet::from_unsorted(std::move(verts));
        std::optional<Vertex> least = u.empty() ? std::nullopt : std::optional<Vertex>(u.front());
        // Isomorphic siblings are interchangeable: take their regions in
        // increasing order of least vertex.
        if (least && last_min[cls] && *least <= *last_min[cls]) return false;
        Pairs psi_c = restrict_to(phi, side_.glue[c]);
        VertexSet region_c = set_union(image_set(psi_c), u);
        auto saved = last_min[cls];
        if (least) last_min[cls] = least;
        bool ok = solve(c, region_c, psi_c) &&
                  assign(a, phi, hcomps, hsig, child_sigs, pos + 1, used, last_min);
        last_min[cls] = saved;
        return ok;
      }
      for (std::size_t j = 0; j < hcomps.size(); ++j) {
        if (used[j] || hsig[j] != want[i]) continue;
        used[j] = 1;
        pick.push_back(j);
        bool ok = self(self, i + 1);
        pick.pop_back();
        used[j] = 0;
        if (ok) return true;
      }
      return false;
    };
    return choose(choose, 0);
  }

  const Graph &g_;
  const Graph &h_;
  RootedSide side_;
  std::vector<int> gcol_, hcol_;
  std::vector<Node> nodes_;
  Permutation sol_;
  std::vector<int> live_count_;
  std::vector<Vertex> live_;
  std::size_t live_domain_ = 0;
  std::vector<BagId> frames_;
  std::map<Key, std::optional<Pairs>> memo_;
};

} // namespace

std::pair<std::vector<int>, std::vector<int>> joint_colour_refinement(const Graph &g,
                                                                      const Graph &h) {
  const std::size_t ng = g.vertex_count();
  const std::size_t total = ng + h.vertex_count();
  auto nbrs = [&](std::size_t v) {
    std::vector<std::size_t> out;
    if (v < ng)
      for (Vertex w : g.neighbors(static_cast<Vertex>(v))) out.push_back(static_cast<std::size_t>(w));
    else
      for (Vertex w : h.neighbors(static_cast<Vertex>(v - ng))) out.push_back(ng + static_cast<std::size_t>(w));
    return out;
  };
  std::vector<int> colour(total, 0);
  std::size_t classes = total == 0 ? 0 : 1;
  for (;;) {
    std::vector<std::pair<int, std::vector<int>>> sig(total);
    for (std::size_t v = 0; v < total; ++v) {
      sig[v].first = colour[v];
      for (std::size_t w : nbrs(v)) sig[v].second.push_back(colour[w]);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    std::map<std::pair<int, std::vector<int>>, int> ids;
    for (const auto &s : sig) ids.emplace(s, 0);
    int next = 0;
    for (auto &[s, id] : ids) id = next++;
    for (std::size_t v = 0; v < total; ++v) colour[v] = ids.at(sig[v]);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  return {std::vector<int>(colour.begin(), colour.begin() + static_cast<std::ptrdiff_t>(ng)),
          std::vector<int>(colour.begin() + static_cast<std::ptrdiff_t>(ng), colour.end())};
}

std::optional<Permutation> respecting_isomorphism(const Graph &g,
                                                  const TreeDecomposition &dG,
                                                  const Graph &h,
                                                  const TreeDecomposition &dH) {
  require_valid(g, dG);
  require_valid(h, dH);
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() ||
      dG.bags.size() != dH.bags.size())
    return std::nullopt;
  RootedSide left(g, dG, dG.root.value_or(0));
  for (BagId b = 0; b < dH.bags.size(); ++b) {
    RootedSide right(h, dH, b);
    RespectMatcher matcher(left, right);
    if (!matcher.match(left.t.root, b, {})) continue;
    Permutation out(g.vertex_count(), kNoVertex);
    matcher.extract(left.t.root, b, {}, out);
    if (!is_isomorphism(g, h, out))
      throw std::logic_error("bag-respecting map is not an isomorphism");
    return out;
  }
  return std::nullopt;
}

bool iso_respecting_both(const Graph &g, const TreeDecomposition &dG, const Graph &h,
                         const TreeDecomposition &dH) {
  return respecting_isomorphism(g, dG, h, dH).has_value();
}

OneDecompResult iso_one_decomp_detailed(const Graph &g, const TreeDecomposition &dG,
                                        const Graph &h, std::size_t k) {
  require_valid(g, dG);
  if (g.vertex_count() != h.vertex_count())
    throw Error(ErrorCode::SizeMismatch, "graphs have different vertex counts");
  if (dG.width() > k) throw Error(ErrorCode::WidthExceeded, "decomposition wider than k");
  if (g.edge_count() != h.edge_count()) return {};
  auto [gcol, hcol] = joint_colour_refinement(g, h);
  if (histogram(gcol) != histogram(hcol)) return {};
  OneDecompSearch search(g, dG, h, std::move(gcol), std::move(hcol));
  OneDecompResult result;
  result.mapping = search.run();
  result.stats = search.stats;
  return result;
}

std::optional<Permutation> iso_one_decomp(const Graph &g, const TreeDecomposition &dG,
                                          const Graph &h, std::size_t k) {
  return iso_one_decomp_detailed(g, dG, h, k).mapping;
}

std::optional<Permutation> find_isomorphism_tw(const Graph &g, const Graph &h,
                                               std::size_t k) {
  if (auto dG = compute_tree_decomposition(g, k)) {
    if (g.vertex_count() != h.vertex_count()) return std::nullopt;
    return iso_one_decomp(g, *dG, h, k);
  }
  if (auto dH = compute_tree_decomposition(h, k)) {
    if (g.vertex_count() != h.vertex_count()) return std::nullopt;
    if (auto back = iso_one_decomp(h, *dH, g, k)) return inverse(*back);
    return std::nullopt;
  }
  throw Error(ErrorCode::WidthExceeded, "both graphs have treewidth above k");
}

bool iso_tw(const Graph &g, const Graph &h, std::size_t k) {
  return find_isomorphism_tw(g, h, k).has_value();
}

} // namespace twiso
