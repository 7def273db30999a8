#include "twiso/iso_order.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace twiso {

namespace {

// Tag carried by every root-bag ordering: no parent constrains the root.
const OrderCode kTopTag{0, 0};

using Context = std::vector<std::uint32_t>;

std::uint32_t position_of(const BagOrdering &phi, Vertex v) {
  auto it = std::find(phi.sequence.begin(), phi.sequence.end(), v);
  return static_cast<std::uint32_t>(it - phi.sequence.begin());
}

void append(OrderCode &out, const OrderCode &tail) {
  out.insert(out.end(), tail.begin(), tail.end());
}

std::vector<BagOrdering> all_orderings(const VertexSet &bag) {
  std::vector<BagOrdering> out;
  std::vector<Vertex> seq = bag.members();
  do {
    out.push_back({seq});
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

void check_ordering(const VertexSet &bag, const BagOrdering &phi) {
  if (VertexSet::from_unsorted(phi.sequence) != bag ||
      phi.sequence.size() != bag.size())
    throw Error(ErrorCode::InvalidParams, "ordering is not a permutation of the bag");
}

void check_bag_handle(SubtreeHandle h) {
  if (h.tree == nullptr || h.node >= h.tree->nodes().size() ||
      h.tree->node(h.node).kind != NodeKind::Bag)
    throw Error(ErrorCode::InvalidParams, "handle does not name a bag node");
}

// Memoised codes for the bag nodes of one augmented tree. A bag node's code
// under a context (the parent-ordering positions of its separating set, in
// ascending vertex order) is
//   depth, tag, |bag|, bag edges, subtree size, #separators, separators
// minimised over all orderings of the bag, where tag = separator positions +
// bipartite edges to the separator and each separator entry = its positions
// under the ordering + the sorted codes of the child bags hanging from it.
class CodeBuilder {
public:
  struct Entry {
    OrderCode code;
    BagOrdering best;
  };

  explicit CodeBuilder(const AugmentedTree &tree) : tree_(tree) {}

  const Entry &key(NodeId bag_node, const Context &ctx) {
    auto memo_key = std::make_pair(bag_node, ctx);
    if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;
    std::optional<Entry> best;
    for (BagOrdering &phi : all_orderings(tree_.node(bag_node).vertices)) {
      OrderCode code = code_for(bag_node, tag(bag_node, ctx, phi), phi);
      if (!best || code < best->code) best = Entry{std::move(code), std::move(phi)};
    }
    return memo_.emplace(memo_key, std::move(*best)).first->second;
  }

  OrderCode code_for(NodeId bag_node, const OrderCode &tag_tokens,
                     const BagOrdering &phi) {
    OrderCode out{static_cast<std::uint32_t>(tree_.depth_of(bag_node))};
    append(out, tag_tokens);
    append(out, body(bag_node, phi));
    return out;
  }

  // Separator positions and bipartite edges relative to the parent ordering.
  OrderCode tag(NodeId bag_node, const Context &ctx, const BagOrdering &phi) const {
    OrderCode out;
    if (bag_node == tree_.root()) return kTopTag;
    const AugmentedNode &sep = tree_.node(tree_.node(bag_node).parent);
    Context sorted_ctx = ctx;
    std::sort(sorted_ctx.begin(), sorted_ctx.end());
    for (auto p : sorted_ctx) out.insert(out.end(), {1, p});
    out.push_back(0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> bip;
    const Graph &g = tree_.graph();
    std::size_t i = 0;
    for (Vertex m : sep.vertices) {
      for (Vertex x : phi.sequence)
        if (g.has_edge(m, x)) bip.emplace_back(ctx[i], position_of(phi, x));
      ++i;
    }
    std::sort(bip.begin(), bip.end());
    for (auto [a, b] : bip) out.insert(out.end(), {1, a, b});
    out.push_back(0);
    return out;
  }

  struct SeparatorEntry {
    OrderCode code;
    NodeId node;
    Context child_ctx;
    std::vector<std::pair<const OrderCode *, NodeId>> children; // sorted by code
  };

  // Separator entries of a bag under phi, in code order.
  std::vector<SeparatorEntry> separators(NodeId bag_node, const BagOrdering &phi) {
    std::vector<SeparatorEntry> entries;
    for (NodeId s : tree_.node(bag_node).children) {
      const AugmentedNode &sep = tree_.node(s);
      SeparatorEntry e;
      e.node = s;
      for (Vertex m : sep.vertices) e.child_ctx.push_back(position_of(phi, m));
      Context sorted_pos = e.child_ctx;
      std::sort(sorted_pos.begin(), sorted_pos.end());
      for (auto p : sorted_pos) e.code.insert(e.code.end(), {1, p});
      e.code.push_back(0);
      for (NodeId c : sep.children) e.children.emplace_back(&key(c, e.child_ctx).code, c);
      std::stable_sort(e.children.begin(), e.children.end(),
                       [](const auto &a, const auto &b) { return *a.first < *b.first; });
      for (const auto &[code, c] : e.children) {
        e.code.push_back(1);
        append(e.code, *code);
      }
      e.code.push_back(0);
      entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(),
              [](const SeparatorEntry &a, const SeparatorEntry &b) { return a.code < b.code; });
    return entries;
  }

  OrderCode body(NodeId bag_node, const BagOrdering &phi) {
    const Graph &g = tree_.graph();
    const auto &seq = phi.sequence;
    OrderCode out{static_cast<std::uint32_t>(seq.size())};
    for (std::uint32_t i = 0; i < seq.size(); ++i)
      for (std::uint32_t j = i + 1; j < seq.size(); ++j)
        if (g.has_edge(seq[i], seq[j])) out.insert(out.end(), {1, i, j});
    out.push_back(0);
    out.push_back(static_cast<std::uint32_t>(tree_.subtree_vertices(bag_node).size()));
    out.push_back(static_cast<std::uint32_t>(tree_.node(bag_node).children.size()));
    for (const SeparatorEntry &e : separators(bag_node, phi)) {
      out.push_back(1);
      append(out, e.code);
    }
    out.push_back(0);
    return out;
  }

  // Depth-first relabeling along the minimising choices.
  void label(NodeId bag_node, const Context &ctx, Permutation &labels, Vertex &next) {
    BagOrdering phi = key(bag_node, ctx).best;
    for (Vertex v : phi.sequence) labels[v] = next++;
    for (SeparatorEntry &e : separators(bag_node, phi))
      for (const auto &[code, c] : e.children) label(c, e.child_ctx, labels, next);
  }

private:
  const AugmentedTree &tree_;
  std::map<std::pair<NodeId, Context>, Entry> memo_;
};

OrderCode min_code(CodeBuilder &builder, NodeId node,
                   const std::vector<ThetaSet::Choice> &choices) {
  std::optional<OrderCode> best;
  for (const auto &choice : choices) {
    OrderCode code = builder.code_for(node, choice.tag, choice.ordering);
    if (!best || code < *best) best = std::move(code);
  }
  return *best;
}

CanonicalForm to_form(const OrderCode &code) {
  CanonicalForm form;
  form.bytes.reserve(code.size() * 4);
  for (std::uint32_t t : code)
    for (int shift = 24; shift >= 0; shift -= 8)
      form.bytes.push_back(static_cast<std::uint8_t>(t >> shift));
  return form;
}

void require_connected(const Graph &g) {
  if (!is_connected(g))
    throw Error(ErrorCode::DisconnectedGraph, "input graph is disconnected");
}

} // namespace

// ThetaSet -------------------------------------------------------------------

ThetaSet ThetaSet::full(const VertexSet &left_bag, const VertexSet &right_bag) {
  ThetaSet theta;
  for (auto &phi : all_orderings(left_bag)) theta.left.push_back({std::move(phi), kTopTag});
  for (auto &phi : all_orderings(right_bag)) theta.right.push_back({std::move(phi), kTopTag});
  return theta;
}

std::vector<std::pair<std::size_t, std::size_t>> ThetaSet::admitted_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j)
      if (left[i].tag == right[j].tag &&
          (left[i].tag == kTopTag ||
           left[i].ordering.sequence.size() == right[j].ordering.sequence.size()))
        out.emplace_back(i, j);
  return out;
}

bool ThetaSet::empty() const { return admitted_pairs().empty(); }

ThetaSet restricted_theta(SubtreeHandle parent_left, const BagOrdering &sigma_left,
                          SubtreeHandle child_left, SubtreeHandle parent_right,
                          const BagOrdering &sigma_right, SubtreeHandle child_right) {
  ThetaSet theta;
  auto side = [](SubtreeHandle parent, const BagOrdering &sigma, SubtreeHandle child,
                 std::vector<ThetaSet::Choice> &out) {
    check_bag_handle(parent);
    check_bag_handle(child);
    const AugmentedTree &tree = *child.tree;
    if (parent.tree != child.tree || child.node == tree.root() ||
        tree.node(tree.node(child.node).parent).parent != parent.node)
      throw Error(ErrorCode::InvalidParams, "child is not a grandchild of parent");
    check_ordering(tree.node(parent.node).vertices, sigma);
    Context ctx;
    for (Vertex m : tree.node(tree.node(child.node).parent).vertices)
      ctx.push_back(position_of(sigma, m));
    CodeBuilder builder(tree);
    for (auto &phi : all_orderings(tree.node(child.node).vertices)) {
      OrderCode t = builder.tag(child.node, ctx, phi);
      out.push_back({std::move(phi), std::move(t)});
    }
  };
  side(parent_left, sigma_left, child_left, theta.left);
  side(parent_right, sigma_right, child_right, theta.right);
  return theta;
}

Order compare_augmented(SubtreeHandle left, SubtreeHandle right,
                        const ThetaSet &theta) {
  check_bag_handle(left);
  check_bag_handle(right);
  if (theta.empty())
    throw Error(ErrorCode::NoAdmissibleMapping, "theta admits no pair of orderings");
  for (const auto &c : theta.left) check_ordering(left.tree->node(left.node).vertices, c.ordering);
  for (const auto &c : theta.right) check_ordering(right.tree->node(right.node).vertices, c.ordering);
  CodeBuilder lb(*left.tree), rb(*right.tree);
  OrderCode l = min_code(lb, left.node, theta.left);
  OrderCode r = min_code(rb, right.node, theta.right);
  if (l < r) return Order::Less;
  if (r < l) return Order::Greater;
  return Order::Equal;
}

OrderCode root_code(const AugmentedTree &tree) {
  CodeBuilder builder(tree);
  return builder.key(tree.root(), {}).code;
}

std::string CanonicalForm::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

std::vector<VertexSet> admissible_roots(const Graph &g, std::size_t k) {
  std::vector<VertexSet> out;
  for_each_subset(g.vertex_count(), k, [&](const VertexSet &root) {
    if (build_minimal_tdd(g, root).width() <= k) out.push_back(root);
    return true;
  });
  return out;
}

bool iso_tdw(const Graph &g, const Graph &h, std::size_t k) {
  require_connected(g);
  require_connected(h);
  if (g.vertex_count() == 0 || h.vertex_count() == 0)
    return g.vertex_count() == h.vertex_count();

  // One admissible root for g is enough: an isomorphism carries it to a root
  // of h whose minimal decomposition is the image of g's.
  std::optional<VertexSet> g_root;
  for_each_subset(g.vertex_count(), k, [&](const VertexSet &root) {
    if (build_minimal_tdd(g, root).width() <= k) g_root = root;
    return !g_root;
  });
  std::optional<VertexSet> h_any;
  if (!g_root) {
    for_each_subset(h.vertex_count(), k, [&](const VertexSet &root) {
      if (build_minimal_tdd(h, root).width() <= k) h_any = root;
      return !h_any;
    });
    if (!h_any)
      throw Error(ErrorCode::WidthExceeded, "neither graph has tree distance width <= k");
    return false;
  }
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count())
    return false;

  AugmentedTree g_tree(g, build_minimal_tdd(g, *g_root));
  const OrderCode g_code = root_code(g_tree);
  bool found = false;
  for_each_subset(h.vertex_count(), g_root->size(), [&](const VertexSet &root) {
    if (root.size() != g_root->size()) return true;
    auto d = build_minimal_tdd(h, root);
    if (d.width() > k) return true;
    AugmentedTree h_tree(h, std::move(d));
    found = compare_augmented({&g_tree, g_tree.root()}, {&h_tree, h_tree.root()},
                              ThetaSet::full(*g_root, root)) == Order::Equal;
    return !found;
  });
  return found;
}

Canonization canonize_tdw(const Graph &g, std::size_t k) {
  require_connected(g);
  Canonization out;
  if (g.vertex_count() == 0) return out;

  std::optional<OrderCode> best_code;
  std::optional<AugmentedTree> best_tree;
  for (const VertexSet &root : admissible_roots(g, k)) {
    AugmentedTree tree(g, build_minimal_tdd(g, root));
    OrderCode code = root_code(tree);
    if (!best_code || code < *best_code) {
      best_code = std::move(code);
      best_tree.emplace(std::move(tree));
      out.root = root;
    }
  }
  if (!best_code)
    throw Error(ErrorCode::WidthExceeded, "tree distance width exceeds k");

  out.form = to_form(*best_code);
  out.labeling.assign(g.vertex_count(), kNoVertex);
  CodeBuilder builder(*best_tree);
  Vertex next = 0;
  builder.label(best_tree->root(), {}, out.labeling, next);
  return out;
}

CanonicalForm canon_tdw(const Graph &g, std::size_t k) {
  return canonize_tdw(g, k).form;
}

Permutation canonical_map(const Graph &g, std::size_t k) {
  return canonize_tdw(g, k).labeling;
}

} // namespace twiso
