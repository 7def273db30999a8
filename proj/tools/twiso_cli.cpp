// Command-line front end: one subcommand per library operation.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "twiso/augmented_tree.hpp"
#include "twiso/harness.hpp"
#include "twiso/io.hpp"
#include "twiso/iso_order.hpp"
#include "twiso/tdd.hpp"
#include "twiso/treewidth_iso.hpp"

namespace {

using json = nlohmann::json;
using namespace twiso;

constexpr int kYes = 0, kNo = 1, kUsage = 2;

struct Outcome {
  int exit = kYes;
  std::string verdict;
  std::string text;
  json witness;
};

VertexSet parse_root(const std::string &spec, const Graph &g) {
  std::vector<Vertex> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw Error(ErrorCode::ParseError, "bad root vertex '" + item + "'");
    if (v < 1 || v > static_cast<long long>(g.vertex_count()))
      throw Error(ErrorCode::InvalidVertex, "root vertex out of range");
    out.push_back(static_cast<Vertex>(v - 1));
  }
  return VertexSet::from_unsorted(std::move(out));
}

json mapping_json(const Permutation &p) {
  json out = json::array();
  for (std::size_t v = 0; v < p.size(); ++v) out.push_back({v + 1, p[v] + 1});
  return out;
}

Outcome iso_outcome(const std::optional<Permutation> &map) {
  if (!map) return {kNo, "no", "no\n", nullptr};
  return {kYes, "yes", "yes\n" + format_mapping(*map), mapping_json(*map)};
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Graph isomorphism for bounded tree distance width and treewidth"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Print a single-line JSON record");

  std::string g_path, h_path, dg_path, dh_path, root_spec, out_prefix;
  std::size_t k = 2, n = 10;
  double ratio = 1.0;
  std::uint64_t seed = 1;
  json inputs;
  std::function<Outcome()> action;

  auto need_k = [&](CLI::App *cmd) { cmd->add_option("-k", k, "Width bound")->required(); };

  auto *tdd_build = app.add_subcommand("tdd-build", "Minimal tree distance decomposition");
  tdd_build->add_option("graph", g_path)->required();
  tdd_build->add_option("--root", root_spec, "Comma-separated 1-based root vertices")->required();
  tdd_build->callback([&] {
    inputs = {{"graph", g_path}, {"root", root_spec}};
    action = [&] {
      Graph g = read_graph(g_path);
      auto d = build_minimal_tdd(g, parse_root(root_spec, g));
      return Outcome{kYes, "ok", render_records(d), json(render_records(d))};
    };
  });

  auto *tdd_width = app.add_subcommand("tdd-width", "Tree distance width up to k");
  tdd_width->add_option("graph", g_path)->required();
  need_k(tdd_width);
  tdd_width->callback([&] {
    inputs = {{"graph", g_path}, {"k", k}};
    action = [&] {
      auto r = tree_distance_width_with_root(read_graph(g_path), k);
      if (!r) return Outcome{kNo, "exceeds", "exceeds " + std::to_string(k) + "\n", nullptr};
      std::string root;
      json root_json = json::array();
      for (Vertex v : r->root) {
        root += " " + std::to_string(v + 1);
        root_json.push_back(v + 1);
      }
      return Outcome{kYes, std::to_string(r->width),
                     "width " + std::to_string(r->width) + "\nroot" + root + "\n",
                     {{"width", r->width}, {"root", root_json}}};
    };
  });

  auto *augtree = app.add_subcommand("augtree", "Augmented tree over the minimal decomposition");
  augtree->add_option("graph", g_path)->required();
  augtree->add_option("--root", root_spec)->required();
  augtree->callback([&] {
    inputs = {{"graph", g_path}, {"root", root_spec}};
    action = [&] {
      Graph g = read_graph(g_path);
      auto tree = build_augmented_tree(g, build_minimal_tdd(g, parse_root(root_spec, g)));
      std::string s = tree.serialize(1);
      return Outcome{kYes, "ok", s + "\n", s};
    };
  });

  auto *iso_tdw_cmd = app.add_subcommand("iso-tdw", "Isomorphism for tree distance width <= k");
  iso_tdw_cmd->add_option("G", g_path, "Graph G")->required();
  iso_tdw_cmd->add_option("H", h_path, "Graph H")->required();
  need_k(iso_tdw_cmd);
  iso_tdw_cmd->callback([&] {
    inputs = {{"g", g_path}, {"h", h_path}, {"k", k}};
    action = [&] {
      Graph g = read_graph(g_path), h = read_graph(h_path);
      if (!iso_tdw(g, h, k)) return iso_outcome(std::nullopt);
      // Both canonical labelings land on the same graph.
      return iso_outcome(compose(canonical_map(g, k), inverse(canonical_map(h, k))));
    };
  });

  auto *canon_cmd = app.add_subcommand("canon-tdw", "Canonical form for tree distance width <= k");
  canon_cmd->add_option("graph", g_path)->required();
  need_k(canon_cmd);
  canon_cmd->callback([&] {
    inputs = {{"graph", g_path}, {"k", k}};
    action = [&] {
      Canonization c = canonize_tdw(read_graph(g_path), k);
      std::string labels;
      for (std::size_t v = 0; v < c.labeling.size(); ++v)
        labels += (v ? " " : "") + std::to_string(c.labeling[v] + 1);
      json lab = json::array();
      for (Vertex l : c.labeling) lab.push_back(l + 1);
      return Outcome{kYes, c.form.hex(), c.form.hex() + "\n" + labels + "\n",
                     {{"form", c.form.hex()}, {"labeling", lab}}};
    };
  });

  auto *both = app.add_subcommand("iso-both", "Isomorphism respecting both decompositions");
  both->add_option("G", g_path, "Graph G")->required();
  both->add_option("DG", dg_path, "Decomposition of G")->required();
  both->add_option("H", h_path, "Graph H")->required();
  both->add_option("DH", dh_path, "Decomposition of H")->required();
  both->callback([&] {
    inputs = {{"g", g_path}, {"dg", dg_path}, {"h", h_path}, {"dh", dh_path}};
    action = [&] {
      return iso_outcome(respecting_isomorphism(read_graph(g_path), read_decomposition(dg_path),
                                                read_graph(h_path), read_decomposition(dh_path)));
    };
  });

  auto *one = app.add_subcommand("iso-one", "Isomorphism given a decomposition of g");
  one->add_option("G", g_path, "Graph G")->required();
  one->add_option("DG", dg_path, "Decomposition of G")->required();
  one->add_option("H", h_path, "Graph H")->required();
  need_k(one);
  one->callback([&] {
    inputs = {{"g", g_path}, {"dg", dg_path}, {"h", h_path}, {"k", k}};
    action = [&] {
      return iso_outcome(
          iso_one_decomp(read_graph(g_path), read_decomposition(dg_path), read_graph(h_path), k));
    };
  });

  auto *tw = app.add_subcommand("iso-tw", "Isomorphism for treewidth <= k");
  tw->add_option("G", g_path, "Graph G")->required();
  tw->add_option("H", h_path, "Graph H")->required();
  need_k(tw);
  tw->callback([&] {
    inputs = {{"g", g_path}, {"h", h_path}, {"k", k}};
    action = [&] { return iso_outcome(find_isomorphism_tw(read_graph(g_path), read_graph(h_path), k)); };
  });

  auto *brute = app.add_subcommand("iso-brute", "Backtracking isomorphism test");
  brute->add_option("G", g_path, "Graph G")->required();
  brute->add_option("H", h_path, "Graph H")->required();
  brute->callback([&] {
    inputs = {{"g", g_path}, {"h", h_path}};
    action = [&] { return iso_outcome(brute_force_iso(read_graph(g_path), read_graph(h_path))); };
  });

  auto *gen = app.add_subcommand("gen", "Random partial k-tree with its decomposition");
  gen->add_option("--n", n)->required();
  gen->add_option("--k", k)->required();
  gen->add_option("--ratio", ratio)->required();
  gen->add_option("--seed", seed)->required();
  gen->add_option("-o,--out", out_prefix, "Write <prefix>.gr and <prefix>.td");
  gen->callback([&] {
    inputs = {{"n", n}, {"k", k}, {"ratio", ratio}, {"seed", seed}};
    action = [&] {
      InstanceBundle b = generate_partial_ktree(n, k, ratio, seed);
      std::string gr = format_graph(b.graph);
      std::string td = format_decomposition(*b.decomposition, b.graph.vertex_count());
      if (out_prefix.empty()) return Outcome{kYes, "ok", gr + td, {{"graph", gr}, {"decomposition", td}}};
      std::ofstream(out_prefix + ".gr") << gr;
      std::ofstream(out_prefix + ".td") << td;
      return Outcome{kYes, "ok", "", {{"graph", out_prefix + ".gr"}, {"decomposition", out_prefix + ".td"}}};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Outcome outcome;
  try {
    outcome = action();
  } catch (const Error &e) {
    outcome = {kUsage, "error", std::string(e.what()) + "\n", std::string(to_string(e.code()))};
    if (!as_json) {
      std::cerr << e.what() << '\n';
      return kUsage;
    }
  }
  if (as_json) {
    std::cout << json{{"command", command}, {"inputs", inputs}, {"verdict", outcome.verdict},
                      {"witness", outcome.witness}}
                     .dump()
              << '\n';
  } else {
    std::cout << outcome.text;
  }
  return outcome.exit;
}
