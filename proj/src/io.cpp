#include "twiso/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace twiso {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string &what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

// Reads the remaining integers of a line; rejects anything else.
std::vector<long long> numbers(std::istringstream &ls, std::size_t line) {
  std::vector<long long> out;
  std::string tok;
  while (ls >> tok) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(tok, &used);
    } catch (const std::exception &) {
      fail(line, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) fail(line, "expected an integer, got '" + tok + "'");
    out.push_back(value);
  }
  return out;
}

Vertex to_vertex(long long external, long long n, std::size_t line) {
  if (external < 1 || external > n) fail(line, "vertex label out of range");
  return static_cast<Vertex>(external - 1);
}

std::ifstream open(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  return in;
}

} // namespace

Graph parse_graph(std::istream &in) {
  std::string text;
  std::size_t line_no = 0;
  long long n = -1, m = -1;
  std::vector<Edge> edges;
  while (std::getline(in, text)) {
    ++line_no;
    std::istringstream ls(text);
    std::string head;
    if (!(ls >> head) || head[0] == 'c') continue;
    if (head == "p") {
      std::string kind;
      ls >> kind;
      if (kind != "tw" || n >= 0) fail(line_no, "expected a single 'p tw <n> <m>' line");
      auto v = numbers(ls, line_no);
      if (v.size() != 2 || v[0] < 0 || v[1] < 0) fail(line_no, "malformed header");
      n = v[0];
      m = v[1];
      continue;
    }
    if (n < 0) fail(line_no, "edge before header");
    std::vector<long long> v;
    if (head == "e") {
      v = numbers(ls, line_no);
    } else {
      std::istringstream whole(text);
      v = numbers(whole, line_no);
    }
    if (v.size() != 2) fail(line_no, "edge needs two endpoints");
    Vertex a = to_vertex(v[0], n, line_no), b = to_vertex(v[1], n, line_no);
    edges.push_back({std::min(a, b), std::max(a, b)});
  }
  if (n < 0) throw Error(ErrorCode::ParseError, "missing 'p tw' header");
  if (static_cast<long long>(edges.size()) != m)
    throw Error(ErrorCode::ParseError, "header promises " + std::to_string(m) + " edges, found " +
                                           std::to_string(edges.size()));
  return Graph(static_cast<std::size_t>(n), edges);
}

Graph read_graph(const std::filesystem::path &path) {
  auto in = open(path);
  return parse_graph(in);
}

std::string format_graph(const Graph &g) {
  std::ostringstream out;
  out << "p tw " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (Edge e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
  return out.str();
}

TreeDecomposition parse_decomposition(std::istream &in) {
  std::string text;
  std::size_t line_no = 0;
  long long bags = -1, width_plus_one = 0, n = 0;
  TreeDecomposition d;
  std::vector<char> seen;
  while (std::getline(in, text)) {
    ++line_no;
    std::istringstream ls(text);
    std::string head;
    if (!(ls >> head) || head[0] == 'c') continue;
    if (head == "p") {
      std::string kind;
      ls >> kind;
      if (kind != "td" || bags >= 0) fail(line_no, "expected a single 'p td' line");
      auto v = numbers(ls, line_no);
      if (v.size() != 3 || v[0] < 1 || v[1] < 0 || v[2] < 0) fail(line_no, "malformed header");
      bags = v[0];
      width_plus_one = v[1];
      n = v[2];
      d.bags.resize(static_cast<std::size_t>(bags));
      seen.assign(static_cast<std::size_t>(bags), 0);
      continue;
    }
    if (bags < 0) fail(line_no, "record before header");
    auto v = numbers(ls, line_no);
    auto bag_id = [&](long long external) {
      if (external < 1 || external > bags) fail(line_no, "bag id out of range");
      return static_cast<BagId>(external - 1);
    };
    if (head == "b") {
      if (v.empty()) fail(line_no, "bag line needs an id");
      BagId id = bag_id(v[0]);
      if (seen[id]) fail(line_no, "bag listed twice");
      seen[id] = 1;
      std::vector<Vertex> members;
      for (std::size_t i = 1; i < v.size(); ++i) members.push_back(to_vertex(v[i], n, line_no));
      std::size_t count = members.size();
      d.bags[id] = VertexSet::from_unsorted(std::move(members));
      if (d.bags[id].size() != count) fail(line_no, "repeated vertex in bag");
    } else if (head == "t") {
      if (v.size() != 2) fail(line_no, "tree edge needs two bag ids");
      d.tree_edges.emplace_back(bag_id(v[0]), bag_id(v[1]));
    } else if (head == "r") {
      if (v.size() != 1 || d.root) fail(line_no, "expected a single 'r <id>' line");
      d.root = bag_id(v[0]);
    } else {
      fail(line_no, "unknown record '" + head + "'");
    }
  }
  if (bags < 0) throw Error(ErrorCode::ParseError, "missing 'p td' header");
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw Error(ErrorCode::ParseError, "a declared bag has no 'b' line");
  std::size_t largest = 0;
  for (const auto &b : d.bags) largest = std::max(largest, b.size());
  if (static_cast<long long>(largest) != width_plus_one)
    throw Error(ErrorCode::ParseError, "header width does not match the largest bag");
  return d;
}

TreeDecomposition read_decomposition(const std::filesystem::path &path) {
  auto in = open(path);
  return parse_decomposition(in);
}

std::string format_decomposition(const TreeDecomposition &d, std::size_t vertex_count) {
  std::size_t largest = 0;
  for (const auto &b : d.bags) largest = std::max(largest, b.size());
  std::ostringstream out;
  out << "p td " << d.bags.size() << ' ' << largest << ' ' << vertex_count << '\n';
  for (BagId i = 0; i < d.bags.size(); ++i) {
    out << "b " << i + 1;
    for (Vertex v : d.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [a, b] : d.tree_edges) out << "t " << a + 1 << ' ' << b + 1 << '\n';
  if (d.root) out << "r " << *d.root + 1 << '\n';
  return out.str();
}

std::string format_mapping(const Permutation &image) {
  std::ostringstream out;
  for (std::size_t v = 0; v < image.size(); ++v) out << "map " << v + 1 << ' ' << image[v] + 1 << '\n';
  return out.str();
}

} // namespace twiso
