#include "orient/graph.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace orient {

namespace {

constexpr const char* kVerticesKeyword = "vertices:";

bool valid_vertex_name(const std::string& name) {
  if (name.empty() || name == kVerticesKeyword) return false;
  if (name[0] == '#') return false;
  for (char c : name)
    if (std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

int Graph::add_vertex(const std::string& name) {
  if (!valid_vertex_name(name))
    throw std::invalid_argument("graph: invalid vertex name '" + name + "'");
  if (index_.count(name))
    throw std::invalid_argument("graph: duplicate vertex name '" + name + "'");
  if (n() >= VertexSet::kCapacity)
    throw std::invalid_argument("graph: vertex capacity (64) exceeded");
  int v = n();
  names_.push_back(name);
  adj_.push_back(0);
  index_.emplace(name, v);
  return v;
}

int Graph::add_edge(int a, int b) {
  if (a < 0 || a >= n() || b < 0 || b >= n())
    throw std::invalid_argument("graph: edge endpoint out of range");
  if (a == b)
    throw std::invalid_argument("graph: self-loop at vertex '" + names_[a] + "'");
  if (has_edge(a, b))
    throw std::invalid_argument("graph: duplicate edge '" + names_[a] + " " + names_[b] + "'");
  int e = m();
  edges_.emplace_back(a, b);
  adj_[a] |= std::uint64_t(1) << b;
  adj_[b] |= std::uint64_t(1) << a;
  return e;
}

int Graph::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int Graph::require_vertex(const std::string& name) const {
  int v = index_of(name);
  if (v < 0) throw std::invalid_argument("graph: no vertex named '" + name + "'");
  return v;
}

int Graph::find_edge(int a, int b) const {
  if (a < 0 || a >= n() || b < 0 || b >= n() || a == b) return -1;
  if (!((adj_[a] >> b) & 1)) return -1;
  for (int e = 0; e < m(); ++e) {
    auto [x, y] = edges_[e];
    if ((x == a && y == b) || (x == b && y == a)) return e;
  }
  return -1;
}

bool Graph::connected() const {
  if (n() == 0) return true;
  std::uint64_t seen = 1, frontier = 1;
  while (frontier != 0) {
    int v = std::countr_zero(frontier);
    frontier &= frontier - 1;
    std::uint64_t next = adj_[v] & ~seen;
    seen |= next;
    frontier |= next;
  }
  return seen == VertexSet::full(n()).bits;
}

Graph parse_edge_list(const std::string& text) {
  Graph g;
  std::istringstream in(text);
  std::string line;
  bool saw_content = false;
  int lineno = 0;
  auto ensure_vertex = [&g](const std::string& name) {
    int v = g.index_of(name);
    return v >= 0 ? v : g.add_vertex(name);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (tokens[0] == kVerticesKeyword) {
      if (saw_content)
        throw std::invalid_argument("graph: line " + std::to_string(lineno) +
                                    ": vertex header must come first");
      for (std::size_t i = 1; i < tokens.size(); ++i) g.add_vertex(tokens[i]);
      saw_content = true;
      continue;
    }
    if (tokens.size() != 2)
      throw std::invalid_argument("graph: line " + std::to_string(lineno) +
                                  ": expected two endpoint names");
    saw_content = true;
    // Sequence the lookups so first appearance fixes the vertex order.
    int a = ensure_vertex(tokens[0]);
    int b = ensure_vertex(tokens[1]);
    g.add_edge(a, b);
  }
  return g;
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  out << kVerticesKeyword;
  for (int v = 0; v < g.n(); ++v) out << ' ' << g.name(v);
  out << '\n';
  for (int e = 0; e < g.m(); ++e) {
    auto [a, b] = g.edge(e);
    out << g.name(a) << ' ' << g.name(b) << '\n';
  }
  return out.str();
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("graph: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str());
}

int edges_between(const Graph& g, VertexSet s, int v) {
  if (s.has(v)) throw std::invalid_argument("edges_between: vertex lies inside the set");
  return std::popcount(g.adjacency(v) & s.bits);
}

Graph delete_vertices(const Graph& g, VertexSet drop) {
  Graph out;
  std::vector<int> remap(g.n(), -1);
  for (int v = 0; v < g.n(); ++v)
    if (!drop.has(v)) remap[v] = out.add_vertex(g.name(v));
  for (int e = 0; e < g.m(); ++e) {
    auto [a, b] = g.edge(e);
    if (remap[a] >= 0 && remap[b] >= 0) out.add_edge(remap[a], remap[b]);
  }
  return out;
}

Graph bunkbed_product(const Graph& g) {
  Graph out;
  for (int k = 0; k < 2; ++k)
    for (int v = 0; v < g.n(); ++v) out.add_vertex(g.name(v) + (k == 0 ? "0" : "1"));
  for (int k = 0; k < 2; ++k)
    for (int e = 0; e < g.m(); ++e) {
      auto [a, b] = g.edge(e);
      out.add_edge(a + k * g.n(), b + k * g.n());
    }
  for (int v = 0; v < g.n(); ++v) out.add_edge(v, v + g.n());
  return out;
}

int pair_count(int n) { return n * (n - 1) / 2; }

std::pair<int, int> pair_at(int n, int k) {
  for (int i = 0; i < n; ++i) {
    int row = n - 1 - i;
    if (k < row) return {i, i + 1 + k};
    k -= row;
  }
  throw std::invalid_argument("pair_at: index out of range");
}

Graph labeled_graph(int n, std::uint64_t edge_mask) {
  Graph g;
  for (int v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v));
  int pairs = pair_count(n);
  if (pairs < 64 && (edge_mask >> pairs) != 0)
    throw std::invalid_argument("labeled_graph: edge mask out of range");
  for (int k = 0; k < pairs; ++k)
    if ((edge_mask >> k) & 1) {
      auto [a, b] = pair_at(n, k);
      g.add_edge(a, b);
    }
  return g;
}

std::vector<std::uint64_t> connected_graph_masks(int n, int max_edges) {
  if (n < 1 || n > 8)
    throw std::invalid_argument("connected_graph_masks: n must be in 1..8");
  int pairs = pair_count(n);
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs); ++mask) {
    if (max_edges >= 0 && std::popcount(mask) > max_edges) continue;
    // Connectivity directly on the pair masks, without building a Graph.
    std::uint64_t adj[8] = {};
    for (int k = 0; k < pairs; ++k)
      if ((mask >> k) & 1) {
        auto [a, b] = pair_at(n, k);
        adj[a] |= std::uint64_t(1) << b;
        adj[b] |= std::uint64_t(1) << a;
      }
    std::uint64_t seen = 1, frontier = 1;
    while (frontier != 0) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint64_t next = adj[v] & ~seen;
      seen |= next;
      frontier |= next;
    }
    if (seen == (std::uint64_t(1) << n) - 1) out.push_back(mask);
  }
  return out;
}

}  // namespace orient
