#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace orient {

// Set of vertex indices, stored as a 64-bit mask. Everything downstream
// (cluster computations, the recursions, the sweeps) manipulates these, so the
// whole engine is capped at 64 vertices per graph.
struct VertexSet {
  static constexpr int kCapacity = 64;

  std::uint64_t bits = 0;

  VertexSet() = default;
  explicit VertexSet(std::uint64_t b) : bits(b) {}

  static VertexSet single(int v) { return VertexSet(std::uint64_t(1) << v); }
  static VertexSet full(int n) {
    return VertexSet(n >= kCapacity ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1);
  }

  bool has(int v) const { return (bits >> v) & 1; }
  void add(int v) { bits |= std::uint64_t(1) << v; }
  void remove(int v) { bits &= ~(std::uint64_t(1) << v); }
  int count() const { return std::popcount(bits); }
  bool empty() const { return bits == 0; }
  bool subset_of(VertexSet o) const { return (bits & ~o.bits) == 0; }
  bool intersects(VertexSet o) const { return (bits & o.bits) != 0; }
  // Lowest-index member, or -1 when empty.
  int lowest() const { return bits == 0 ? -1 : std::countr_zero(bits); }

  friend VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits | b.bits); }
  friend VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits & b.bits); }
  friend VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits & ~b.bits); }
  bool operator==(const VertexSet&) const = default;

  // Iteration over members in increasing index order.
  struct Iterator {
    std::uint64_t rest;
    int operator*() const { return std::countr_zero(rest); }
    Iterator& operator++() { rest &= rest - 1; return *this; }
    bool operator!=(const Iterator& o) const { return rest != o.rest; }
  };
  Iterator begin() const { return {bits}; }
  Iterator end() const { return {0}; }
};

// Finite simple undirected graph with named vertices. Vertex indices are
// dense (0..n-1) in insertion order; edges keep their insertion order too,
// which fixes the per-edge state layout used by the probabilistic models.
class Graph {
 public:
  // Returns the new vertex index. Throws on a duplicate name, an invalid name
  // (empty, whitespace, '#', or the reserved header keyword), or overflow of
  // the VertexSet capacity.
  int add_vertex(const std::string& name);
  // Returns the new edge index. Throws on self-loops, duplicate edges, or
  // out-of-range endpoints.
  int add_edge(int a, int b);

  int n() const { return static_cast<int>(names_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }

  const std::string& name(int v) const { return names_.at(v); }
  // Index for a vertex name, or -1 when absent.
  int index_of(const std::string& name) const;
  // Index for a vertex name; throws std::invalid_argument when absent.
  int require_vertex(const std::string& name) const;

  std::pair<int, int> edge(int e) const { return edges_.at(e); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // Adjacency mask of v (simple graph: degree == popcount).
  std::uint64_t adjacency(int v) const { return adj_.at(v); }
  int degree(int v) const { return std::popcount(adj_.at(v)); }
  // Edge index joining a and b, or -1 when absent.
  int find_edge(int a, int b) const;
  bool has_edge(int a, int b) const { return find_edge(a, b) >= 0; }

  bool connected() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::uint64_t> adj_;
  std::unordered_map<std::string, int> index_;
};

// Text format, one item per line:
//   # comment (also allowed after content)
//   vertices: a b c        (optional, first content line; fixes vertex order
//                           and declares isolated vertices)
//   u v                    (one edge; endpoints auto-registered on first use)
// Throws std::invalid_argument on malformed lines, self-loops, duplicate
// edges, or duplicate names in the header.
Graph parse_edge_list(const std::string& text);
std::string format_edge_list(const Graph& g);
Graph load_graph_file(const std::string& path);

// Number of edges between v and the set s (v must not be in s).
int edges_between(const Graph& g, VertexSet s, int v);

// Induced subgraph on the complement of `drop`. Vertices keep their names and
// relative order; indices are re-densified.
Graph delete_vertices(const Graph& g, VertexSet drop);

// The double cover used by the bunkbed construction: two copies of g
// (vertex (v,k) named name(v)+"0"/"1", k in {0,1}), plus one vertical edge
// per vertex. Vertex (v,k) gets index v + k*n. Edge order: copy-0 edges in
// original order, then copy-1 edges, then verticals in vertex order.
Graph bunkbed_product(const Graph& g);

// --- labeled-graph enumeration (for exhaustive sweeps) ---

// Vertex pairs (i,j), i<j, in lexicographic order; pair k is edge bit k.
int pair_count(int n);
std::pair<int, int> pair_at(int n, int k);

// The labeled graph on vertices v0..v{n-1} whose edge set is `edge_mask` over
// the pair order above.
Graph labeled_graph(int n, std::uint64_t edge_mask);

// All connected labeled graphs on n vertices, optionally capped at max_edges,
// as edge masks in increasing order. n is capped at 8 (pair_count must fit the
// mask and enumeration is 2^pair_count).
std::vector<std::uint64_t> connected_graph_masks(int n, int max_edges = -1);

}  // namespace orient

template <>
struct std::hash<orient::VertexSet> {
  std::size_t operator()(const orient::VertexSet& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.bits);
  }
};
