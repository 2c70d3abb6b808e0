#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "orient/graph.hpp"
#include "orient/rational.hpp"

namespace orient {

// The four per-edge randomization models.
//
//   EdgePercolation (E^p): each edge kept with probability p, else absent.
//     A kept edge is traversable both ways.
//   RandomOrientation (O): every edge present, oriented one way or the other
//     with probability 1/2 each.
//   DirectedPercolation (D^p): each edge replaced by two opposite arcs, each
//     kept independently with probability p.
//   Mixed(p', p1): each edge independently is a percolation edge (prob p')
//     kept undirected with probability p1 / absent with 1-p1, or else (prob
//     1-p') oriented one way or the other with probability 1/2 each.
enum class ModelKind { EdgePercolation, RandomOrientation, DirectedPercolation, Mixed };

struct ModelSpec {
  ModelKind kind = ModelKind::RandomOrientation;
  Rational p;        // E^p / D^p retention probability
  Rational p_prime;  // Mixed: probability an edge is a percolation edge
  Rational p1;       // Mixed: retention probability for percolation edges

  static ModelSpec edge_percolation(const Rational& p);
  static ModelSpec random_orientation();
  static ModelSpec directed_percolation(const Rational& p);
  static ModelSpec mixed(const Rational& p_prime, const Rational& p1);

  // 2 for EdgePercolation / RandomOrientation, 4 for the others.
  int states_per_edge() const;
  // Canonical CLI spelling: "e:p=1/2", "o", "d:p=1/3", "mixed:pp=1/3,p1=1/2".
  std::string tag() const;
};

// Inverse of ModelSpec::tag(). Throws std::invalid_argument on malformed
// strings or parameters outside [0, 1].
ModelSpec parse_model_spec(const std::string& text);

// The split of D^p into an equivalent Mixed model: an edge of D^p has both or
// neither arc with probability p' = p^2 + q^2, and exactly one arc (either
// with equal chance) otherwise; conditioned on "both or neither", both occur
// with probability p1 = p^2 / p'. Returns {p', p1}.
std::pair<Rational, Rational> dp_split_parameters(const Rational& p);

// Per-edge state codes, one byte per edge in insertion order. For an edge
// inserted as (a, b), "forward" means the arc a->b.
//   EdgePercolation:     0 absent, 1 present (present = arcs both ways)
//   RandomOrientation:   0 forward, 1 backward
//   DirectedPercolation: bit 0 = forward arc present, bit 1 = backward arc
//   Mixed:               0 absent, 1 present undirected, 2 forward, 3 backward
namespace edge_state {
inline constexpr std::uint8_t kAbsent = 0;
inline constexpr std::uint8_t kPresent = 1;
inline constexpr std::uint8_t kForward = 0;
inline constexpr std::uint8_t kBackward = 1;
inline constexpr std::uint8_t kMixedAbsent = 0;
inline constexpr std::uint8_t kMixedUndirected = 1;
inline constexpr std::uint8_t kMixedForward = 2;
inline constexpr std::uint8_t kMixedBackward = 3;
}  // namespace edge_state

// One realized world: a state for every edge plus its exact probability.
// Sampled states carry weight 1 (the weight is only meaningful when the state
// came from exhaustive enumeration).
struct WorldState {
  ModelKind kind = ModelKind::RandomOrientation;
  std::vector<std::uint8_t> edge_states;
  Rational weight;
};

struct StateCaps {
  // Refuse enumerations larger than this (2^24 = 4^12 by default).
  std::uint64_t max_states = std::uint64_t(1) << 24;
};

// states_per_edge^m, with an overflow guard (throws std::overflow_error past
// 2^62 states).
std::uint64_t state_count(const Graph& g, const ModelSpec& model);

// Exhaustive iteration over all states of a model on a graph, in a fixed
// deterministic order: edge states form a base-2 or base-4 counter, edge 0
// least significant. Adjacency masks and the probability-weight class of the
// current state are maintained incrementally, so a full sweep with cluster
// queries costs O(states * cluster size) with no rational arithmetic.
//
// States fall into few weight classes (e.g. #present edges for E^p); weights
// are precomputed per class, so exact probabilities come out by attaching
// integer counts to classes. Holds the graph by reference; the graph must
// outlive the enumerator.
class StateEnumerator {
 public:
  StateEnumerator(const Graph& g, const ModelSpec& model, StateCaps caps = {});

  std::uint64_t size() const { return size_; }
  std::uint64_t index() const { return index_; }
  bool done() const { return done_; }
  void advance();
  void reset();

  const std::vector<std::uint8_t>& digits() const { return digits_; }
  // Arc mask leaving / entering v under the current state.
  std::uint64_t out_mask(int v) const { return out_[v]; }
  std::uint64_t in_mask(int v) const { return in_[v]; }
  // Vertices reachable from u / that reach u (directed closure; includes u).
  VertexSet reach_from(int u) const;
  VertexSet reach_into(int u) const;

  // Weight-class machinery. sig_index() identifies the probability class of
  // the current state; class_weight(s) is the exact probability of any state
  // in class s.
  int sig_index() const;
  int sig_count() const { return static_cast<int>(sig_weights_.size()); }
  const Rational& class_weight(int sig) const { return sig_weights_[sig]; }
  const Rational& weight() const { return sig_weights_[sig_index()]; }

  // Materializes the current state (weight filled in).
  WorldState world_state() const;

 private:
  void add_arcs(int e, std::uint8_t d);
  void remove_arcs(int e, std::uint8_t d);
  void build_weight_table();

  const Graph& g_;
  ModelSpec model_;
  int base_;
  std::uint64_t size_ = 1;
  std::uint64_t index_ = 0;
  bool done_ = false;
  std::vector<std::uint8_t> digits_;
  std::vector<std::uint64_t> out_, in_;
  int count_a_ = 0;  // E/D: kept edges/arcs; Mixed: absent edges
  int count_b_ = 0;  // Mixed: undirected-present edges
  std::vector<Rational> sig_weights_;
};

// Directed closure on a materialized state (BFS over arc masks).
VertexSet out_cluster(const Graph& g, const WorldState& st, int u);
VertexSet in_cluster(const Graph& g, const WorldState& st, int u);

// An event, as a predicate over realized worlds. Implementations must depend
// only on the edge states, never on WorldState::weight.
using ReachPredicate = std::function<bool(const Graph&, const WorldState&)>;

// Calls fn for every state, exhaustively and in enumeration order.
void enumerate_states(const Graph& g, const ModelSpec& model,
                      const std::function<void(const WorldState&)>& fn,
                      StateCaps caps = {});

// Exact probability of the event under the model, by exhaustive enumeration.
Rational event_probability(const Graph& g, const ModelSpec& model,
                           const ReachPredicate& event, StateCaps caps = {});

}  // namespace orient
