#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orient/model.hpp"

namespace orient {

// An s-out-cluster increasing event, stored as an upward-closed family of
// vertex sets: the event holds exactly when the out-cluster of the root lies
// in the family. The family is kept by its minimal generators, which form an
// antichain; membership is "some generator is contained in the cluster".
// Such events are monotone in the out-cluster by construction, which is the
// hypothesis the oriented correlation theorems need.
class UpwardClosedFamily {
 public:
  // Starts with no generators: the impossible event.
  explicit UpwardClosedFamily(int root);

  int root() const { return root_; }
  bool impossible() const { return generators_.empty(); }
  // Minimal generators, deterministically ordered by mask value.
  const std::vector<VertexSet>& generators() const { return generators_; }

  // The root is implicitly added to the generator. Supersets of existing
  // generators are absorbed; existing generators that become redundant are
  // dropped, so the antichain invariant always holds.
  void add_generator(VertexSet gen);

  bool contains(VertexSet cluster) const;

  // Both events must share the root. Conjunction generates from pairwise
  // unions; disjunction merges the generator lists.
  UpwardClosedFamily conjunction(const UpwardClosedFamily& other) const;
  UpwardClosedFamily disjunction(const UpwardClosedFamily& other) const;

 private:
  int root_;
  std::vector<VertexSet> generators_;
};

// The event "targets ⊆ out-cluster of s" (one generator {s} ∪ targets).
// targets = ∅ (or {s}) gives the always-true event.
UpwardClosedFamily make_reachability_family(int s, VertexSet targets);

// Predicate form: true iff the out-cluster of the family's root belongs to
// the family.
ReachPredicate family_event_predicate(const UpwardClosedFamily& family);

// The event "out-cluster of s avoids x". Rejects s ∈ x (the event would be
// identically false; every caller that hits this has a binding bug).
ReachPredicate avoidance_predicate(int s, VertexSet x);

// Convenience predicates.
ReachPredicate pred_true();
ReachPredicate pred_and(ReachPredicate a, ReachPredicate b);
ReachPredicate reach_predicate(int s, VertexSet targets);

// A classical increasing event for edge percolation: upward-closed family of
// edge-index sets, read on the present-edge set of a state.
class EdgeUpwardFamily {
 public:
  EdgeUpwardFamily() = default;  // impossible event
  static EdgeUpwardFamily always_true();

  bool impossible() const { return generators_.empty(); }
  const std::vector<std::uint64_t>& generators() const { return generators_; }
  void add_generator(std::uint64_t edge_mask);
  bool contains(std::uint64_t present_mask) const;

 private:
  std::vector<std::uint64_t> generators_;
};

// Predicate over EdgePercolation states only (throws on other model kinds).
ReachPredicate edge_family_predicate(const EdgeUpwardFamily& family);

// Exact conditional correlation data for a pair of events.
struct CorrelationReport {
  Rational p_a, p_b, p_ab;  // conditional probabilities
  Rational p_cond;          // probability of the conditioning event
  Rational covariance;      // p_ab - p_a * p_b
  int sign = 0;             // -1 / 0 / +1
};

// Throws std::domain_error when the conditioning event has probability zero
// (never divides silently). Use pred_true() for unconditional reports.
CorrelationReport correlation_report(const Graph& g, const ModelSpec& model,
                                     const ReachPredicate& a, const ReachPredicate& b,
                                     const ReachPredicate& cond, StateCaps caps = {});

// Exhaustive check that a predicate is monotone in the out-cluster of s under
// model O: for every state pair with cluster(w) ⊇ cluster(w'), pred(w')
// implies pred(w). Quadratic in the state count, hence the strict edge cap.
// The witness indices identify the violating enumeration-order pair when the
// check fails.
struct IncreasingCheck {
  bool increasing = true;
  std::uint64_t witness_larger = 0;   // pred false here
  std::uint64_t witness_smaller = 0;  // pred true here, cluster ⊆ the larger's
};
IncreasingCheck is_out_cluster_increasing(const Graph& g, int s, const ReachPredicate& pred,
                                          int max_edges = 12);

// Event-string grammar for the CLI and Monte Carlo:
//   "true"                   always-true event
//   "reach:s->a,b"           targets a and b both reachable from s
//   "avoid:s-|t,u"           out-cluster of s avoids t and u
//   "and(E1,E2,...)"         conjunction (nesting allowed)
ReachPredicate parse_event(const Graph& g, const std::string& text);

}  // namespace orient
