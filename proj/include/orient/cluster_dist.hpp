#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "orient/model.hpp"

namespace orient {

// Exact law of the cluster of a root vertex: undirected open cluster for edge
// percolation, out-cluster for the directed models. Keys are vertex bitmasks;
// every key contains the root and the values sum to exactly 1.
struct ClusterDistribution {
  int root = 0;
  std::string model_tag;
  std::map<std::uint64_t, Rational> probs;

  Rational total() const;
  // Probability of {cluster == u}; 0 for keys outside the support.
  Rational value(VertexSet u) const;
};

// Exact joint law of the clusters of two roots. For edge percolation the pair
// is (C_u, C_w); for the directed models it is (out-cluster of u, in-cluster
// of w) — that is the pairing for which the cross-model equalities hold on
// disjoint keys. All achievable keys are stored, disjoint or not.
struct JointClusterDistribution {
  int root_u = 0, root_w = 0;
  std::string model_tag;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> probs;

  Rational total() const;
  Rational value(VertexSet u, VertexSet w) const;
};

ClusterDistribution cluster_distribution_bruteforce(const Graph& g, const ModelSpec& model,
                                                    int root, StateCaps caps = {});
JointClusterDistribution joint_distribution_bruteforce(const Graph& g, const ModelSpec& model,
                                                       int root_u, int root_w,
                                                       StateCaps caps = {});

// Cluster probabilities for edge percolation computed by the
// deletion-and-split recursions instead of state enumeration:
//
//   P(C_u = U)        base U = {u}: q^deg(u). Otherwise pivot on the
//     lowest-index v in U\{u} and sum over the part U1 of U that u reaches
//     without v:  P(C_u = U1 in G\{v}) * (1 - q^r) * P(C_v = U\U1 in G\U1),
//     where r counts the edges joining U1 to v.
//
//   P(C_u = U, C_w = W)   (U, W disjoint) base {u},{w}: q^{deg(u)+deg(w)},
//     exponent lowered by 1 when the edge uw exists. Otherwise pivot in
//     U\{u} the same way (the single-cluster factor lives in G\(U1 ∪ W)),
//     or symmetrically in W\{w} once U = {u}.
//
// One instance memoizes across queries: all subproblems live on induced
// subgraphs of g, keyed by (alive-mask, root(s), target(s)). Holds the graph
// by reference; the graph must outlive the recursion object.
class ClusterRecursion {
 public:
  ClusterRecursion(const Graph& g, const Rational& p);

  // Requires root ∈ target. Exact P_{E^p}(C_root = target); by the model
  // equivalences this is also the directed out-cluster law value at the same
  // p (and the O value at p = 1/2).
  Rational cluster_probability(int root, VertexSet target);
  // Requires u ∈ target_u, w ∈ target_w, disjoint targets, u ≠ w.
  Rational joint_probability(int u, VertexSet target_u, int w, VertexSet target_w);

 private:
  struct SingleKey {
    std::uint64_t alive, target;
    int root;
    bool operator==(const SingleKey&) const = default;
  };
  struct JointKey {
    std::uint64_t alive, target_u, target_w;
    int u, w;
    bool operator==(const JointKey&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const SingleKey& k) const;
    std::size_t operator()(const JointKey& k) const;
  };

  Rational rec_single(std::uint64_t alive, int root, std::uint64_t target);
  Rational rec_joint(std::uint64_t alive, int u, std::uint64_t tu, int w, std::uint64_t tw);

  const Graph& g_;
  Rational p_, q_;
  std::vector<Rational> q_pow_, one_minus_q_pow_;
  std::unordered_map<SingleKey, Rational, KeyHash> memo_single_;
  std::unordered_map<JointKey, Rational, KeyHash> memo_joint_;
};

// One-shot conveniences over ClusterRecursion.
Rational cluster_distribution_recursive(const Graph& g, int root, VertexSet target,
                                        const Rational& p);
Rational joint_distribution_recursive(const Graph& g, int u, int w, VertexSet target_u,
                                      VertexSet target_w, const Rational& p);

// Key-by-key exact comparison of two laws (typically the same law computed
// under two models, or brute force vs. recursion).
struct LawDiff {
  std::uint64_t key_u = 0;
  std::uint64_t key_w = 0;  // unused for single-cluster laws
  Rational lhs, rhs;
};

struct DiffReport {
  std::string lhs_tag, rhs_tag;
  std::vector<LawDiff> diffs;
  bool equal() const { return diffs.empty(); }
};

// Compares on the union of supports, restricted to keys passing key_filter
// (null = all keys). Throws std::invalid_argument when roots differ.
DiffReport compare_distributions(const ClusterDistribution& lhs, const ClusterDistribution& rhs,
                                 const std::function<bool(std::uint64_t)>& key_filter = nullptr);
DiffReport compare_distributions(
    const JointClusterDistribution& lhs, const JointClusterDistribution& rhs,
    const std::function<bool(std::uint64_t, std::uint64_t)>& key_filter = nullptr);

// The Lemma-2 domain restriction: keep only keys with U ∩ W = ∅.
inline bool disjoint_key_filter(std::uint64_t u, std::uint64_t w) { return (u & w) == 0; }

}  // namespace orient
