#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orient/cluster_dist.hpp"
#include "orient/events.hpp"

namespace orient {

// One key-level discrepancy of a law-equality check (vertex sets rendered as
// name lists so reports need no graph context).
struct KeyDiff {
  std::vector<std::string> key_u;
  std::vector<std::string> key_w;  // joint laws only
  Rational lhs, rhs;
};

// Outcome of one exact check. For inequalities lhs/rhs are the two sides and
// margin is the slack in the inequality's own direction (margin >= 0 exactly
// when holds). Law-equality checks report lhs = total absolute discrepancy,
// rhs = 0, with the differing keys in diffs. conjecture marks checks whose
// failure is a mathematical finding (bunkbed) rather than a software defect.
struct InequalityReport {
  std::string name;
  std::string instance;
  Rational lhs, rhs;
  bool holds = true;
  Rational margin;
  bool conjecture = false;
  std::string note;
  std::vector<KeyDiff> diffs;
};

// --- per-claim verifiers ---

// Cluster-law equalities for one root: at p = 1/2 compares the three
// brute-force laws pairwise (edge percolation, orientation, directed
// percolation); at other p compares edge vs. directed percolation. Always
// cross-checks the recursive evaluator against the edge-percolation law on
// every key containing the root.
std::vector<InequalityReport> verify_lemma1(const Graph& g, int u, const Rational& p,
                                            StateCaps caps = {});

// Joint-law equalities on disjoint keys for an ordered root pair, plus the
// joint recursion cross-checked on every disjoint key pair.
std::vector<InequalityReport> verify_lemma2(const Graph& g, int u, int w, const Rational& p,
                                            StateCaps caps = {});

// P(A)P(B) <= P(A and B) in the orientation model for two out-cluster
// increasing events with common root s.
InequalityReport verify_oriented_harris(const Graph& g, int s, const UpwardClosedFamily& a,
                                        const UpwardClosedFamily& b, StateCaps caps = {});

// P(A, C_s avoids X) P(B, C_s avoids Y) <=
//   P(A, B, C_s avoids X∩Y) P(C_s avoids X∪Y), in the orientation model.
InequalityReport verify_oriented_vdbhk(const Graph& g, int s, const UpwardClosedFamily& a,
                                       const UpwardClosedFamily& b, VertexSet x, VertexSet y,
                                       StateCaps caps = {});

// The three reachability-correlation inequalities in the orientation model:
//   eq1: P(s→a)P(s→b) <= P(s→a, s→b)
//   eq2: the same conditioned on s not reaching t
//   eq3: P(a→t | s↛t) P(s→b | s↛t) >= P(a→t, s→b | s↛t)
// Throws std::domain_error when P(s↛t) = 0 (e.g. t = s).
std::vector<InequalityReport> verify_corollaries(const Graph& g, int s, int a, int b, int t,
                                                 StateCaps caps = {});

// Classical Harris inequality for increasing edge events under E^p.
InequalityReport verify_harris_classical(const Graph& g, const Rational& p,
                                         const EdgeUpwardFamily& a, const EdgeUpwardFamily& b,
                                         StateCaps caps = {});

// Builds the double cover of g and compares P(reaching the same-level copy of
// v from (u,0)) against the other-level copy, under E^p. At p = 1/2 both
// sides are additionally cross-checked against the orientation model via the
// cluster-law equality; a cross-check mismatch throws std::logic_error (it
// would contradict a theorem, i.e. flag a defect). The returned report has
// conjecture = true: a violation is a finding, not a defect.
InequalityReport bunkbed_check(const Graph& g, int u, int v, const Rational& p,
                               StateCaps caps = {});

// Semi-directed model identities: (i) the out-cluster law of Mixed(p', 1/2)
// equals the orientation law; (ii) Mixed(dp_split_parameters(p)) equals the
// D^p law.
std::vector<InequalityReport> verify_mixed_model(const Graph& g, int u, const Rational& p_prime,
                                                 const Rational& p, StateCaps caps = {});

// --- sign search ---

// Which event pair the sweep measures in model O:
//   AToS:           E1 = {a→s},        E2 = {s→b}   (bindings s, a, b)
//   AInInClusterT:  E1 = {a ∈ ←C_t},   E2 = {b ∈ →C_s}  (bindings s, t, a, b)
enum class SignSearchMode { AToS, AInInClusterT };

SignSearchMode parse_sign_search_mode(const std::string& text);
std::string to_string(SignSearchMode mode);

struct SignFinding {
  int n = 0;
  std::uint64_t edge_mask = 0;   // over the lexicographic vertex-pair order
  std::string graph_desc;        // e.g. "v0-v1 v0-v2"
  std::string mode;
  bool conditioned = false;
  std::string s, t, a, b;        // bound vertex names; t empty in AToS mode
  Rational covariance;
  int sign = 0;                  // strictly -1 or +1 in findings
};

struct SignSearchResult {
  std::vector<SignFinding> findings;  // strict signs only, deterministic order
  std::uint64_t instances = 0;        // bindings evaluated (skips included)
  std::uint64_t skipped = 0;          // zero-probability conditioning skips
};

// Sweeps every labeled graph on n vertices (connected or not) and every
// vertex binding; n capped at 5. conditioned (condition on s↛t) is only
// meaningful for AInInClusterT and rejected otherwise.
SignSearchResult search_correlation_signs(int n, SignSearchMode mode, bool conditioned,
                                          int threads = 1);

// --- exhaustive sweep drivers ---

struct SweepSummary {
  std::uint64_t graphs = 0;
  std::uint64_t instances = 0;
  std::uint64_t held = 0;
  std::uint64_t violated = 0;
  std::uint64_t skipped = 0;
  std::vector<InequalityReport> violations;  // only the failures, in sweep order
};

// Lemma-1 law equalities over all connected labeled graphs with n <= max_n
// (and m <= max_m when max_m >= 0), every root, every p in ps.
SweepSummary sweep_lemma1_laws(int max_n, int max_m, const std::vector<Rational>& ps,
                               StateCaps caps = {});

// Lemma-2 joint-law equalities over all connected graphs n <= max_n, all
// ordered root pairs, every p in ps.
SweepSummary sweep_lemma2_joint(int max_n, const std::vector<Rational>& ps, StateCaps caps = {});

// eq1/eq2/eq3 over all connected graphs (n <= max_n, m <= max_m) and all
// vertex bindings; zero-probability conditionings are skipped and counted.
SweepSummary sweep_corollaries(int max_n, int max_m, int threads = 1);

// Oriented Harris + vdBHK over all connected graphs n <= max_n, singleton
// reachability pairs, and all avoidance sets X, Y of size <= max_avoid_size.
SweepSummary sweep_oriented_families(int max_n, int max_avoid_size, int threads = 1);

// Mixed-model law identities over all connected graphs n <= max_n and roots:
// Mixed(p', 1/2) vs O for each p' in p_primes, and Mixed(dp_split(p)) vs D^p
// for each p in dp_ps.
SweepSummary sweep_mixed(int max_n, const std::vector<Rational>& p_primes,
                         const std::vector<Rational>& dp_ps, StateCaps caps = {});

// Bunkbed inequality over all connected graphs n <= max_n, all ordered (u,v)
// pairs, every p in ps.
SweepSummary sweep_bunkbed(int max_n, const std::vector<Rational>& ps, StateCaps caps = {});

// Classical Harris over all labeled graphs n <= max_n (disconnected included)
// and all ordered singleton-edge event pairs, every p in ps.
SweepSummary sweep_harris_classical(int max_n, const std::vector<Rational>& ps,
                                    StateCaps caps = {});

}  // namespace orient
