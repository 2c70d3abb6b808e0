#include "orient/cluster_dist.hpp"

#include <bit>
#include <stdexcept>

namespace orient {

namespace {

std::uint64_t bit(int v) { return std::uint64_t(1) << v; }

// Dense counting is worth it when key-space * weight-classes stays small.
constexpr std::uint64_t kDenseLimit = std::uint64_t(1) << 22;

}  // namespace

Rational ClusterDistribution::total() const {
  Rational t(0);
  for (const auto& [k, v] : probs) t += v;
  return t;
}

Rational ClusterDistribution::value(VertexSet u) const {
  auto it = probs.find(u.bits);
  return it == probs.end() ? Rational(0) : it->second;
}

Rational JointClusterDistribution::total() const {
  Rational t(0);
  for (const auto& [k, v] : probs) t += v;
  return t;
}

Rational JointClusterDistribution::value(VertexSet u, VertexSet w) const {
  auto it = probs.find({u.bits, w.bits});
  return it == probs.end() ? Rational(0) : it->second;
}

ClusterDistribution cluster_distribution_bruteforce(const Graph& g, const ModelSpec& model,
                                                    int root, StateCaps caps) {
  if (root < 0 || root >= g.n())
    throw std::invalid_argument("cluster_distribution: root out of range");
  StateEnumerator en(g, model, caps);
  const int sc = en.sig_count();
  ClusterDistribution dist;
  dist.root = root;
  dist.model_tag = model.tag();

  const std::uint64_t key_space = std::uint64_t(1) << g.n();
  if (g.n() < 22 && key_space * sc <= kDenseLimit) {
    std::vector<std::uint64_t> counts(key_space * sc, 0);
    for (; !en.done(); en.advance()) ++counts[en.reach_from(root).bits * sc + en.sig_index()];
    for (std::uint64_t key = 0; key < key_space; ++key) {
      Rational prob(0);
      for (int s = 0; s < sc; ++s)
        if (auto c = counts[key * sc + s]; c != 0)
          prob += Rational(static_cast<long>(c)) * en.class_weight(s);
      if (!prob.is_zero()) dist.probs.emplace(key, prob);
    }
  } else {
    std::map<std::uint64_t, std::vector<std::uint64_t>> counts;
    for (; !en.done(); en.advance()) {
      auto& slot = counts[en.reach_from(root).bits];
      if (slot.empty()) slot.assign(sc, 0);
      ++slot[en.sig_index()];
    }
    for (const auto& [key, per_sig] : counts) {
      Rational prob(0);
      for (int s = 0; s < sc; ++s)
        if (per_sig[s] != 0) prob += Rational(static_cast<long>(per_sig[s])) * en.class_weight(s);
      if (!prob.is_zero()) dist.probs.emplace(key, prob);
    }
  }
  return dist;
}

JointClusterDistribution joint_distribution_bruteforce(const Graph& g, const ModelSpec& model,
                                                       int root_u, int root_w, StateCaps caps) {
  if (root_u < 0 || root_u >= g.n() || root_w < 0 || root_w >= g.n())
    throw std::invalid_argument("joint_distribution: root out of range");
  if (root_u == root_w) throw std::invalid_argument("joint_distribution: roots must differ");
  StateEnumerator en(g, model, caps);
  const int sc = en.sig_count();
  JointClusterDistribution dist;
  dist.root_u = root_u;
  dist.root_w = root_w;
  dist.model_tag = model.tag();

  const int n = g.n();
  const std::uint64_t key_space = n < 16 ? (std::uint64_t(1) << (2 * n)) : 0;
  if (key_space != 0 && key_space * sc <= kDenseLimit) {
    std::vector<std::uint64_t> counts(key_space * sc, 0);
    for (; !en.done(); en.advance()) {
      std::uint64_t key = (en.reach_from(root_u).bits << n) | en.reach_into(root_w).bits;
      ++counts[key * sc + en.sig_index()];
    }
    const std::uint64_t low_mask = (std::uint64_t(1) << n) - 1;
    for (std::uint64_t key = 0; key < key_space; ++key) {
      Rational prob(0);
      for (int s = 0; s < sc; ++s)
        if (auto c = counts[key * sc + s]; c != 0)
          prob += Rational(static_cast<long>(c)) * en.class_weight(s);
      if (!prob.is_zero()) dist.probs.emplace(std::make_pair(key >> n, key & low_mask), prob);
    }
  } else {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::uint64_t>> counts;
    for (; !en.done(); en.advance()) {
      auto& slot = counts[{en.reach_from(root_u).bits, en.reach_into(root_w).bits}];
      if (slot.empty()) slot.assign(sc, 0);
      ++slot[en.sig_index()];
    }
    for (const auto& [key, per_sig] : counts) {
      Rational prob(0);
      for (int s = 0; s < sc; ++s)
        if (per_sig[s] != 0) prob += Rational(static_cast<long>(per_sig[s])) * en.class_weight(s);
      if (!prob.is_zero()) dist.probs.emplace(key, prob);
    }
  }
  return dist;
}

// --- recursion ---

std::size_t ClusterRecursion::KeyHash::operator()(const SingleKey& k) const {
  std::uint64_t h = k.alive * 0x9e3779b97f4a7c15ull;
  h ^= (k.target + 0xbf58476d1ce4e5b9ull) * 0x94d049bb133111ebull;
  h ^= h >> 31;
  return static_cast<std::size_t>(h * 31 + static_cast<std::uint64_t>(k.root));
}

std::size_t ClusterRecursion::KeyHash::operator()(const JointKey& k) const {
  std::uint64_t h = k.alive * 0x9e3779b97f4a7c15ull;
  h ^= (k.target_u + 0xbf58476d1ce4e5b9ull) * 0x94d049bb133111ebull;
  h ^= (k.target_w + 0x2545f4914f6cdd1dull) * 0xff51afd7ed558ccdull;
  h ^= h >> 29;
  return static_cast<std::size_t>(h * 961 + std::uint64_t(k.u) * 31 + std::uint64_t(k.w));
}

ClusterRecursion::ClusterRecursion(const Graph& g, const Rational& p) : g_(g), p_(p) {
  if (!is_probability(p)) throw std::invalid_argument("cluster recursion: p not in [0, 1]");
  q_ = complement(p);
  int max_exp = 2 * g.n() + 2;
  q_pow_.resize(max_exp + 1);
  one_minus_q_pow_.resize(max_exp + 1);
  q_pow_[0] = Rational(1);
  for (int k = 1; k <= max_exp; ++k) q_pow_[k] = q_pow_[k - 1] * q_;
  for (int k = 0; k <= max_exp; ++k) one_minus_q_pow_[k] = Rational(1) - q_pow_[k];
}

Rational ClusterRecursion::cluster_probability(int root, VertexSet target) {
  if (root < 0 || root >= g_.n() || !target.has(root))
    throw std::invalid_argument("cluster recursion: root must lie in the target set");
  if (!target.subset_of(VertexSet::full(g_.n())))
    throw std::invalid_argument("cluster recursion: target outside the graph");
  return rec_single(VertexSet::full(g_.n()).bits, root, target.bits);
}

Rational ClusterRecursion::joint_probability(int u, VertexSet target_u, int w,
                                             VertexSet target_w) {
  if (u < 0 || u >= g_.n() || w < 0 || w >= g_.n() || u == w)
    throw std::invalid_argument("cluster recursion: need two distinct roots");
  if (!target_u.has(u) || !target_w.has(w))
    throw std::invalid_argument("cluster recursion: each root must lie in its target set");
  if (target_u.intersects(target_w))
    throw std::invalid_argument("cluster recursion: joint targets must be disjoint");
  VertexSet all = VertexSet::full(g_.n());
  if (!target_u.subset_of(all) || !target_w.subset_of(all))
    throw std::invalid_argument("cluster recursion: target outside the graph");
  return rec_joint(all.bits, u, target_u.bits, w, target_w.bits);
}

Rational ClusterRecursion::rec_single(std::uint64_t alive, int root, std::uint64_t target) {
  std::uint64_t rest = target & ~bit(root);
  if (rest == 0) {
    // Isolation: every live edge at the root is absent.
    return q_pow_[std::popcount(g_.adjacency(root) & alive)];
  }
  SingleKey key{alive, target, root};
  if (auto it = memo_single_.find(key); it != memo_single_.end()) return it->second;

  int v = std::countr_zero(rest);
  std::uint64_t others = target & ~bit(v) & ~bit(root);
  Rational total(0);
  // All ways to split: U1 is the part of the cluster that survives deleting
  // the pivot; the rest hangs off the pivot.
  std::uint64_t sub = others;
  while (true) {
    std::uint64_t u1 = sub | bit(root);
    int r = std::popcount(g_.adjacency(v) & u1);
    if (r > 0) {
      Rational a = rec_single(alive & ~bit(v), root, u1);
      if (!a.is_zero()) {
        Rational c = rec_single(alive & ~u1, v, target & ~u1);
        if (!c.is_zero()) total += a * one_minus_q_pow_[r] * c;
      }
    }
    if (sub == 0) break;
    sub = (sub - 1) & others;
  }
  memo_single_.emplace(key, total);
  return total;
}

Rational ClusterRecursion::rec_joint(std::uint64_t alive, int u, std::uint64_t tu, int w,
                                     std::uint64_t tw) {
  if (tu == bit(u) && tw == bit(w)) {
    int deg = std::popcount(g_.adjacency(u) & alive) + std::popcount(g_.adjacency(w) & alive);
    if ((g_.adjacency(u) >> w) & 1) --deg;  // the shared edge closes once
    return q_pow_[deg];
  }
  JointKey key{alive, tu, tw, u, w};
  if (auto it = memo_joint_.find(key); it != memo_joint_.end()) return it->second;

  Rational total(0);
  if (tu != bit(u)) {
    int v = std::countr_zero(tu & ~bit(u));
    std::uint64_t others = tu & ~bit(v) & ~bit(u);
    std::uint64_t sub = others;
    while (true) {
      std::uint64_t u1 = sub | bit(u);
      int r = std::popcount(g_.adjacency(v) & u1);
      if (r > 0) {
        Rational a = rec_joint(alive & ~bit(v), u, u1, w, tw);
        if (!a.is_zero()) {
          Rational c = rec_single(alive & ~u1 & ~tw, v, tu & ~u1);
          // Edges between the pivot and the second cluster sit outside both
          // sub-domains, yet must be absent for the clusters to stay apart.
          if (!c.is_zero())
            total += a * one_minus_q_pow_[r] * c *
                     q_pow_[std::popcount(g_.adjacency(v) & tw)];
        }
      }
      if (sub == 0) break;
      sub = (sub - 1) & others;
    }
  } else {
    // U is a bare root; pivot inside W symmetrically.
    int v = std::countr_zero(tw & ~bit(w));
    std::uint64_t others = tw & ~bit(v) & ~bit(w);
    std::uint64_t sub = others;
    while (true) {
      std::uint64_t w1 = sub | bit(w);
      int r = std::popcount(g_.adjacency(v) & w1);
      if (r > 0) {
        Rational a = rec_joint(alive & ~bit(v), u, tu, w, w1);
        if (!a.is_zero()) {
          Rational c = rec_single(alive & ~w1 & ~tu, v, tw & ~w1);
          if (!c.is_zero())
            total += a * one_minus_q_pow_[r] * c *
                     q_pow_[std::popcount(g_.adjacency(v) & tu)];
        }
      }
      if (sub == 0) break;
      sub = (sub - 1) & others;
    }
  }
  memo_joint_.emplace(key, total);
  return total;
}

Rational cluster_distribution_recursive(const Graph& g, int root, VertexSet target,
                                        const Rational& p) {
  ClusterRecursion rec(g, p);
  return rec.cluster_probability(root, target);
}

Rational joint_distribution_recursive(const Graph& g, int u, int w, VertexSet target_u,
                                      VertexSet target_w, const Rational& p) {
  ClusterRecursion rec(g, p);
  return rec.joint_probability(u, target_u, w, target_w);
}

DiffReport compare_distributions(const ClusterDistribution& lhs, const ClusterDistribution& rhs,
                                 const std::function<bool(std::uint64_t)>& key_filter) {
  if (lhs.root != rhs.root)
    throw std::invalid_argument("compare_distributions: root mismatch");
  DiffReport report;
  report.lhs_tag = lhs.model_tag;
  report.rhs_tag = rhs.model_tag;
  std::map<std::uint64_t, bool> keys;
  for (const auto& [k, v] : lhs.probs) keys[k] = true;
  for (const auto& [k, v] : rhs.probs) keys[k] = true;
  for (const auto& [k, unused] : keys) {
    if (key_filter && !key_filter(k)) continue;
    Rational a = lhs.value(VertexSet(k)), b = rhs.value(VertexSet(k));
    if (a != b) report.diffs.push_back({k, 0, a, b});
  }
  return report;
}

DiffReport compare_distributions(const JointClusterDistribution& lhs,
                                 const JointClusterDistribution& rhs,
                                 const std::function<bool(std::uint64_t, std::uint64_t)>& key_filter) {
  if (lhs.root_u != rhs.root_u || lhs.root_w != rhs.root_w)
    throw std::invalid_argument("compare_distributions: root mismatch");
  DiffReport report;
  report.lhs_tag = lhs.model_tag;
  report.rhs_tag = rhs.model_tag;
  std::map<std::pair<std::uint64_t, std::uint64_t>, bool> keys;
  for (const auto& [k, v] : lhs.probs) keys[k] = true;
  for (const auto& [k, v] : rhs.probs) keys[k] = true;
  for (const auto& [k, unused] : keys) {
    if (key_filter && !key_filter(k.first, k.second)) continue;
    Rational a = lhs.value(VertexSet(k.first), VertexSet(k.second));
    Rational b = rhs.value(VertexSet(k.first), VertexSet(k.second));
    if (a != b) report.diffs.push_back({k.first, k.second, a, b});
  }
  return report;
}

}  // namespace orient
