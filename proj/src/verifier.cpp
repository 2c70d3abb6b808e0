#include "orient/verifier.hpp"

#include <atomic>
#include <bit>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace orient {

namespace {

std::uint64_t bit(int v) { return std::uint64_t(1) << v; }

Rational rational_abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::vector<std::string> names_of(const Graph& g, std::uint64_t mask) {
  std::vector<std::string> out;
  for (int v : VertexSet(mask)) out.push_back(g.name(v));
  return out;
}

std::string hex_mask(std::uint64_t mask) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(mask));
  return buf;
}

std::string graph_edge_desc(const Graph& g) {
  std::string out;
  for (int e = 0; e < g.m(); ++e) {
    auto [a, b] = g.edge(e);
    if (!out.empty()) out += ' ';
    out += g.name(a) + "-" + g.name(b);
  }
  return out;
}

// Law-equality outcome as an InequalityReport: lhs = total discrepancy vs 0.
InequalityReport equality_report(const std::string& name, const std::string& instance,
                                 const DiffReport& diff, const Graph& g, bool joint) {
  InequalityReport rep;
  rep.name = name;
  rep.instance = instance;
  rep.note = diff.lhs_tag + " vs " + diff.rhs_tag;
  Rational disc(0);
  for (const LawDiff& d : diff.diffs) {
    disc += rational_abs(d.lhs - d.rhs);
    KeyDiff kd;
    kd.key_u = names_of(g, d.key_u);
    if (joint) kd.key_w = names_of(g, d.key_w);
    kd.lhs = d.lhs;
    kd.rhs = d.rhs;
    rep.diffs.push_back(std::move(kd));
  }
  rep.lhs = disc;
  rep.rhs = Rational(0);
  rep.holds = diff.diffs.empty();
  rep.margin = -disc;
  return rep;
}

// For every subset `sub` of `pool` (including 0 and pool itself) calls fn(sub).
template <class Fn>
void for_each_submask(std::uint64_t pool, const Fn& fn) {
  std::uint64_t sub = pool;
  while (true) {
    fn(sub);
    if (sub == 0) break;
    sub = (sub - 1) & pool;
  }
}

template <class Fn>
void parallel_for_indices(std::size_t count, int threads, const Fn& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) fn(i);
    });
  for (auto& th : pool) th.join();
}

void tally(SweepSummary& sum, const InequalityReport& rep) {
  ++sum.instances;
  if (rep.holds) ++sum.held;
  else {
    ++sum.violated;
    sum.violations.push_back(rep);
  }
}

void tally_all(SweepSummary& sum, const std::vector<InequalityReport>& reps) {
  for (const InequalityReport& r : reps) tally(sum, r);
}

}  // namespace

std::vector<InequalityReport> verify_lemma1(const Graph& g, int u, const Rational& p,
                                            StateCaps caps) {
  if (u < 0 || u >= g.n()) throw std::invalid_argument("verify_lemma1: root out of range");
  const Rational half(1, 2);
  std::string inst = "u=" + g.name(u) + " p=" + p.str();
  std::vector<InequalityReport> out;

  ClusterDistribution law_e = cluster_distribution_bruteforce(g, ModelSpec::edge_percolation(p), u, caps);
  ClusterDistribution law_d =
      cluster_distribution_bruteforce(g, ModelSpec::directed_percolation(p), u, caps);
  if (p == half) {
    ClusterDistribution law_o =
        cluster_distribution_bruteforce(g, ModelSpec::random_orientation(), u, caps);
    out.push_back(equality_report("lemma1.e-vs-o", inst, compare_distributions(law_e, law_o), g, false));
    out.push_back(equality_report("lemma1.e-vs-d", inst, compare_distributions(law_e, law_d), g, false));
    out.push_back(equality_report("lemma1.o-vs-d", inst, compare_distributions(law_o, law_d), g, false));
  } else {
    out.push_back(equality_report("lemma1.e-vs-d", inst, compare_distributions(law_e, law_d), g, false));
  }

  // Recursive evaluator vs. the brute-force law, on every key containing the
  // root (structural zeros included) when the key space is small, else on the
  // brute-force support.
  ClusterRecursion rec(g, p);
  DiffReport rd;
  rd.lhs_tag = "recursion:p=" + p.str();
  rd.rhs_tag = law_e.model_tag;
  auto check_key = [&](std::uint64_t key) {
    Rational lhs = rec.cluster_probability(u, VertexSet(key));
    Rational rhs = law_e.value(VertexSet(key));
    if (lhs != rhs) rd.diffs.push_back({key, 0, lhs, rhs});
  };
  if (g.n() <= 16) {
    for_each_submask(VertexSet::full(g.n()).bits & ~bit(u),
                     [&](std::uint64_t sub) { check_key(sub | bit(u)); });
  } else {
    for (const auto& [key, unused] : law_e.probs) check_key(key);
  }
  out.push_back(equality_report("lemma1.recursion", inst, rd, g, false));
  return out;
}

std::vector<InequalityReport> verify_lemma2(const Graph& g, int u, int w, const Rational& p,
                                            StateCaps caps) {
  if (u < 0 || u >= g.n() || w < 0 || w >= g.n())
    throw std::invalid_argument("verify_lemma2: root out of range");
  if (u == w) throw std::invalid_argument("verify_lemma2: roots must differ");
  const Rational half(1, 2);
  std::string inst = "u=" + g.name(u) + " w=" + g.name(w) + " p=" + p.str();
  std::vector<InequalityReport> out;

  JointClusterDistribution law_e =
      joint_distribution_bruteforce(g, ModelSpec::edge_percolation(p), u, w, caps);
  JointClusterDistribution law_d =
      joint_distribution_bruteforce(g, ModelSpec::directed_percolation(p), u, w, caps);
  if (p == half) {
    JointClusterDistribution law_o =
        joint_distribution_bruteforce(g, ModelSpec::random_orientation(), u, w, caps);
    out.push_back(equality_report("lemma2.e-vs-o", inst,
                                  compare_distributions(law_e, law_o, disjoint_key_filter), g, true));
    out.push_back(equality_report("lemma2.e-vs-d", inst,
                                  compare_distributions(law_e, law_d, disjoint_key_filter), g, true));
    out.push_back(equality_report("lemma2.o-vs-d", inst,
                                  compare_distributions(law_o, law_d, disjoint_key_filter), g, true));
  } else {
    out.push_back(equality_report("lemma2.e-vs-d", inst,
                                  compare_distributions(law_e, law_d, disjoint_key_filter), g, true));
  }

  // Joint recursion vs. brute force on every disjoint key pair.
  ClusterRecursion rec(g, p);
  DiffReport rd;
  rd.lhs_tag = "recursion:p=" + p.str();
  rd.rhs_tag = law_e.model_tag;
  auto check_key = [&](std::uint64_t ku, std::uint64_t kw) {
    Rational lhs = rec.joint_probability(u, VertexSet(ku), w, VertexSet(kw));
    Rational rhs = law_e.value(VertexSet(ku), VertexSet(kw));
    if (lhs != rhs) rd.diffs.push_back({ku, kw, lhs, rhs});
  };
  if (g.n() <= 12) {
    std::uint64_t full = VertexSet::full(g.n()).bits;
    for_each_submask(full & ~bit(u) & ~bit(w), [&](std::uint64_t su) {
      std::uint64_t ku = su | bit(u);
      for_each_submask(full & ~ku & ~bit(w),
                       [&](std::uint64_t sw) { check_key(ku, sw | bit(w)); });
    });
  } else {
    for (const auto& [key, unused] : law_e.probs)
      if ((key.first & key.second) == 0) check_key(key.first, key.second);
  }
  out.push_back(equality_report("lemma2.recursion", inst, rd, g, true));
  return out;
}

InequalityReport verify_oriented_harris(const Graph& g, int s, const UpwardClosedFamily& a,
                                        const UpwardClosedFamily& b, StateCaps caps) {
  if (a.root() != s || b.root() != s)
    throw std::invalid_argument("oriented harris: families must be rooted at s");
  ModelSpec o = ModelSpec::random_orientation();
  ReachPredicate pa = family_event_predicate(a), pb = family_event_predicate(b);
  Rational prob_a = event_probability(g, o, pa, caps);
  Rational prob_b = event_probability(g, o, pb, caps);
  Rational prob_ab = event_probability(g, o, pred_and(pa, pb), caps);
  InequalityReport rep;
  rep.name = "oriented-harris";
  rep.instance = "s=" + g.name(s);
  rep.lhs = prob_a * prob_b;
  rep.rhs = prob_ab;
  rep.holds = rep.lhs <= rep.rhs;
  rep.margin = rep.rhs - rep.lhs;
  rep.note = "P(A)=" + prob_a.str() + " P(B)=" + prob_b.str() + " P(AB)=" + prob_ab.str();
  return rep;
}

InequalityReport verify_oriented_vdbhk(const Graph& g, int s, const UpwardClosedFamily& a,
                                       const UpwardClosedFamily& b, VertexSet x, VertexSet y,
                                       StateCaps caps) {
  if (a.root() != s || b.root() != s)
    throw std::invalid_argument("oriented vdbhk: families must be rooted at s");
  if (x.has(s) || y.has(s))
    throw std::invalid_argument("oriented vdbhk: avoidance sets cannot contain s");
  ModelSpec o = ModelSpec::random_orientation();
  ReachPredicate pa = family_event_predicate(a), pb = family_event_predicate(b);
  Rational t1 = event_probability(g, o, pred_and(pa, avoidance_predicate(s, x)), caps);
  Rational t2 = event_probability(g, o, pred_and(pb, avoidance_predicate(s, y)), caps);
  Rational t3 = event_probability(
      g, o, pred_and(pred_and(pa, pb), avoidance_predicate(s, x & y)), caps);
  Rational t4 = event_probability(g, o, avoidance_predicate(s, x | y), caps);
  InequalityReport rep;
  rep.name = "oriented-vdbhk";
  auto set_desc = [&](VertexSet v) {
    if (v.empty()) return std::string("-");
    std::string out;
    for (int i : v) {
      if (!out.empty()) out += ',';
      out += g.name(i);
    }
    return out;
  };
  rep.instance = "s=" + g.name(s) + " X=" + set_desc(x) + " Y=" + set_desc(y);
  rep.lhs = t1 * t2;
  rep.rhs = t3 * t4;
  rep.holds = rep.lhs <= rep.rhs;
  rep.margin = rep.rhs - rep.lhs;
  rep.note = "P(A,avoid X)=" + t1.str() + " P(B,avoid Y)=" + t2.str() +
             " P(A,B,avoid X∩Y)=" + t3.str() + " P(avoid X∪Y)=" + t4.str();
  return rep;
}

std::vector<InequalityReport> verify_corollaries(const Graph& g, int s, int a, int b, int t,
                                                 StateCaps caps) {
  for (int v : {s, a, b, t})
    if (v < 0 || v >= g.n()) throw std::invalid_argument("verify_corollaries: vertex out of range");
  StateEnumerator en(g, ModelSpec::random_orientation(), caps);
  // Model O is uniform, so plain state counts suffice.
  std::uint64_t c_a = 0, c_b = 0, c_ab = 0;
  std::uint64_t c_c = 0, c_ac = 0, c_bc = 0, c_abc = 0, c_e1c = 0, c_e1bc = 0;
  const std::uint64_t total = en.size();
  for (; !en.done(); en.advance()) {
    std::uint64_t rs = en.reach_from(s).bits;
    bool in_a = (rs >> a) & 1, in_b = (rs >> b) & 1;
    if (in_a) ++c_a;
    if (in_b) ++c_b;
    if (in_a && in_b) ++c_ab;
    if ((rs >> t) & 1) continue;  // conditioning event s↛t fails
    ++c_c;
    bool e1 = (en.reach_from(a).bits >> t) & 1;  // a→t
    if (in_a) ++c_ac;
    if (in_b) ++c_bc;
    if (in_a && in_b) ++c_abc;
    if (e1) ++c_e1c;
    if (e1 && in_b) ++c_e1bc;
  }
  if (c_c == 0)
    throw std::domain_error("verify_corollaries: conditioning event s↛t has probability zero");

  auto frac = [](std::uint64_t num, std::uint64_t den) {
    return Rational(static_cast<long>(num)) / Rational(static_cast<long>(den));
  };
  std::string binding = "s=" + g.name(s) + " a=" + g.name(a) + " b=" + g.name(b);
  std::vector<InequalityReport> out;

  InequalityReport eq1;
  eq1.name = "eq1-two-paths";
  eq1.instance = binding;
  eq1.lhs = frac(c_a, total) * frac(c_b, total);
  eq1.rhs = frac(c_ab, total);
  eq1.holds = eq1.lhs <= eq1.rhs;
  eq1.margin = eq1.rhs - eq1.lhs;
  out.push_back(std::move(eq1));

  binding += " t=" + g.name(t);
  InequalityReport eq2;
  eq2.name = "eq2-conditioned-positive";
  eq2.instance = binding;
  eq2.lhs = frac(c_ac, c_c) * frac(c_bc, c_c);
  eq2.rhs = frac(c_abc, c_c);
  eq2.holds = eq2.lhs <= eq2.rhs;
  eq2.margin = eq2.rhs - eq2.lhs;
  out.push_back(std::move(eq2));

  InequalityReport eq3;
  eq3.name = "eq3-negative-conditioned";
  eq3.instance = binding;
  eq3.lhs = frac(c_e1c, c_c) * frac(c_bc, c_c);
  eq3.rhs = frac(c_e1bc, c_c);
  eq3.holds = eq3.lhs >= eq3.rhs;
  eq3.margin = eq3.lhs - eq3.rhs;
  out.push_back(std::move(eq3));
  return out;
}

InequalityReport verify_harris_classical(const Graph& g, const Rational& p,
                                         const EdgeUpwardFamily& a, const EdgeUpwardFamily& b,
                                         StateCaps caps) {
  ModelSpec e = ModelSpec::edge_percolation(p);
  ReachPredicate pa = edge_family_predicate(a), pb = edge_family_predicate(b);
  Rational prob_a = event_probability(g, e, pa, caps);
  Rational prob_b = event_probability(g, e, pb, caps);
  Rational prob_ab = event_probability(g, e, pred_and(pa, pb), caps);
  InequalityReport rep;
  rep.name = "harris";
  rep.instance = "p=" + p.str();
  rep.lhs = prob_a * prob_b;
  rep.rhs = prob_ab;
  rep.holds = rep.lhs <= rep.rhs;
  rep.margin = rep.rhs - rep.lhs;
  rep.note = "P(A)=" + prob_a.str() + " P(B)=" + prob_b.str() + " P(AB)=" + prob_ab.str();
  return rep;
}

InequalityReport bunkbed_check(const Graph& g, int u, int v, const Rational& p, StateCaps caps) {
  if (u < 0 || u >= g.n() || v < 0 || v >= g.n())
    throw std::invalid_argument("bunkbed_check: vertex out of range");
  Graph bb = bunkbed_product(g);
  const int n = g.n();
  auto side_sums = [&](const ClusterDistribution& law) {
    Rational same(0), other(0);
    for (const auto& [key, prob] : law.probs) {
      if ((key >> v) & 1) same += prob;
      if ((key >> (v + n)) & 1) other += prob;
    }
    return std::make_pair(same, other);
  };
  ClusterDistribution law_e = cluster_distribution_bruteforce(bb, ModelSpec::edge_percolation(p), u, caps);
  auto [lhs, rhs] = side_sums(law_e);

  InequalityReport rep;
  rep.name = "bunkbed";
  rep.instance = "u=" + g.name(u) + " v=" + g.name(v) + " p=" + p.str();
  rep.conjecture = true;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.holds = lhs >= rhs;
  rep.margin = lhs - rhs;
  if (p == Rational(1, 2)) {
    ClusterDistribution law_o =
        cluster_distribution_bruteforce(bb, ModelSpec::random_orientation(), u, caps);
    auto [olhs, orhs] = side_sums(law_o);
    if (olhs != lhs || orhs != rhs)
      throw std::logic_error("bunkbed_check: orientation-model cross-check failed (law equality "
                             "violated — software defect)");
    rep.note = "orientation-model cross-check: ok";
  }
  return rep;
}

std::vector<InequalityReport> verify_mixed_model(const Graph& g, int u, const Rational& p_prime,
                                                 const Rational& p, StateCaps caps) {
  if (u < 0 || u >= g.n()) throw std::invalid_argument("verify_mixed_model: root out of range");
  std::vector<InequalityReport> out;

  ClusterDistribution law_mixed_half =
      cluster_distribution_bruteforce(g, ModelSpec::mixed(p_prime, Rational(1, 2)), u, caps);
  ClusterDistribution law_o =
      cluster_distribution_bruteforce(g, ModelSpec::random_orientation(), u, caps);
  out.push_back(equality_report("mixed.vs-o", "u=" + g.name(u) + " pp=" + p_prime.str(),
                                compare_distributions(law_mixed_half, law_o), g, false));

  auto [pp, p1] = dp_split_parameters(p);
  ClusterDistribution law_mixed_split =
      cluster_distribution_bruteforce(g, ModelSpec::mixed(pp, p1), u, caps);
  ClusterDistribution law_d =
      cluster_distribution_bruteforce(g, ModelSpec::directed_percolation(p), u, caps);
  out.push_back(equality_report("mixed.dp-split", "u=" + g.name(u) + " p=" + p.str(),
                                compare_distributions(law_mixed_split, law_d), g, false));
  return out;
}

// --- sign search ---

SignSearchMode parse_sign_search_mode(const std::string& text) {
  if (text == "a_to_s") return SignSearchMode::AToS;
  if (text == "a_in_in_cluster_t") return SignSearchMode::AInInClusterT;
  throw std::invalid_argument("sign search: unknown mode '" + text +
                              "' (expected a_to_s or a_in_in_cluster_t)");
}

std::string to_string(SignSearchMode mode) {
  return mode == SignSearchMode::AToS ? "a_to_s" : "a_in_in_cluster_t";
}

namespace {

struct MaskOutcome {
  std::vector<SignFinding> findings;
  std::uint64_t instances = 0;
  std::uint64_t skipped = 0;
};

MaskOutcome eval_sign_mask(int n, std::uint64_t mask, SignSearchMode mode, bool conditioned) {
  MaskOutcome out;
  Graph g = labeled_graph(n, mask);
  const int m = g.m();
  const std::int64_t total = std::int64_t(1) << m;

  // Reachability matrix over all orientation states.
  std::vector<std::uint32_t> reach(static_cast<std::size_t>(total) * n);
  {
    StateEnumerator en(g, ModelSpec::random_orientation());
    for (; !en.done(); en.advance()) {
      std::size_t row = static_cast<std::size_t>(en.index()) * n;
      for (int v = 0; v < n; ++v)
        reach[row + v] = static_cast<std::uint32_t>(en.reach_from(v).bits);
    }
  }
  auto reaches = [&](std::int64_t state, int from, int to) {
    return (reach[static_cast<std::size_t>(state) * n + from] >> to) & 1u;
  };
  auto emit = [&](int s, int t, int a, int b, std::int64_t num, std::int64_t den, bool with_t) {
    int sign = num > 0 ? 1 : (num < 0 ? -1 : 0);
    if (sign == 0) return;
    SignFinding f;
    f.n = n;
    f.edge_mask = mask;
    f.graph_desc = graph_edge_desc(g);
    f.mode = to_string(mode);
    f.conditioned = conditioned;
    f.s = g.name(s);
    if (with_t) f.t = g.name(t);
    f.a = g.name(a);
    f.b = g.name(b);
    f.covariance = Rational(num) / Rational(den);
    f.sign = sign;
    out.findings.push_back(std::move(f));
  };

  if (mode == SignSearchMode::AToS) {
    for (int s = 0; s < n; ++s)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          std::int64_t c1 = 0, c2 = 0, c12 = 0;
          for (std::int64_t st = 0; st < total; ++st) {
            bool e1 = reaches(st, a, s), e2 = reaches(st, s, b);
            c1 += e1;
            c2 += e2;
            c12 += e1 && e2;
          }
          ++out.instances;
          emit(s, 0, a, b, c12 * total - c1 * c2, total * total, false);
        }
    return out;
  }

  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          std::int64_t c1 = 0, c2 = 0, c12 = 0, cc = 0;
          for (std::int64_t st = 0; st < total; ++st) {
            if (conditioned && reaches(st, s, t)) continue;
            bool e1 = reaches(st, a, t), e2 = reaches(st, s, b);
            ++cc;
            c1 += e1;
            c2 += e2;
            c12 += e1 && e2;
          }
          ++out.instances;
          if (conditioned && cc == 0) {
            ++out.skipped;
            continue;
          }
          emit(s, t, a, b, c12 * cc - c1 * c2, cc * cc, true);
        }
  return out;
}

}  // namespace

SignSearchResult search_correlation_signs(int n, SignSearchMode mode, bool conditioned,
                                          int threads) {
  if (n < 1 || n > 5) throw std::invalid_argument("sign search: n must be in 1..5");
  if (conditioned && mode != SignSearchMode::AInInClusterT)
    throw std::invalid_argument(
        "sign search: conditioning applies only to mode a_in_in_cluster_t");
  const std::uint64_t mask_count = std::uint64_t(1) << pair_count(n);
  std::vector<MaskOutcome> per_mask(mask_count);
  parallel_for_indices(mask_count, threads,
                       [&](std::size_t i) { per_mask[i] = eval_sign_mask(n, i, mode, conditioned); });
  SignSearchResult result;
  for (MaskOutcome& mo : per_mask) {
    result.instances += mo.instances;
    result.skipped += mo.skipped;
    for (SignFinding& f : mo.findings) result.findings.push_back(std::move(f));
  }
  return result;
}

// --- sweeps ---

SweepSummary sweep_lemma1_laws(int max_n, int max_m, const std::vector<Rational>& ps,
                               StateCaps caps) {
  SweepSummary sum;
  for (int n = 1; n <= max_n; ++n)
    for (std::uint64_t mask : connected_graph_masks(n, max_m)) {
      Graph g = labeled_graph(n, mask);
      ++sum.graphs;
      std::string where = "n=" + std::to_string(n) + " mask=" + hex_mask(mask) + " ";
      for (const Rational& p : ps)
        for (int u = 0; u < n; ++u) {
          auto reps = verify_lemma1(g, u, p, caps);
          for (InequalityReport& r : reps) r.instance = where + r.instance;
          tally_all(sum, reps);
        }
    }
  return sum;
}

SweepSummary sweep_lemma2_joint(int max_n, const std::vector<Rational>& ps, StateCaps caps) {
  SweepSummary sum;
  for (int n = 2; n <= max_n; ++n)
    for (std::uint64_t mask : connected_graph_masks(n)) {
      Graph g = labeled_graph(n, mask);
      ++sum.graphs;
      std::string where = "n=" + std::to_string(n) + " mask=" + hex_mask(mask) + " ";
      for (const Rational& p : ps)
        for (int u = 0; u < n; ++u)
          for (int w = 0; w < n; ++w) {
            if (u == w) continue;
            auto reps = verify_lemma2(g, u, w, p, caps);
            for (InequalityReport& r : reps) r.instance = where + r.instance;
            tally_all(sum, reps);
          }
    }
  return sum;
}

namespace {

struct GraphSweepOutcome {
  std::uint64_t instances = 0, held = 0, violated = 0, skipped = 0;
  std::vector<InequalityReport> violations;
};

// One graph's worth of the eq1/eq2/eq3 binding sweep, by integer counting
// over the uniform orientation states.
GraphSweepOutcome eval_corollaries_graph(int n, std::uint64_t mask) {
  GraphSweepOutcome out;
  Graph g = labeled_graph(n, mask);
  const std::int64_t total = std::int64_t(1) << g.m();
  const std::string where = "n=" + std::to_string(n) + " mask=" + hex_mask(mask) + " ";

  const int n2 = n * n, n3 = n2 * n, n4 = n3 * n;
  std::vector<std::uint32_t> c_a(n2, 0), c_ab(n3, 0);
  std::vector<std::uint32_t> c_c(n2, 0), c_ac(n3, 0), c_e1c(n3, 0), c_abc(n4, 0), c_e1bc(n4, 0);

  {
    StateEnumerator en(g, ModelSpec::random_orientation());
    std::vector<std::uint32_t> row(n);
    std::vector<char> in_s(n);
    for (; !en.done(); en.advance()) {
      for (int v = 0; v < n; ++v) row[v] = static_cast<std::uint32_t>(en.reach_from(v).bits);
      for (int s = 0; s < n; ++s) {
        const std::uint32_t rs = row[s];
        for (int a = 0; a < n; ++a) in_s[a] = (rs >> a) & 1;
        for (int a = 0; a < n; ++a) {
          if (!in_s[a]) continue;
          ++c_a[s * n + a];
          for (int b = 0; b < n; ++b)
            if (in_s[b]) ++c_ab[(s * n + a) * n + b];
        }
        for (int t = 0; t < n; ++t) {
          if ((rs >> t) & 1) continue;  // s reaches t: conditioning fails
          const int st = s * n + t;
          ++c_c[st];
          for (int a = 0; a < n; ++a) {
            const bool e1 = (row[a] >> t) & 1;
            if (in_s[a]) ++c_ac[st * n + a];
            if (e1) ++c_e1c[st * n + a];
            if (!in_s[a] && !e1) continue;
            for (int b = 0; b < n; ++b) {
              if (!in_s[b]) continue;
              if (in_s[a]) ++c_abc[(st * n + a) * n + b];
              if (e1) ++c_e1bc[(st * n + a) * n + b];
            }
          }
        }
      }
    }
  }

  auto frac = [](std::int64_t num, std::int64_t den) {
    return Rational(num) / Rational(den);
  };
  auto record = [&](bool holds, const char* name, const std::string& binding, Rational lhs,
                    Rational rhs, bool geq) {
    ++out.instances;
    if (holds) {
      ++out.held;
      return;
    }
    ++out.violated;
    InequalityReport rep;
    rep.name = name;
    rep.instance = where + binding;
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.holds = false;
    rep.margin = geq ? lhs - rhs : rhs - lhs;
    out.violations.push_back(std::move(rep));
  };

  for (int s = 0; s < n; ++s)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const std::int64_t ca = c_a[s * n + a], cb = c_a[s * n + b];
        const std::int64_t cab = c_ab[(s * n + a) * n + b];
        const bool holds = ca * cb <= cab * total;
        if (holds) {
          ++out.instances;
          ++out.held;
        } else {
          record(false, "eq1-two-paths",
                 "s=" + g.name(s) + " a=" + g.name(a) + " b=" + g.name(b),
                 frac(ca, total) * frac(cb, total), frac(cab, total), false);
        }
      }

  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const int st = s * n + t;
      const std::int64_t cc = c_c[st];
      if (cc == 0) {
        out.skipped += 2ull * n2;  // eq2 and eq3 for every (a, b)
        continue;
      }
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const std::int64_t cac = c_ac[st * n + a], cbc = c_ac[st * n + b];
          const std::int64_t cabc = c_abc[(st * n + a) * n + b];
          const std::int64_t ce1c = c_e1c[st * n + a];
          const std::int64_t ce1bc = c_e1bc[(st * n + a) * n + b];
          std::string binding;
          auto bind = [&]() {
            if (binding.empty())
              binding = "s=" + g.name(s) + " a=" + g.name(a) + " b=" + g.name(b) +
                        " t=" + g.name(t);
            return binding;
          };
          if (cac * cbc <= cabc * cc) {
            ++out.instances;
            ++out.held;
          } else {
            record(false, "eq2-conditioned-positive", bind(), frac(cac, cc) * frac(cbc, cc),
                   frac(cabc, cc), false);
          }
          if (ce1c * cbc >= ce1bc * cc) {
            ++out.instances;
            ++out.held;
          } else {
            record(false, "eq3-negative-conditioned", bind(), frac(ce1c, cc) * frac(cbc, cc),
                   frac(ce1bc, cc), true);
          }
        }
    }
  return out;
}

}  // namespace

SweepSummary sweep_corollaries(int max_n, int max_m, int threads) {
  SweepSummary sum;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<std::uint64_t> masks = connected_graph_masks(n, max_m);
    std::vector<GraphSweepOutcome> outcomes(masks.size());
    parallel_for_indices(masks.size(), threads,
                         [&](std::size_t i) { outcomes[i] = eval_corollaries_graph(n, masks[i]); });
    for (GraphSweepOutcome& o : outcomes) {
      ++sum.graphs;
      sum.instances += o.instances;
      sum.held += o.held;
      sum.violated += o.violated;
      sum.skipped += o.skipped;
      for (InequalityReport& r : o.violations) sum.violations.push_back(std::move(r));
    }
  }
  return sum;
}

namespace {

GraphSweepOutcome eval_oriented_families_graph(int n, std::uint64_t mask, int max_avoid) {
  GraphSweepOutcome out;
  Graph g = labeled_graph(n, mask);
  const std::int64_t total = std::int64_t(1) << g.m();
  const std::string where = "n=" + std::to_string(n) + " mask=" + hex_mask(mask) + " ";

  std::vector<std::uint32_t> reach(static_cast<std::size_t>(total) * n);
  {
    StateEnumerator en(g, ModelSpec::random_orientation());
    for (; !en.done(); en.advance()) {
      std::size_t row = static_cast<std::size_t>(en.index()) * n;
      for (int v = 0; v < n; ++v)
        reach[row + v] = static_cast<std::uint32_t>(en.reach_from(v).bits);
    }
  }

  auto set_desc = [&](std::uint32_t s_mask) {
    if (s_mask == 0) return std::string("-");
    std::string d;
    for (int v : VertexSet(s_mask)) {
      if (!d.empty()) d += ',';
      d += g.name(v);
    }
    return d;
  };
  auto frac = [total](std::int64_t c) { return Rational(c) / Rational(total); };

  for (int s = 0; s < n; ++s) {
    std::vector<std::uint32_t> avoid_sets;
    std::uint64_t pool = VertexSet::full(n).bits & ~bit(s);
    for_each_submask(pool, [&](std::uint64_t sub) {
      if (std::popcount(sub) <= max_avoid) avoid_sets.push_back(static_cast<std::uint32_t>(sub));
    });
    std::sort(avoid_sets.begin(), avoid_sets.end());

    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        // Oriented Harris for the singleton pair.
        std::int64_t ca = 0, cb = 0, cab = 0;
        for (std::int64_t st = 0; st < total; ++st) {
          const std::uint32_t rs = reach[static_cast<std::size_t>(st) * n + s];
          const bool in_a = (rs >> a) & 1, in_b = (rs >> b) & 1;
          ca += in_a;
          cb += in_b;
          cab += in_a && in_b;
        }
        ++out.instances;
        if (ca * cb <= cab * total) {
          ++out.held;
        } else {
          ++out.violated;
          InequalityReport rep;
          rep.name = "oriented-harris";
          rep.instance = where + "s=" + g.name(s) + " a=" + g.name(a) + " b=" + g.name(b);
          rep.lhs = frac(ca) * frac(cb);
          rep.rhs = frac(cab);
          rep.holds = false;
          rep.margin = rep.rhs - rep.lhs;
          out.violations.push_back(std::move(rep));
        }

        for (std::uint32_t x : avoid_sets)
          for (std::uint32_t y : avoid_sets) {
            std::int64_t c1 = 0, c2 = 0, c3 = 0, c4 = 0;
            const std::uint32_t xy_and = x & y, xy_or = x | y;
            for (std::int64_t st = 0; st < total; ++st) {
              const std::uint32_t rs = reach[static_cast<std::size_t>(st) * n + s];
              const bool in_a = (rs >> a) & 1, in_b = (rs >> b) & 1;
              c1 += in_a && (rs & x) == 0;
              c2 += in_b && (rs & y) == 0;
              c3 += in_a && in_b && (rs & xy_and) == 0;
              c4 += (rs & xy_or) == 0;
            }
            ++out.instances;
            if (c1 * c2 <= c3 * c4) {
              ++out.held;
            } else {
              ++out.violated;
              InequalityReport rep;
              rep.name = "oriented-vdbhk";
              rep.instance = where + "s=" + g.name(s) + " a=" + g.name(a) + " b=" + g.name(b) +
                             " X=" + set_desc(x) + " Y=" + set_desc(y);
              rep.lhs = frac(c1) * frac(c2);
              rep.rhs = frac(c3) * frac(c4);
              rep.holds = false;
              rep.margin = rep.rhs - rep.lhs;
              out.violations.push_back(std::move(rep));
            }
          }
      }
  }
  return out;
}

}  // namespace

SweepSummary sweep_oriented_families(int max_n, int max_avoid_size, int threads) {
  SweepSummary sum;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<std::uint64_t> masks = connected_graph_masks(n);
    std::vector<GraphSweepOutcome> outcomes(masks.size());
    parallel_for_indices(masks.size(), threads, [&](std::size_t i) {
      outcomes[i] = eval_oriented_families_graph(n, masks[i], max_avoid_size);
    });
    for (GraphSweepOutcome& o : outcomes) {
      ++sum.graphs;
      sum.instances += o.instances;
      sum.held += o.held;
      sum.violated += o.violated;
      sum.skipped += o.skipped;
      for (InequalityReport& r : o.violations) sum.violations.push_back(std::move(r));
    }
  }
  return sum;
}

SweepSummary sweep_mixed(int max_n, const std::vector<Rational>& p_primes,
                         const std::vector<Rational>& dp_ps, StateCaps caps) {
  SweepSummary sum;
  for (int n = 1; n <= max_n; ++n)
    for (std::uint64_t mask : connected_graph_masks(n)) {
      Graph g = labeled_graph(n, mask);
      ++sum.graphs;
      std::string where = "n=" + std::to_string(n) + " mask=" + hex_mask(mask) + " ";
      for (int u = 0; u < n; ++u) {
        ClusterDistribution law_o =
            cluster_distribution_bruteforce(g, ModelSpec::random_orientation(), u, caps);
        for (const Rational& pp : p_primes) {
          ClusterDistribution law_mixed =
              cluster_distribution_bruteforce(g, ModelSpec::mixed(pp, Rational(1, 2)), u, caps);
          InequalityReport rep =
              equality_report("mixed.vs-o", where + "u=" + g.name(u) + " pp=" + pp.str(),
                              compare_distributions(law_mixed, law_o), g, false);
          tally(sum, rep);
        }
        for (const Rational& p : dp_ps) {
          auto [pp, p1] = dp_split_parameters(p);
          ClusterDistribution law_mixed =
              cluster_distribution_bruteforce(g, ModelSpec::mixed(pp, p1), u, caps);
          ClusterDistribution law_d =
              cluster_distribution_bruteforce(g, ModelSpec::directed_percolation(p), u, caps);
          InequalityReport rep =
              equality_report("mixed.dp-split", where + "u=" + g.name(u) + " p=" + p.str(),
                              compare_distributions(law_mixed, law_d), g, false);
          tally(sum, rep);
        }
      }
    }
  return sum;
}

SweepSummary sweep_bunkbed(int max_n, const std::vector<Rational>& ps, StateCaps caps) {
  SweepSummary sum;
  for (int n = 1; n <= max_n; ++n)
    for (std::uint64_t mask : connected_graph_masks(n)) {
      Graph g = labeled_graph(n, mask);
      ++sum.graphs;
      std::string where = "n=" + std::to_string(n) + " mask=" + hex_mask(mask) + " ";
      for (const Rational& p : ps)
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v) {
            InequalityReport rep = bunkbed_check(g, u, v, p, caps);
            rep.instance = where + rep.instance;
            tally(sum, rep);
          }
    }
  return sum;
}

SweepSummary sweep_harris_classical(int max_n, const std::vector<Rational>& ps, StateCaps caps) {
  SweepSummary sum;
  for (int n = 1; n <= max_n; ++n) {
    const int pairs = pair_count(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << pairs); ++mask) {
      Graph g = labeled_graph(n, mask);
      ++sum.graphs;
      std::string where = "n=" + std::to_string(n) + " mask=" + hex_mask(mask) + " ";
      for (const Rational& p : ps)
        for (int e = 0; e < g.m(); ++e)
          for (int f = 0; f < g.m(); ++f) {
            EdgeUpwardFamily fa, fb;
            fa.add_generator(bit(e));
            fb.add_generator(bit(f));
            InequalityReport rep = verify_harris_classical(g, p, fa, fb, caps);
            auto [ea, eb] = g.edge(e);
            auto [fc, fd] = g.edge(f);
            rep.instance = where + "A={" + g.name(ea) + "-" + g.name(eb) + "} B={" +
                           g.name(fc) + "-" + g.name(fd) + "} " + rep.instance;
            tally(sum, rep);
          }
    }
  }
  return sum;
}

}  // namespace orient
