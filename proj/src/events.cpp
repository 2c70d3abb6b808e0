#include "orient/events.hpp"

#include <algorithm>
#include <stdexcept>

namespace orient {

UpwardClosedFamily::UpwardClosedFamily(int root) : root_(root) {
  if (root < 0 || root >= VertexSet::kCapacity)
    throw std::invalid_argument("family: root out of range");
}

void UpwardClosedFamily::add_generator(VertexSet gen) {
  gen.add(root_);
  for (const VertexSet& g : generators_)
    if (g.subset_of(gen)) return;  // absorbed by an existing generator
  std::erase_if(generators_, [&](const VertexSet& g) { return gen.subset_of(g); });
  generators_.push_back(gen);
  std::sort(generators_.begin(), generators_.end(),
            [](VertexSet a, VertexSet b) { return a.bits < b.bits; });
}

bool UpwardClosedFamily::contains(VertexSet cluster) const {
  for (const VertexSet& g : generators_)
    if (g.subset_of(cluster)) return true;
  return false;
}

UpwardClosedFamily UpwardClosedFamily::conjunction(const UpwardClosedFamily& other) const {
  if (root_ != other.root_)
    throw std::invalid_argument("family: conjunction requires a common root");
  UpwardClosedFamily out(root_);
  for (const VertexSet& a : generators_)
    for (const VertexSet& b : other.generators_) out.add_generator(a | b);
  return out;
}

UpwardClosedFamily UpwardClosedFamily::disjunction(const UpwardClosedFamily& other) const {
  if (root_ != other.root_)
    throw std::invalid_argument("family: disjunction requires a common root");
  UpwardClosedFamily out(root_);
  for (const VertexSet& g : generators_) out.add_generator(g);
  for (const VertexSet& g : other.generators_) out.add_generator(g);
  return out;
}

UpwardClosedFamily make_reachability_family(int s, VertexSet targets) {
  UpwardClosedFamily f(s);
  f.add_generator(targets);
  return f;
}

ReachPredicate family_event_predicate(const UpwardClosedFamily& family) {
  return [family](const Graph& g, const WorldState& st) {
    return family.contains(out_cluster(g, st, family.root()));
  };
}

ReachPredicate avoidance_predicate(int s, VertexSet x) {
  if (x.has(s))
    throw std::invalid_argument("avoidance_predicate: the root cannot avoid itself");
  return [s, x](const Graph& g, const WorldState& st) {
    return !out_cluster(g, st, s).intersects(x);
  };
}

ReachPredicate pred_true() {
  return [](const Graph&, const WorldState&) { return true; };
}

ReachPredicate pred_and(ReachPredicate a, ReachPredicate b) {
  return [a = std::move(a), b = std::move(b)](const Graph& g, const WorldState& st) {
    return a(g, st) && b(g, st);
  };
}

ReachPredicate reach_predicate(int s, VertexSet targets) {
  return family_event_predicate(make_reachability_family(s, targets));
}

EdgeUpwardFamily EdgeUpwardFamily::always_true() {
  EdgeUpwardFamily f;
  f.add_generator(0);
  return f;
}

void EdgeUpwardFamily::add_generator(std::uint64_t edge_mask) {
  for (std::uint64_t g : generators_)
    if ((g & ~edge_mask) == 0) return;
  std::erase_if(generators_, [&](std::uint64_t g) { return (edge_mask & ~g) == 0; });
  generators_.push_back(edge_mask);
  std::sort(generators_.begin(), generators_.end());
}

bool EdgeUpwardFamily::contains(std::uint64_t present_mask) const {
  for (std::uint64_t g : generators_)
    if ((g & ~present_mask) == 0) return true;
  return false;
}

ReachPredicate edge_family_predicate(const EdgeUpwardFamily& family) {
  return [family](const Graph& g, const WorldState& st) {
    if (st.kind != ModelKind::EdgePercolation)
      throw std::invalid_argument("edge family: state is not an edge-percolation state");
    std::uint64_t present = 0;
    for (int e = 0; e < g.m(); ++e)
      if (st.edge_states[e] == edge_state::kPresent) present |= std::uint64_t(1) << e;
    return family.contains(present);
  };
}

CorrelationReport correlation_report(const Graph& g, const ModelSpec& model,
                                     const ReachPredicate& a, const ReachPredicate& b,
                                     const ReachPredicate& cond, StateCaps caps) {
  StateEnumerator en(g, model, caps);
  const int sc = en.sig_count();
  std::vector<std::uint64_t> n_c(sc, 0), n_ac(sc, 0), n_bc(sc, 0), n_abc(sc, 0);
  for (; !en.done(); en.advance()) {
    WorldState st = en.world_state();
    if (!cond(g, st)) continue;
    int sig = en.sig_index();
    ++n_c[sig];
    bool ha = a(g, st), hb = b(g, st);
    if (ha) ++n_ac[sig];
    if (hb) ++n_bc[sig];
    if (ha && hb) ++n_abc[sig];
  }
  auto weigh = [&](const std::vector<std::uint64_t>& counts) {
    Rational total(0);
    for (int s = 0; s < sc; ++s)
      if (counts[s] != 0) total += Rational(static_cast<long>(counts[s])) * en.class_weight(s);
    return total;
  };
  CorrelationReport rep;
  rep.p_cond = weigh(n_c);
  if (rep.p_cond.is_zero())
    throw std::domain_error("correlation_report: conditioning event has probability zero");
  rep.p_a = weigh(n_ac) / rep.p_cond;
  rep.p_b = weigh(n_bc) / rep.p_cond;
  rep.p_ab = weigh(n_abc) / rep.p_cond;
  rep.covariance = rep.p_ab - rep.p_a * rep.p_b;
  rep.sign = rep.covariance.sign();
  return rep;
}

IncreasingCheck is_out_cluster_increasing(const Graph& g, int s, const ReachPredicate& pred,
                                          int max_edges) {
  if (g.m() > max_edges)
    throw std::invalid_argument("is_out_cluster_increasing: graph exceeds the quadratic-check cap");
  ModelSpec o = ModelSpec::random_orientation();
  std::vector<std::uint64_t> clusters;
  std::vector<char> holds;
  StateCaps caps;
  caps.max_states = std::uint64_t(1) << max_edges;
  for (StateEnumerator en(g, o, caps); !en.done(); en.advance()) {
    clusters.push_back(en.reach_from(s).bits);
    holds.push_back(pred(g, en.world_state()) ? 1 : 0);
  }
  const std::size_t total = clusters.size();
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j)
      if (holds[j] && !holds[i] && (clusters[j] & ~clusters[i]) == 0)
        return {false, i, j};
  return {};
}

namespace {

std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

VertexSet parse_name_list(const Graph& g, const std::string& text) {
  VertexSet out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = strip(comma == std::string::npos ? text.substr(pos)
                                                        : text.substr(pos, comma - pos));
    if (item.empty()) throw std::invalid_argument("event: empty name in list '" + text + "'");
    out.add(g.require_vertex(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

ReachPredicate parse_event(const Graph& g, const std::string& raw) {
  std::string text = strip(raw);
  if (text == "true") return pred_true();
  if (text.rfind("reach:", 0) == 0) {
    std::string body = text.substr(6);
    auto arrow = body.find("->");
    if (arrow == std::string::npos)
      throw std::invalid_argument("event: expected 'reach:s->targets' in '" + raw + "'");
    int s = g.require_vertex(strip(body.substr(0, arrow)));
    return reach_predicate(s, parse_name_list(g, body.substr(arrow + 2)));
  }
  if (text.rfind("avoid:", 0) == 0) {
    std::string body = text.substr(6);
    auto bar = body.find("-|");
    if (bar == std::string::npos)
      throw std::invalid_argument("event: expected 'avoid:s-|targets' in '" + raw + "'");
    int s = g.require_vertex(strip(body.substr(0, bar)));
    return avoidance_predicate(s, parse_name_list(g, body.substr(bar + 2)));
  }
  if (text.rfind("and(", 0) == 0 && text.back() == ')') {
    std::string body = text.substr(4, text.size() - 5);
    // Commas also appear inside target lists ("reach:s->a,b"), so a top-level
    // comma separates arguments only when the text after it starts a new
    // event form.
    auto starts_event = [](const std::string& s) {
      return s == "true" || s.rfind("true,", 0) == 0 || s.rfind("reach:", 0) == 0 ||
             s.rfind("avoid:", 0) == 0 || s.rfind("and(", 0) == 0;
    };
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      else if (body[i] == ')') --depth;
      else if (body[i] == ',' && depth == 0 && starts_event(strip(body.substr(i + 1)))) {
        parts.push_back(body.substr(start, i - start));
        start = i + 1;
      }
    }
    parts.push_back(body.substr(start));
    if (parts.empty() || strip(parts[0]).empty())
      throw std::invalid_argument("event: empty conjunction in '" + raw + "'");
    ReachPredicate acc = parse_event(g, parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) acc = pred_and(acc, parse_event(g, parts[i]));
    return acc;
  }
  throw std::invalid_argument("event: cannot parse '" + raw + "'");
}

}  // namespace orient
