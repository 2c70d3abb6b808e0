#include "orient/model.hpp"

#include <bit>
#include <stdexcept>

namespace orient {

namespace {

void require_probability(const Rational& p, const char* what) {
  if (!is_probability(p))
    throw std::invalid_argument(std::string("model: ") + what + " = " + p.str() +
                                " is not a probability");
}

VertexSet closure(const std::uint64_t* masks, int u) {
  std::uint64_t reach = std::uint64_t(1) << u;
  std::uint64_t frontier = reach;
  while (frontier != 0) {
    int v = std::countr_zero(frontier);
    frontier &= frontier - 1;
    std::uint64_t next = masks[v] & ~reach;
    reach |= next;
    frontier |= next;
  }
  return VertexSet(reach);
}

// Arc picture of one edge state: does the forward / backward arc exist?
struct Arcs {
  bool fwd, bwd;
};

Arcs arcs_of(ModelKind kind, std::uint8_t d) {
  switch (kind) {
    case ModelKind::EdgePercolation:
      return {d == edge_state::kPresent, d == edge_state::kPresent};
    case ModelKind::RandomOrientation:
      return {d == edge_state::kForward, d == edge_state::kBackward};
    case ModelKind::DirectedPercolation:
      return {(d & 1) != 0, (d & 2) != 0};
    case ModelKind::Mixed:
      return {d == edge_state::kMixedUndirected || d == edge_state::kMixedForward,
              d == edge_state::kMixedUndirected || d == edge_state::kMixedBackward};
  }
  throw std::logic_error("model: bad kind");
}

}  // namespace

ModelSpec ModelSpec::edge_percolation(const Rational& p) {
  require_probability(p, "p");
  ModelSpec m;
  m.kind = ModelKind::EdgePercolation;
  m.p = p;
  return m;
}

ModelSpec ModelSpec::random_orientation() {
  ModelSpec m;
  m.kind = ModelKind::RandomOrientation;
  return m;
}

ModelSpec ModelSpec::directed_percolation(const Rational& p) {
  require_probability(p, "p");
  ModelSpec m;
  m.kind = ModelKind::DirectedPercolation;
  m.p = p;
  return m;
}

ModelSpec ModelSpec::mixed(const Rational& p_prime, const Rational& p1) {
  require_probability(p_prime, "p'");
  require_probability(p1, "p1");
  ModelSpec m;
  m.kind = ModelKind::Mixed;
  m.p_prime = p_prime;
  m.p1 = p1;
  return m;
}

int ModelSpec::states_per_edge() const {
  switch (kind) {
    case ModelKind::EdgePercolation:
    case ModelKind::RandomOrientation:
      return 2;
    case ModelKind::DirectedPercolation:
    case ModelKind::Mixed:
      return 4;
  }
  throw std::logic_error("model: bad kind");
}

std::string ModelSpec::tag() const {
  switch (kind) {
    case ModelKind::EdgePercolation:
      return "e:p=" + p.str();
    case ModelKind::RandomOrientation:
      return "o";
    case ModelKind::DirectedPercolation:
      return "d:p=" + p.str();
    case ModelKind::Mixed:
      return "mixed:pp=" + p_prime.str() + ",p1=" + p1.str();
  }
  throw std::logic_error("model: bad kind");
}

ModelSpec parse_model_spec(const std::string& text) {
  auto expect_param = [&](const std::string& body, const std::string& key) {
    if (body.rfind(key, 0) != 0)
      throw std::invalid_argument("model: cannot parse '" + text + "' (expected " + key + "...)");
    return parse_rational(body.substr(key.size()));
  };
  try {
    if (text == "o") return ModelSpec::random_orientation();
    if (text.rfind("e:", 0) == 0)
      return ModelSpec::edge_percolation(expect_param(text.substr(2), "p="));
    if (text.rfind("d:", 0) == 0)
      return ModelSpec::directed_percolation(expect_param(text.substr(2), "p="));
    if (text.rfind("mixed:", 0) == 0) {
      std::string body = text.substr(6);
      auto comma = body.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("model: cannot parse '" + text + "' (expected pp=...,p1=...)");
      return ModelSpec::mixed(expect_param(body.substr(0, comma), "pp="),
                              expect_param(body.substr(comma + 1), "p1="));
    }
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("model: bad spec '") + text + "': " + e.what());
  }
  throw std::invalid_argument("model: unknown spec '" + text + "'");
}

std::pair<Rational, Rational> dp_split_parameters(const Rational& p) {
  require_probability(p, "p");
  Rational q = complement(p);
  Rational p_prime = p * p + q * q;  // both arcs or neither
  Rational p1 = (p * p) / p_prime;   // p_prime >= 1/2 > 0 always
  return {p_prime, p1};
}

std::uint64_t state_count(const Graph& g, const ModelSpec& model) {
  std::uint64_t total = 1;
  std::uint64_t base = static_cast<std::uint64_t>(model.states_per_edge());
  for (int e = 0; e < g.m(); ++e) {
    if (total > (std::uint64_t(1) << 62) / base)
      throw std::overflow_error("model: state space exceeds 2^62");
    total *= base;
  }
  return total;
}

StateEnumerator::StateEnumerator(const Graph& g, const ModelSpec& model, StateCaps caps)
    : g_(g), model_(model), base_(model.states_per_edge()) {
  size_ = state_count(g, model);
  if (size_ > caps.max_states)
    throw std::runtime_error("model: state space has " + std::to_string(size_) +
                             " states, above the cap of " + std::to_string(caps.max_states) +
                             " (raise --max-states to override)");
  digits_.assign(g.m(), 0);
  out_.assign(g.n(), 0);
  in_.assign(g.n(), 0);
  for (int e = 0; e < g.m(); ++e) add_arcs(e, 0);
  switch (model_.kind) {
    case ModelKind::EdgePercolation:
    case ModelKind::DirectedPercolation:
    case ModelKind::RandomOrientation:
      count_a_ = 0;
      break;
    case ModelKind::Mixed:
      count_a_ = g.m();  // every edge starts absent
      count_b_ = 0;
      break;
  }
  build_weight_table();
}

void StateEnumerator::build_weight_table() {
  int m = g_.m();
  switch (model_.kind) {
    case ModelKind::EdgePercolation: {
      Rational q = complement(model_.p);
      sig_weights_.resize(m + 1);
      for (int k = 0; k <= m; ++k)
        sig_weights_[k] = Rational::pow(model_.p, k) * Rational::pow(q, m - k);
      break;
    }
    case ModelKind::RandomOrientation: {
      sig_weights_ = {Rational::pow(Rational(1, 2), m)};
      break;
    }
    case ModelKind::DirectedPercolation: {
      Rational q = complement(model_.p);
      sig_weights_.resize(2 * m + 1);
      for (int k = 0; k <= 2 * m; ++k)
        sig_weights_[k] = Rational::pow(model_.p, k) * Rational::pow(q, 2 * m - k);
      break;
    }
    case ModelKind::Mixed: {
      Rational w_absent = model_.p_prime * complement(model_.p1);
      Rational w_present = model_.p_prime * model_.p1;
      Rational w_oriented = complement(model_.p_prime) / Rational(2);
      sig_weights_.assign((m + 1) * (m + 1), Rational(0));
      for (int n0 = 0; n0 <= m; ++n0)
        for (int n1 = 0; n0 + n1 <= m; ++n1)
          sig_weights_[n0 * (m + 1) + n1] = Rational::pow(w_absent, n0) *
                                            Rational::pow(w_present, n1) *
                                            Rational::pow(w_oriented, m - n0 - n1);
      break;
    }
  }
}

void StateEnumerator::add_arcs(int e, std::uint8_t d) {
  auto [a, b] = g_.edge(e);
  Arcs ar = arcs_of(model_.kind, d);
  if (ar.fwd) {
    out_[a] |= std::uint64_t(1) << b;
    in_[b] |= std::uint64_t(1) << a;
  }
  if (ar.bwd) {
    out_[b] |= std::uint64_t(1) << a;
    in_[a] |= std::uint64_t(1) << b;
  }
}

void StateEnumerator::remove_arcs(int e, std::uint8_t d) {
  auto [a, b] = g_.edge(e);
  Arcs ar = arcs_of(model_.kind, d);
  // Simple graph: only this edge contributes arcs between a and b, so the
  // bits can be cleared unconditionally.
  if (ar.fwd) {
    out_[a] &= ~(std::uint64_t(1) << b);
    in_[b] &= ~(std::uint64_t(1) << a);
  }
  if (ar.bwd) {
    out_[b] &= ~(std::uint64_t(1) << a);
    in_[a] &= ~(std::uint64_t(1) << b);
  }
}

void StateEnumerator::advance() {
  ++index_;
  if (index_ >= size_) {
    done_ = true;
    return;
  }
  for (int e = 0;; ++e) {
    std::uint8_t d = digits_[e];
    std::uint8_t nd = static_cast<std::uint8_t>(d + 1 == base_ ? 0 : d + 1);
    remove_arcs(e, d);
    add_arcs(e, nd);
    // Incremental weight-class bookkeeping.
    switch (model_.kind) {
      case ModelKind::EdgePercolation:
        count_a_ += (nd == edge_state::kPresent) - (d == edge_state::kPresent);
        break;
      case ModelKind::RandomOrientation:
        break;
      case ModelKind::DirectedPercolation:
        count_a_ += std::popcount(unsigned(nd)) - std::popcount(unsigned(d));
        break;
      case ModelKind::Mixed:
        count_a_ += (nd == edge_state::kMixedAbsent) - (d == edge_state::kMixedAbsent);
        count_b_ += (nd == edge_state::kMixedUndirected) - (d == edge_state::kMixedUndirected);
        break;
    }
    digits_[e] = nd;
    if (nd != 0) break;
  }
}

void StateEnumerator::reset() {
  for (int e = 0; e < g_.m(); ++e) {
    remove_arcs(e, digits_[e]);
    digits_[e] = 0;
    add_arcs(e, 0);
  }
  index_ = 0;
  done_ = false;
  count_a_ = model_.kind == ModelKind::Mixed ? g_.m() : 0;
  count_b_ = 0;
}

int StateEnumerator::sig_index() const {
  switch (model_.kind) {
    case ModelKind::EdgePercolation:
    case ModelKind::DirectedPercolation:
      return count_a_;
    case ModelKind::RandomOrientation:
      return 0;
    case ModelKind::Mixed:
      return count_a_ * (g_.m() + 1) + count_b_;
  }
  throw std::logic_error("model: bad kind");
}

VertexSet StateEnumerator::reach_from(int u) const { return closure(out_.data(), u); }
VertexSet StateEnumerator::reach_into(int u) const { return closure(in_.data(), u); }

WorldState StateEnumerator::world_state() const {
  return WorldState{model_.kind, digits_, weight()};
}

VertexSet out_cluster(const Graph& g, const WorldState& st, int u) {
  if (st.edge_states.size() != static_cast<std::size_t>(g.m()))
    throw std::invalid_argument("out_cluster: state does not match graph");
  std::vector<std::uint64_t> out(g.n(), 0);
  for (int e = 0; e < g.m(); ++e) {
    auto [a, b] = g.edge(e);
    Arcs ar = arcs_of(st.kind, st.edge_states[e]);
    if (ar.fwd) out[a] |= std::uint64_t(1) << b;
    if (ar.bwd) out[b] |= std::uint64_t(1) << a;
  }
  return closure(out.data(), u);
}

VertexSet in_cluster(const Graph& g, const WorldState& st, int u) {
  if (st.edge_states.size() != static_cast<std::size_t>(g.m()))
    throw std::invalid_argument("in_cluster: state does not match graph");
  std::vector<std::uint64_t> in(g.n(), 0);
  for (int e = 0; e < g.m(); ++e) {
    auto [a, b] = g.edge(e);
    Arcs ar = arcs_of(st.kind, st.edge_states[e]);
    if (ar.fwd) in[b] |= std::uint64_t(1) << a;
    if (ar.bwd) in[a] |= std::uint64_t(1) << b;
  }
  return closure(in.data(), u);
}

void enumerate_states(const Graph& g, const ModelSpec& model,
                      const std::function<void(const WorldState&)>& fn, StateCaps caps) {
  for (StateEnumerator en(g, model, caps); !en.done(); en.advance()) fn(en.world_state());
}

Rational event_probability(const Graph& g, const ModelSpec& model, const ReachPredicate& event,
                           StateCaps caps) {
  StateEnumerator en(g, model, caps);
  std::vector<std::uint64_t> hits(en.sig_count(), 0);
  for (; !en.done(); en.advance()) {
    WorldState st = en.world_state();
    if (event(g, st)) ++hits[en.sig_index()];
  }
  Rational total(0);
  for (int s = 0; s < en.sig_count(); ++s)
    if (hits[s] != 0) total += Rational(static_cast<long>(hits[s])) * en.class_weight(s);
  return total;
}

}  // namespace orient
