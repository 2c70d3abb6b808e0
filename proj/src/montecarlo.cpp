#include "orient/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

namespace orient {

namespace {

constexpr std::uint64_t kChunkSize = 65536;

// One step of the splitmix64 sequence, used to derive independent per-chunk
// seeds from the master seed.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t chunk) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (chunk + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void sample_state(const Graph& g, const ModelSpec& model, std::mt19937_64& rng,
                  std::vector<std::uint8_t>& state) {
  state.assign(g.m(), 0);
  switch (model.kind) {
    case ModelKind::EdgePercolation: {
      const double p = model.p.to_double();
      for (int e = 0; e < g.m(); ++e)
        state[e] = uniform01(rng) < p ? edge_state::kPresent : edge_state::kAbsent;
      break;
    }
    case ModelKind::RandomOrientation: {
      for (int e = 0; e < g.m(); ++e)
        state[e] = uniform01(rng) < 0.5 ? edge_state::kForward : edge_state::kBackward;
      break;
    }
    case ModelKind::DirectedPercolation: {
      const double p = model.p.to_double();
      for (int e = 0; e < g.m(); ++e) {
        std::uint8_t arcs = 0;
        if (uniform01(rng) < p) arcs |= 1;  // forward arc
        if (uniform01(rng) < p) arcs |= 2;  // backward arc
        state[e] = arcs;
      }
      break;
    }
    case ModelKind::Mixed: {
      const double pp = model.p_prime.to_double();
      const double p1 = model.p1.to_double();
      const double absent_end = pp * (1.0 - p1);
      const double undirected_end = pp;
      const double forward_end = pp + (1.0 - pp) / 2.0;
      for (int e = 0; e < g.m(); ++e) {
        const double u = uniform01(rng);
        if (u < absent_end) state[e] = edge_state::kMixedAbsent;
        else if (u < undirected_end) state[e] = edge_state::kMixedUndirected;
        else if (u < forward_end) state[e] = edge_state::kMixedForward;
        else state[e] = edge_state::kMixedBackward;
      }
      break;
    }
  }
}

McEstimate estimate_event(const Graph& g, const ModelSpec& model, const ReachPredicate& event,
                          std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("monte carlo: sample count must be positive");
  WorldState st;
  st.kind = model.kind;
  std::uint64_t hits = 0;
  std::uint64_t done = 0;
  for (std::uint64_t chunk = 0; done < samples; ++chunk) {
    std::mt19937_64 rng(mix_seed(seed, chunk));
    const std::uint64_t quota = std::min(kChunkSize, samples - done);
    for (std::uint64_t i = 0; i < quota; ++i) {
      sample_state(g, model, rng, st.edge_states);
      if (event(g, st)) ++hits;
    }
    done += quota;
  }
  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.model_tag = model.tag();
  est.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  est.standard_error =
      std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(samples));
  return est;
}

}  // namespace orient
