#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "orient/model.hpp"

namespace orient {

// Result of a seeded Monte Carlo estimate of an event probability.
struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string model_tag;
};

// Draws one world state for the model into `state` (resized to g.m()).
void sample_state(const Graph& g, const ModelSpec& model, std::mt19937_64& rng,
                  std::vector<std::uint8_t>& state);

// Estimates P(event) by simple Monte Carlo with a fixed chunking scheme, so a
// given (graph, model, samples, seed) tuple always produces the same
// estimate, regardless of platform. Throws std::invalid_argument for
// samples == 0.
McEstimate estimate_event(const Graph& g, const ModelSpec& model, const ReachPredicate& event,
                          std::uint64_t samples, std::uint64_t seed);

}  // namespace orient
