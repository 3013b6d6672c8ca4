#pragma once

#include <cstdint>

#include "auction/graph.hpp"

namespace auction {

enum class WeightLaw {
  Uniform,     // integer uniform on [lo, hi]
  TwoPoint,    // lo or hi with equal probability
  LogUniform,  // round(exp(U[log lo, log hi])), clamped to [lo, hi]
};

struct IntRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

struct GeneratorConfig {
  std::int32_t n_l = 2;
  std::int32_t n_r = 2;
  double density = 1.0;
  IntRange weights{1, 1};
  WeightLaw law = WeightLaw::Uniform;
  IntRange bidder_capacity{1, 1};
  IntRange item_capacity{1, 1};
  std::uint64_t seed = 0;
};

/// Erdos-Renyi style bipartite instance. Deterministic for a fixed config.
/// A zero-edge draw is retried once with a derived seed, then rejected.
BipartiteInstance generate_random(const GeneratorConfig& cfg);

}  // namespace auction
