#include "auction/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace auction {
namespace {

void check_range(const IntRange& r, std::int64_t lo_bound, const char* what) {
  if (r.lo < lo_bound || r.hi < r.lo) {
    throw std::invalid_argument(std::string("invalid ") + what + " range");
  }
}

std::vector<std::int32_t> draw_capacities(std::mt19937_64& rng, std::int32_t n, IntRange range,
                                          std::int32_t cap) {
  if (range.lo == 1 && range.hi == 1) return {};
  const auto hi = std::min<std::int64_t>(range.hi, std::max(cap, 1));
  const auto lo = std::min<std::int64_t>(range.lo, hi);
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  std::vector<std::int32_t> out(static_cast<std::size_t>(n));
  for (auto& b : out) b = static_cast<std::int32_t>(dist(rng));
  return out;
}

BipartiteInstance draw(const GeneratorConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(cfg.density);
  std::uniform_int_distribution<std::int64_t> uniform(cfg.weights.lo, cfg.weights.hi);
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> log_u(std::log(static_cast<double>(cfg.weights.lo)),
                                               std::log(static_cast<double>(cfg.weights.hi)));

  BipartiteInstance inst;
  inst.n_l = cfg.n_l;
  inst.n_r = cfg.n_r;
  for (BidderId i = 0; i < cfg.n_l; ++i) {
    for (ItemId j = 0; j < cfg.n_r; ++j) {
      if (!keep(rng)) continue;
      Weight w = cfg.weights.lo;
      switch (cfg.law) {
        case WeightLaw::Uniform:
          w = uniform(rng);
          break;
        case WeightLaw::TwoPoint:
          w = coin(rng) ? cfg.weights.hi : cfg.weights.lo;
          break;
        case WeightLaw::LogUniform:
          w = std::clamp<Weight>(std::llround(std::exp(log_u(rng))), cfg.weights.lo,
                                 cfg.weights.hi);
          break;
      }
      inst.edges.push_back({i, j, w});
    }
  }
  inst.b_l = draw_capacities(rng, cfg.n_l, cfg.bidder_capacity, cfg.n_r);
  inst.b_r = draw_capacities(rng, cfg.n_r, cfg.item_capacity, cfg.n_l);
  return inst;
}

}  // namespace

BipartiteInstance generate_random(const GeneratorConfig& cfg) {
  if (cfg.n_l < 1 || cfg.n_r < 1) throw std::invalid_argument("need at least one vertex per side");
  if (!(cfg.density > 0.0 && cfg.density <= 1.0)) {
    throw std::invalid_argument("density must lie in (0, 1]");
  }
  check_range(cfg.weights, 1, "weight");
  check_range(cfg.bidder_capacity, 1, "bidder capacity");
  check_range(cfg.item_capacity, 1, "item capacity");

  auto inst = draw(cfg, cfg.seed);
  if (inst.edges.empty()) inst = draw(cfg, cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  if (inst.edges.empty()) throw InstanceError("generator drew zero edges twice");
  inst.validate();
  return inst;
}

}  // namespace auction
