#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "auction/graph.hpp"
#include "auction/mcm.hpp"
#include "auction/result.hpp"

namespace auction {

/// Prices are in base units 1 / (k * w_max). A neighbor of weight w is valued
/// at k * w units and an accepted bid raises the price by w units.
struct MwmState {
  std::int64_t k = 2;
  Weight w_max = 1;
  std::vector<std::int64_t> price;
  std::vector<ItemId> assigned;
  std::vector<BidderId> owner;
};

struct DemandSpec {
  std::optional<std::int64_t> max_utility;  // U_i in base units; empty when no positive utility
  std::vector<ItemId> items;
};

DemandSpec demand_set_mwm(const MwmState& state, const Adjacency& adj, BidderId i);

/// Bucket b >= 1 with eps^(b-1) <= w / w_max < eps^(b-2). Throws on w <= 0.
std::int32_t edge_bucket(Weight w, Weight w_max, Epsilon eps);

/// ceil(2 (s^2 + 2) / eps^4) with s = ceil(log_{1/eps} W).
std::int64_t mwm_phase_budget(Epsilon eps, std::int32_t log_ratio);

using MwmObserver = std::function<void(const MwmState&, std::int64_t phase)>;

struct MwmRun {
  MatchingResult result;
  RunTrace trace;
};

/// Weighted auction on a scaled, pruned graph. Weight is reported in
/// original units.
MwmRun run_mwm(const ScaledGraph& sg, KernelSpec kernel = {}, const MwmObserver& observer = {});

/// Phase-end invariant checks for run_mwm. `optimum` is the optimal weight
/// of the graph the engine runs on, in original units.
class MwmAuditor {
 public:
  MwmAuditor(const ScaledGraph& sg, std::optional<Weight> optimum);

  void observe(const MwmState& state, std::int64_t phase);
  MwmObserver hook() {
    return [this](const MwmState& s, std::int64_t d) { observe(s, d); };
  }

  const std::vector<std::string>& violations() const { return violations_; }
  std::int64_t checks() const { return checks_; }
  /// Violations per property name.
  const std::map<std::string, std::int64_t>& counts() const { return counts_; }
  /// Largest sum of prices seen, in base units.
  std::int64_t max_price_sum() const { return max_price_sum_; }

 private:
  void fail(std::int64_t phase, const std::string& kind, const std::string& what);

  Adjacency adj_;
  std::optional<Weight> optimum_;
  std::vector<std::int64_t> prev_price_;
  std::vector<char> prev_matched_;
  std::vector<std::string> violations_;
  std::map<std::string, std::int64_t> counts_;
  std::int64_t checks_ = 0;
  std::int64_t max_price_sum_ = 0;
};

}  // namespace auction
