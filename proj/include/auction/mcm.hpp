#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "auction/graph.hpp"
#include "auction/result.hpp"

namespace auction {

/// Sorted neighbor lists of every bidder.
struct Adjacency {
  std::vector<std::vector<ItemId>> items;
  std::vector<std::vector<Weight>> weights;

  explicit Adjacency(const BipartiteInstance& inst);
};

/// Prices are stored in units of eps, so an item at price 1 has price == k.
struct McmState {
  std::int64_t k = 2;
  std::vector<std::int64_t> price;
  std::vector<ItemId> assigned;  // per bidder, kNone if unmatched
  std::vector<BidderId> owner;   // per item, kNone if unmatched
};

/// argmin-price neighbors of i with price < 1.
std::vector<ItemId> demand_set_mcm(const McmState& state, const Adjacency& adj, BidderId i);

using McmObserver = std::function<void(const McmState&, std::int64_t round)>;

struct McmRun {
  MatchingResult result;
  RunTrace trace;
};

/// Round budget ceil(2 / eps^2) = 2k^2.
std::int64_t mcm_round_budget(Epsilon eps);

/// Auction for maximum cardinality matching. Weights are ignored.
McmRun run_mcm(const BipartiteInstance& inst, Epsilon eps, KernelSpec kernel = {},
               const McmObserver& observer = {});

/// Per-round invariant checks for run_mcm, fed through the observer hook.
class McmAuditor {
 public:
  explicit McmAuditor(const BipartiteInstance& inst);

  void observe(const McmState& state, std::int64_t round);
  McmObserver hook() {
    return [this](const McmState& s, std::int64_t r) { observe(s, r); };
  }

  const std::vector<std::string>& violations() const { return violations_; }
  const std::map<std::string, std::int64_t>& counts() const { return counts_; }
  std::int64_t checks() const { return checks_; }

 private:
  void fail(std::int64_t round, const std::string& kind, const std::string& what);

  Adjacency adj_;
  std::vector<std::int64_t> prev_price_;
  std::vector<char> prev_matched_;
  std::vector<std::string> violations_;
  std::map<std::string, std::int64_t> counts_;
  std::int64_t checks_ = 0;
};

}  // namespace auction
