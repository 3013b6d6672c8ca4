#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "auction/graph.hpp"
#include "auction/mcm.hpp"
#include "auction/result.hpp"

namespace auction {

/// b_i copies per bidder and b_j copies per item; copies of adjacent
/// originals form a biclique. Copies of vertex v are
/// [offset[v], offset[v + 1]).
struct CopyGraph {
  std::vector<std::int32_t> bidder_offset;
  std::vector<std::int32_t> item_offset;
  std::vector<BidderId> bidder_owner;  // copy -> original
  std::vector<ItemId> item_owner;
  std::int64_t copy_edges = 0;

  std::int32_t bidder_copies() const { return static_cast<std::int32_t>(bidder_owner.size()); }
  std::int32_t item_copies() const { return static_cast<std::int32_t>(item_owner.size()); }
};

CopyGraph expand_copies(const BipartiteInstance& inst);

/// Prices and cutoffs are in units of eps (k units == 1).
struct McbmState {
  std::int64_t k = 2;
  std::vector<std::int64_t> price;    // per item copy
  std::vector<std::int32_t> owner;    // per item copy: bidder copy or kNone
  std::vector<std::int32_t> assigned; // per bidder copy: item copy or kNone
  std::vector<std::int64_t> cutoff;   // per bidder copy
};

/// Minimum copy price of every original item.
std::vector<std::int64_t> min_copy_prices(const CopyGraph& cg, const McbmState& st);

/// Item originals eligible for bidder copy i': neighbors of i with no copy
/// held by any copy of i and minimum copy price >= c_{i'}.
std::vector<ItemId> eligible_items(const CopyGraph& cg, const Adjacency& adj, const McbmState& st,
                                   const std::vector<std::int64_t>& min_price, std::int32_t copy);

/// Minimum-price copies (price < 1) among copies of eligible items.
std::vector<std::int32_t> find_demand_set(const CopyGraph& cg, const Adjacency& adj,
                                          const McbmState& st, std::int32_t copy);

using McbmObserver = std::function<void(const McbmState&, std::int64_t round)>;

struct BMatchingResult {
  MatchingResult matching;  // projected pairs, value = cardinality
  std::vector<std::int32_t> bidder_usage;
  std::vector<std::int32_t> item_usage;
};

struct McbmRun {
  BMatchingResult result;
  RunTrace trace;
};

/// Distinct original pairs held by the copy assignment.
std::vector<Edge> project_assignment(const BipartiteInstance& inst, const CopyGraph& cg,
                                     const McbmState& st);

/// Auction for maximum cardinality b-matching. The randomized kernel runs the
/// non-duplicate greedy in a seeded order; stream-order mirrors stream_mcbm.
McbmRun run_mcbm(const BipartiteInstance& inst, Epsilon eps, KernelSpec kernel = {},
                 const McbmObserver& observer = {});

/// Round-end invariant checks for run_mcbm.
class McbmAuditor {
 public:
  explicit McbmAuditor(const BipartiteInstance& inst);

  void observe(const McbmState& state, std::int64_t round);
  McbmObserver hook() {
    return [this](const McbmState& s, std::int64_t r) { observe(s, r); };
  }

  const std::vector<std::string>& violations() const { return violations_; }
  const std::map<std::string, std::int64_t>& counts() const { return counts_; }
  std::int64_t checks() const { return checks_; }

 private:
  void fail(std::int64_t round, const std::string& kind, const std::string& what);

  CopyGraph cg_;
  Adjacency adj_;
  std::vector<std::int64_t> prev_price_;
  std::vector<std::int64_t> prev_cutoff_;
  std::vector<std::string> violations_;
  std::map<std::string, std::int64_t> counts_;
  std::int64_t checks_ = 0;
};

}  // namespace auction
