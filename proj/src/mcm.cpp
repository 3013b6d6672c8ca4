#include "auction/mcm.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_set>

#include "auction/kernels.hpp"

namespace auction {

Adjacency::Adjacency(const BipartiteInstance& inst)
    : items(static_cast<std::size_t>(inst.n_l)), weights(static_cast<std::size_t>(inst.n_l)) {
  std::vector<std::vector<std::pair<ItemId, Weight>>> tmp(static_cast<std::size_t>(inst.n_l));
  for (const auto& e : inst.edges) tmp[e.bidder].emplace_back(e.item, e.weight);
  for (std::size_t i = 0; i < tmp.size(); ++i) {
    std::sort(tmp[i].begin(), tmp[i].end());
    for (const auto& [j, w] : tmp[i]) {
      items[i].push_back(j);
      weights[i].push_back(w);
    }
  }
}

std::vector<ItemId> demand_set_mcm(const McmState& state, const Adjacency& adj, BidderId i) {
  std::vector<ItemId> out;
  std::int64_t best = state.k;
  for (ItemId j : adj.items[i]) {
    const auto p = state.price[j];
    if (p >= state.k) continue;
    if (p < best) {
      best = p;
      out.clear();
    }
    if (p == best) out.push_back(j);
  }
  return out;
}

std::int64_t mcm_round_budget(Epsilon eps) { return checked_mul(2, checked_mul(eps.k(), eps.k())); }

McmRun run_mcm(const BipartiteInstance& inst, Epsilon eps, KernelSpec kernel,
               const McmObserver& observer) {
  const Adjacency adj(inst);
  McmState st;
  st.k = eps.k();
  st.price.assign(static_cast<std::size_t>(inst.n_r), 0);
  st.assigned.assign(static_cast<std::size_t>(inst.n_l), kNone);
  st.owner.assign(static_cast<std::size_t>(inst.n_r), kNone);

  McmRun run;
  run.trace.phase_budget = mcm_round_budget(eps);
  std::mt19937_64 seeds(kernel.seed);
  std::int64_t best_size = 0;
  std::vector<ItemId> best_assignment;

  for (std::int64_t round = 1; round <= run.trace.phase_budget; ++round) {
    ++run.trace.phases;
    Subgraph sub;
    sub.n_bidders = inst.n_l;
    sub.n_items = inst.n_r;
    for (BidderId i = 0; i < inst.n_l; ++i) {
      if (st.assigned[i] != kNone) continue;
      auto d = demand_set_mcm(st, adj, i);
      if (d.empty()) continue;
      BidderDemand bd{i, {}};
      for (ItemId j : d) bd.candidates.push_back({j, st.price[j], 1});
      sub.bidders.push_back(std::move(bd));
    }
    // Nothing to bid on: every later round is identical.
    if (sub.bidders.empty()) break;

    KernelMatching km;
    switch (kernel.choice) {
      case KernelChoice::Deterministic:
        km = greedy_maximal(sub);
        break;
      case KernelChoice::Randomized:
        km = randomized_proposal_mm(sub, seeds());
        break;
      case KernelChoice::StreamOrder: {
        std::unordered_set<std::uint64_t> demand;
        for (const auto& b : sub.bidders) {
          for (const auto& c : b.candidates) demand.insert(pair_key(b.bidder, c.item));
        }
        std::vector<MatchedPair> order;
        for (const auto& e : inst.edges) {
          if (demand.count(pair_key(e.bidder, e.item))) order.emplace_back(e.bidder, e.item);
        }
        km = edge_order_maximal(order, inst.n_l, inst.n_r);
        break;
      }
    }
    ++run.trace.active_phases;
    run.trace.kernel_rounds += km.rounds;
    run.trace.proposals += km.proposals;
    run.trace.price_announcements += static_cast<std::int64_t>(km.pairs.size());

    for (const auto& [i, j] : km.pairs) {
      if (st.owner[j] != kNone) st.assigned[st.owner[j]] = kNone;
      st.owner[j] = i;
      st.assigned[i] = j;
      st.price[j] += 1;
    }

    const auto size = std::count_if(st.assigned.begin(), st.assigned.end(),
                                    [](ItemId j) { return j != kNone; });
    if (size > best_size) {
      best_size = size;
      best_assignment = st.assigned;
      run.result.captured_phase = round;
    }
    if (observer) observer(st, round);
  }

  for (BidderId i = 0; i < static_cast<BidderId>(best_assignment.size()); ++i) {
    const ItemId j = best_assignment[i];
    if (j == kNone) continue;
    const auto& items = adj.items[i];
    const auto pos = std::lower_bound(items.begin(), items.end(), j) - items.begin();
    run.result.edges.push_back({i, j, adj.weights[i][pos]});
  }
  run.result.value = best_size;
  run.result.valid = is_valid_b_matching(inst, run.result.edges);
  return run;
}

McmAuditor::McmAuditor(const BipartiteInstance& inst) : adj_(inst) {}

void McmAuditor::fail(std::int64_t round, const std::string& kind, const std::string& what) {
  ++counts_[kind];
  if (violations_.size() < 64) {
    violations_.push_back("round " + std::to_string(round) + ": " + kind + ": " + what);
  }
}

void McmAuditor::observe(const McmState& st, std::int64_t round) {
  ++checks_;
  const auto n_l = static_cast<BidderId>(st.assigned.size());
  const auto n_r = static_cast<ItemId>(st.owner.size());
  if (prev_price_.empty()) {
    prev_price_.assign(st.price.size(), 0);
    prev_matched_.assign(st.owner.size(), 0);
  }

  for (BidderId i = 0; i < n_l; ++i) {
    const ItemId j = st.assigned[i];
    if (j != kNone && st.owner[j] != i) fail(round, "valid-matching", "assignment and owner disagree");
  }
  std::int64_t matched = 0;
  std::int64_t price_sum = 0;
  std::int64_t utility_sum = 0;
  for (ItemId j = 0; j < n_r; ++j) {
    const auto p = st.price[j];
    if (p < 0 || p > st.k) fail(round, "price-range", "price outside [0,1] on item " + std::to_string(j));
    if (p < prev_price_[j]) fail(round, "monotonicity", "price decreased on item " + std::to_string(j));
    const bool is_matched = st.owner[j] != kNone;
    if (p > 0 && !is_matched) fail(round, "positive-price-matched", "positive price on unmatched item " + std::to_string(j));
    if (prev_matched_[j] && !is_matched) fail(round, "monotonicity", "item " + std::to_string(j) + " lost its owner");
    if (is_matched) {
      ++matched;
      price_sum += p;
      utility_sum += st.k - p;
    }
    prev_price_[j] = p;
    prev_matched_[j] = is_matched ? 1 : 0;
  }
  if (utility_sum > matched * st.k - price_sum) fail(round, "utility-accounting", "total utility exceeds |M| - sum p");

  // eps-happiness for matched bidders and for unmatched bidders without demand.
  for (BidderId i = 0; i < n_l; ++i) {
    const ItemId a = st.assigned[i];
    if (a == kNone && !demand_set_mcm(st, adj_, i).empty()) continue;
    const std::int64_t u = a == kNone ? 0 : st.k - st.price[a];
    for (ItemId j : adj_.items[i]) {
      if (u < st.k - st.price[j] - 1) {
        fail(round, "eps-happiness", "bidder " + std::to_string(i) + " is not eps-happy against item " +
                        std::to_string(j));
        break;
      }
    }
  }
}

}  // namespace auction
