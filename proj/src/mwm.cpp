#include "auction/mwm.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "auction/kernels.hpp"

namespace auction {

DemandSpec demand_set_mwm(const MwmState& st, const Adjacency& adj, BidderId i) {
  DemandSpec out;
  const auto& items = adj.items[i];
  const auto& weights = adj.weights[i];
  std::int64_t best = 0;
  for (std::size_t e = 0; e < items.size(); ++e) {
    best = std::max(best, st.k * weights[e] - st.price[items[e]]);
  }
  if (best <= 0) return out;
  out.max_utility = best;
  for (std::size_t e = 0; e < items.size(); ++e) {
    const auto util = st.k * weights[e] - st.price[items[e]];
    if (util > 0 && util >= best - weights[e]) out.items.push_back(items[e]);
  }
  return out;
}

std::int32_t edge_bucket(Weight w, Weight w_max, Epsilon eps) {
  if (w <= 0) throw std::domain_error("edge_bucket needs a positive weight");
  if (w > w_max) throw std::domain_error("edge_bucket needs w <= w_max");
  return 1 + ceil_log_ratio(eps.k(), w, w_max);
}

std::int64_t mwm_phase_budget(Epsilon eps, std::int32_t log_ratio) {
  const std::int64_t s2 = checked_mul(log_ratio, log_ratio);
  const std::int64_t k4 = checked_pow(eps.k(), 4);
  return std::max<std::int64_t>(1, checked_mul(checked_mul(2, checked_add(s2, 2)), k4));
}

MwmRun run_mwm(const ScaledGraph& sg, KernelSpec kernel, const MwmObserver& observer) {
  const auto& inst = sg.instance;
  const Adjacency adj(inst);
  std::vector<std::vector<std::int32_t>> bucket(adj.items.size());
  for (std::size_t i = 0; i < adj.items.size(); ++i) {
    for (Weight w : adj.weights[i]) bucket[i].push_back(edge_bucket(w, sg.w_max, sg.eps));
  }

  MwmState st;
  st.k = sg.eps.k();
  st.w_max = sg.w_max;
  st.price.assign(static_cast<std::size_t>(inst.n_r), 0);
  st.assigned.assign(static_cast<std::size_t>(inst.n_l), kNone);
  st.owner.assign(static_cast<std::size_t>(inst.n_r), kNone);
  std::vector<Weight> held_weight(static_cast<std::size_t>(inst.n_l), 0);

  MwmRun run;
  run.trace.phase_budget = mwm_phase_budget(sg.eps, sg.surviving_log_ratio());
  std::mt19937_64 seeds(kernel.seed);
  Weight best_value = 0;
  std::vector<ItemId> best_assignment;

  for (std::int64_t phase = 1; phase <= run.trace.phase_budget; ++phase) {
    ++run.trace.phases;
    Subgraph sub;
    sub.n_bidders = inst.n_l;
    sub.n_items = inst.n_r;
    for (BidderId i = 0; i < inst.n_l; ++i) {
      if (st.assigned[i] != kNone) continue;
      auto d = demand_set_mwm(st, adj, i);
      if (d.items.empty()) continue;
      BidderDemand bd{i, {}};
      for (ItemId j : d.items) {
        const auto pos = std::lower_bound(adj.items[i].begin(), adj.items[i].end(), j) -
                         adj.items[i].begin();
        bd.candidates.push_back({j, st.price[j], bucket[i][pos]});
      }
      sub.bidders.push_back(std::move(bd));
    }
    if (sub.bidders.empty()) break;

    KernelMatching km;
    switch (kernel.choice) {
      case KernelChoice::Deterministic:
        km = bucket_ordered_maximal(sub);
        break;
      case KernelChoice::Randomized:
        km = bucket_ordered_randomized(sub, seeds());
        break;
      case KernelChoice::StreamOrder: {
        // No bucket sweep: the single on-the-fly streaming pass cannot do one.
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
      const auto pos = std::lower_bound(adj.items[i].begin(), adj.items[i].end(), j) -
                       adj.items[i].begin();
      const Weight w = adj.weights[i][pos];
      if (st.owner[j] != kNone) {
        st.assigned[st.owner[j]] = kNone;
        held_weight[st.owner[j]] = 0;
      }
      st.owner[j] = i;
      st.assigned[i] = j;
      held_weight[i] = w;
      st.price[j] = checked_add(st.price[j], sg.increment_units(w));
    }

    Weight value = 0;
    for (Weight w : held_weight) value += w;
    if (value > best_value) {
      best_value = value;
      best_assignment = st.assigned;
      run.result.captured_phase = phase;
    }
    if (observer) observer(st, phase);
  }

  for (BidderId i = 0; i < static_cast<BidderId>(best_assignment.size()); ++i) {
    const ItemId j = best_assignment[i];
    if (j == kNone) continue;
    const auto pos = std::lower_bound(adj.items[i].begin(), adj.items[i].end(), j) -
                     adj.items[i].begin();
    run.result.edges.push_back({i, j, adj.weights[i][pos]});
  }
  run.result.value = best_value;
  run.result.valid = is_valid_b_matching(inst, run.result.edges);
  return run;
}

MwmAuditor::MwmAuditor(const ScaledGraph& sg, std::optional<Weight> optimum)
    : adj_(sg.instance), optimum_(optimum) {}

void MwmAuditor::fail(std::int64_t phase, const std::string& kind, const std::string& what) {
  ++counts_[kind];
  if (violations_.size() < 64) {
    violations_.push_back("phase " + std::to_string(phase) + ": " + kind + ": " + what);
  }
}

void MwmAuditor::observe(const MwmState& st, std::int64_t phase) {
  ++checks_;
  const auto n_l = static_cast<BidderId>(st.assigned.size());
  const auto n_r = static_cast<ItemId>(st.owner.size());
  if (prev_price_.empty()) {
    prev_price_.assign(st.price.size(), 0);
    prev_matched_.assign(st.owner.size(), 0);
  }

  std::int64_t price_sum = 0;
  for (ItemId j = 0; j < n_r; ++j) {
    const auto p = st.price[j];
    const bool is_matched = st.owner[j] != kNone;
    if (p < prev_price_[j]) fail(phase, "monotonicity", "price fell on item " + std::to_string(j));
    if (prev_matched_[j] && !is_matched) {
      fail(phase, "monotonicity", "item " + std::to_string(j) + " became unmatched");
    }
    if (p > 0 && !is_matched) {
      fail(phase, "positive-price-matched", "item " + std::to_string(j) + " priced but unowned");
    }
    price_sum = checked_add(price_sum, p);
    prev_price_[j] = p;
    prev_matched_[j] = is_matched ? 1 : 0;
  }
  max_price_sum_ = std::max(max_price_sum_, price_sum);
  // Prices are in units of 1/(k w_max) of the scaled weight, so the scaled
  // bound sum p <= OPT / w_max reads sum p <= k * OPT here.
  if (optimum_ && price_sum > checked_mul(st.k, *optimum_)) {
    fail(phase, "price-sum", "sum of prices " + std::to_string(price_sum) + " > " +
                                 std::to_string(st.k * *optimum_) + " units");
  }

  // Highest k*w - p over all items, used for non-neighbors (value 0).
  std::int64_t min_price = 0;
  if (n_r > 0) min_price = *std::min_element(st.price.begin(), st.price.end());

  for (BidderId i = 0; i < n_l; ++i) {
    const auto& items = adj_.items[i];
    const auto& weights = adj_.weights[i];
    const ItemId a = st.assigned[i];
    if (a == kNone) {
      const bool no_demand = demand_set_mwm(st, adj_, i).items.empty();
      bool all_priced_out = true;
      for (std::size_t e = 0; e < items.size(); ++e) {
        if (st.k * weights[e] > st.price[items[e]]) all_priced_out = false;
      }
      if (no_demand != all_priced_out) {
        fail(phase, "empty-demand", "bidder " + std::to_string(i) + " demand emptiness mismatch");
      }
      continue;
    }
    const auto pos = std::lower_bound(items.begin(), items.end(), a) - items.begin();
    if (pos == static_cast<std::ptrdiff_t>(items.size()) || items[pos] != a) {
      fail(phase, "valid-matching", "bidder " + std::to_string(i) + " holds a non-neighbor");
      continue;
    }
    if (st.owner[a] != i) fail(phase, "valid-matching", "owner/assignment mismatch");
    const Weight wa = weights[pos];
    const std::int64_t u = st.k * wa - st.price[a];
    const std::int64_t slack = 2 * wa;
    bool happy = u >= -min_price - slack;
    for (std::size_t e = 0; e < items.size() && happy; ++e) {
      if (u < st.k * weights[e] - st.price[items[e]] - slack) happy = false;
    }
    if (!happy) {
      fail(phase, "happiness", "matched bidder " + std::to_string(i) + " is not 2eps v-happy");
    }
  }
}

}  // namespace auction
