#include "auction/mcbm.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "auction/kernels.hpp"

namespace auction {

CopyGraph expand_copies(const BipartiteInstance& inst) {
  CopyGraph cg;
  cg.bidder_offset.assign(static_cast<std::size_t>(inst.n_l) + 1, 0);
  cg.item_offset.assign(static_cast<std::size_t>(inst.n_r) + 1, 0);
  for (BidderId i = 0; i < inst.n_l; ++i) {
    const auto next = checked_add(cg.bidder_offset[i], inst.bidder_capacity(i));
    if (next > INT32_MAX) throw CapacityError("too many bidder copies");
    cg.bidder_offset[i + 1] = static_cast<std::int32_t>(next);
    for (std::int32_t c = 0; c < inst.bidder_capacity(i); ++c) cg.bidder_owner.push_back(i);
  }
  for (ItemId j = 0; j < inst.n_r; ++j) {
    const auto next = checked_add(cg.item_offset[j], inst.item_capacity(j));
    if (next > INT32_MAX) throw CapacityError("too many item copies");
    cg.item_offset[j + 1] = static_cast<std::int32_t>(next);
    for (std::int32_t c = 0; c < inst.item_capacity(j); ++c) cg.item_owner.push_back(j);
  }
  for (const auto& e : inst.edges) {
    cg.copy_edges = checked_add(
        cg.copy_edges, checked_mul(inst.bidder_capacity(e.bidder), inst.item_capacity(e.item)));
  }
  return cg;
}

std::vector<std::int64_t> min_copy_prices(const CopyGraph& cg, const McbmState& st) {
  const auto n_r = cg.item_offset.size() - 1;
  std::vector<std::int64_t> out(n_r, 0);
  for (std::size_t j = 0; j < n_r; ++j) {
    std::int64_t lo = INT64_MAX;
    for (auto c = cg.item_offset[j]; c < cg.item_offset[j + 1]; ++c) lo = std::min(lo, st.price[c]);
    out[j] = lo;
  }
  return out;
}

namespace {

bool holds_item(const CopyGraph& cg, const McbmState& st, BidderId i, ItemId j) {
  for (auto c = cg.bidder_offset[i]; c < cg.bidder_offset[i + 1]; ++c) {
    if (st.assigned[c] != kNone && cg.item_owner[st.assigned[c]] == j) return true;
  }
  return false;
}

Weight edge_weight(const Adjacency& adj, BidderId i, ItemId j) {
  const auto& items = adj.items[i];
  const auto pos = std::lower_bound(items.begin(), items.end(), j) - items.begin();
  return adj.weights[i][pos];
}

}  // namespace

std::vector<ItemId> eligible_items(const CopyGraph& cg, const Adjacency& adj, const McbmState& st,
                                   const std::vector<std::int64_t>& min_price, std::int32_t copy) {
  const BidderId i = cg.bidder_owner[copy];
  std::vector<ItemId> out;
  for (ItemId j : adj.items[i]) {
    if (min_price[j] < st.cutoff[copy]) continue;
    if (holds_item(cg, st, i, j)) continue;
    out.push_back(j);
  }
  return out;
}

std::vector<std::int32_t> find_demand_set(const CopyGraph& cg, const Adjacency& adj,
                                          const McbmState& st, std::int32_t copy) {
  // Only the neighbors' minimum prices matter; computing all of them is fine at desk scale.
  std::vector<std::int64_t> min_price(cg.item_offset.size() - 1, 0);
  const BidderId i = cg.bidder_owner[copy];
  for (ItemId j : adj.items[i]) {
    std::int64_t lo = INT64_MAX;
    for (auto c = cg.item_offset[j]; c < cg.item_offset[j + 1]; ++c) lo = std::min(lo, st.price[c]);
    min_price[j] = lo;
  }
  std::vector<std::int32_t> out;
  std::int64_t best = st.k;
  for (ItemId j : eligible_items(cg, adj, st, min_price, copy)) {
    if (min_price[j] >= st.k || min_price[j] > best) continue;
    if (min_price[j] < best) {
      best = min_price[j];
      out.clear();
    }
    for (auto c = cg.item_offset[j]; c < cg.item_offset[j + 1]; ++c) {
      if (st.price[c] == best) out.push_back(c);
    }
  }
  return out;
}

std::vector<Edge> project_assignment(const BipartiteInstance& inst, const CopyGraph& cg,
                                     const McbmState& st) {
  const Adjacency adj(inst);
  std::vector<Edge> out;
  std::unordered_set<std::uint64_t> seen;
  for (std::int32_t c = 0; c < cg.bidder_copies(); ++c) {
    if (st.assigned[c] == kNone) continue;
    const BidderId i = cg.bidder_owner[c];
    const ItemId j = cg.item_owner[st.assigned[c]];
    if (!seen.insert(pair_key(i, j)).second) continue;
    out.push_back({i, j, edge_weight(adj, i, j)});
  }
  return out;
}

namespace {

/// Non-duplicate greedy driven by the instance edge order; the exact rule the
/// streaming engine follows with its compact per-item state.
KernelMatching stream_order_nondup(const BipartiteInstance& inst, const CopyGraph& cg,
                                   const McbmState& st, const std::vector<std::int64_t>& min_price,
                                   const std::vector<std::int64_t>& demand_price,
                                   const std::unordered_set<std::uint64_t>& held) {
  KernelMatching out;
  std::vector<char> copy_taken(static_cast<std::size_t>(cg.bidder_copies()), 0);
  std::vector<char> item_taken(static_cast<std::size_t>(cg.item_copies()), 0);
  std::unordered_set<std::uint64_t> fresh;

  auto take = [&](std::int32_t bc, std::int32_t ic) {
    copy_taken[bc] = 1;
    item_taken[ic] = 1;
    fresh.insert(pair_key(cg.bidder_owner[bc], cg.item_owner[ic]));
    out.pairs.emplace_back(bc, ic);
  };
  // Untaken copy of j at its round-start minimum price: unowned copies
  // first, then the one whose holder has the lowest copy id.
  auto pick_copy = [&](ItemId j) {
    std::int32_t best = kNone;
    std::int64_t best_key = INT64_MAX;
    for (auto c = cg.item_offset[j]; c < cg.item_offset[j + 1]; ++c) {
      if (item_taken[c] || st.price[c] != min_price[j]) continue;
      const std::int64_t key = st.owner[c] == kNone ? -1 : st.owner[c];
      if (key < best_key) {
        best_key = key;
        best = c;
      }
    }
    return best;
  };
  auto bidding = [&](std::int32_t bc) { return st.assigned[bc] == kNone && !copy_taken[bc]; };

  // Sub-phase 1: only unowned item copies, which all sit at price 0, so only
  // copies with a zero cutoff can demand them.
  for (const auto& e : inst.edges) {
    const auto key = pair_key(e.bidder, e.item);
    if (min_price[e.item] != 0 || held.count(key) || fresh.count(key)) continue;
    for (auto bc = cg.bidder_offset[e.bidder]; bc < cg.bidder_offset[e.bidder + 1]; ++bc) {
      if (!bidding(bc) || st.cutoff[bc] != 0) continue;
      const auto ic = pick_copy(e.item);
      if (ic != kNone) take(bc, ic);
      break;
    }
  }
  // Sub-phase 2: any copy at the minimum price.
  for (const auto& e : inst.edges) {
    const auto key = pair_key(e.bidder, e.item);
    if (held.count(key) || fresh.count(key)) continue;
    const auto p = min_price[e.item];
    for (auto bc = cg.bidder_offset[e.bidder]; bc < cg.bidder_offset[e.bidder + 1]; ++bc) {
      if (!bidding(bc) || demand_price[bc] != p || p < st.cutoff[bc]) continue;
      const auto ic = pick_copy(e.item);
      if (ic != kNone) take(bc, ic);
      break;
    }
  }
  return out;
}

}  // namespace

McbmRun run_mcbm(const BipartiteInstance& inst, Epsilon eps, KernelSpec kernel,
                 const McbmObserver& observer) {
  const Adjacency adj(inst);
  const CopyGraph cg = expand_copies(inst);
  const auto n_bc = static_cast<std::size_t>(cg.bidder_copies());
  const auto n_ic = static_cast<std::size_t>(cg.item_copies());

  McbmState st;
  st.k = eps.k();
  st.price.assign(n_ic, 0);
  st.owner.assign(n_ic, kNone);
  st.assigned.assign(n_bc, kNone);
  st.cutoff.assign(n_bc, 0);

  McbmRun run;
  run.trace.phase_budget = mcm_round_budget(eps);
  std::mt19937_64 seeds(kernel.seed);
  std::int64_t best_size = -1;
  std::vector<Edge> best_edges;

  for (std::int64_t round = 1; round <= run.trace.phase_budget; ++round) {
    ++run.trace.phases;
    const auto min_price = min_copy_prices(cg, st);
    std::unordered_set<std::uint64_t> held;
    std::vector<char> item_copy_matched(n_ic, 0);
    for (std::size_t c = 0; c < n_ic; ++c) {
      if (st.owner[c] == kNone) continue;
      item_copy_matched[c] = 1;
      held.insert(pair_key(cg.bidder_owner[st.owner[c]], cg.item_owner[c]));
    }

    Subgraph sub;
    sub.n_bidders = cg.bidder_copies();
    sub.n_items = cg.item_copies();
    std::vector<std::int64_t> demand_price(n_bc, -1);
    for (std::int32_t bc = 0; bc < cg.bidder_copies(); ++bc) {
      if (st.assigned[bc] != kNone) continue;
      auto d = find_demand_set(cg, adj, st, bc);
      if (d.empty()) continue;
      demand_price[bc] = st.price[d.front()];
      BidderDemand bd{bc, {}};
      for (auto ic : d) bd.candidates.push_back({ic, st.price[ic], 1});
      sub.bidders.push_back(std::move(bd));
    }
    if (sub.bidders.empty()) break;

    const NondupContext ctx{cg.bidder_owner, cg.item_owner, item_copy_matched, &held};
    KernelMatching km;
    switch (kernel.choice) {
      case KernelChoice::Deterministic:
        km = nondup_maximal(sub, ctx);
        break;
      case KernelChoice::Randomized:
        km = nondup_maximal(sub, ctx, ScanOrder::Seeded, seeds());
        break;
      case KernelChoice::StreamOrder:
        km = stream_order_nondup(inst, cg, st, min_price, demand_price, held);
        break;
    }
    ++run.trace.active_phases;
    run.trace.price_announcements += static_cast<std::int64_t>(km.pairs.size());

    for (const auto& [bc, ic] : km.pairs) {
      if (st.owner[ic] != kNone) st.assigned[st.owner[ic]] = kNone;
      st.owner[ic] = bc;
      st.assigned[bc] = ic;
      st.price[ic] += 1;
    }
    for (std::size_t bc = 0; bc < n_bc; ++bc) {
      if (demand_price[bc] >= 0 && st.assigned[bc] == kNone) st.cutoff[bc] += 1;
    }

    auto edges = project_assignment(inst, cg, st);
    if (static_cast<std::int64_t>(edges.size()) > best_size) {
      best_size = static_cast<std::int64_t>(edges.size());
      best_edges = std::move(edges);
      run.result.matching.captured_phase = round;
    }
    if (observer) observer(st, round);
  }

  auto& m = run.result.matching;
  m.edges = std::move(best_edges);
  m.value = static_cast<std::int64_t>(m.edges.size());
  m.valid = is_valid_b_matching(inst, m.edges);
  run.result.bidder_usage.assign(static_cast<std::size_t>(inst.n_l), 0);
  run.result.item_usage.assign(static_cast<std::size_t>(inst.n_r), 0);
  for (const auto& e : m.edges) {
    ++run.result.bidder_usage[e.bidder];
    ++run.result.item_usage[e.item];
  }
  return run;
}

McbmAuditor::McbmAuditor(const BipartiteInstance& inst) : cg_(expand_copies(inst)), adj_(inst) {}

void McbmAuditor::fail(std::int64_t round, const std::string& kind, const std::string& what) {
  ++counts_[kind];
  if (violations_.size() < 64) {
    violations_.push_back("round " + std::to_string(round) + ": " + kind + ": " + what);
  }
}

void McbmAuditor::observe(const McbmState& st, std::int64_t round) {
  ++checks_;
  if (prev_price_.empty()) {
    prev_price_.assign(st.price.size(), 0);
    prev_cutoff_.assign(st.cutoff.size(), 0);
  }
  for (std::size_t c = 0; c < st.price.size(); ++c) {
    if (st.price[c] < prev_price_[c]) fail(round, "monotonicity", "item copy price fell");
    if (st.price[c] > 0 && st.owner[c] == kNone) {
      fail(round, "positive-price-matched", "priced item copy " + std::to_string(c) + " unowned");
    }
    if (st.owner[c] != kNone && st.assigned[st.owner[c]] != static_cast<std::int32_t>(c)) {
      fail(round, "valid-matching", "owner/assignment mismatch");
    }
    prev_price_[c] = st.price[c];
  }
  for (std::size_t bc = 0; bc < st.cutoff.size(); ++bc) {
    if (st.cutoff[bc] < prev_cutoff_[bc]) fail(round, "cutoff-monotonicity", "cutoff fell");
    prev_cutoff_[bc] = st.cutoff[bc];
  }

  const auto n_r = static_cast<ItemId>(cg_.item_offset.size() - 1);
  for (ItemId j = 0; j < n_r; ++j) {
    std::int64_t lo = INT64_MAX;
    std::int64_t hi = INT64_MIN;
    for (auto c = cg_.item_offset[j]; c < cg_.item_offset[j + 1]; ++c) {
      lo = std::min(lo, st.price[c]);
      hi = std::max(hi, st.price[c]);
    }
    if (hi - lo > 1) fail(round, "price-spread", "item " + std::to_string(j) + " spread > eps");
  }

  const auto n_l = static_cast<BidderId>(cg_.bidder_offset.size() - 1);
  for (BidderId i = 0; i < n_l; ++i) {
    std::unordered_set<ItemId> items;
    for (auto bc = cg_.bidder_offset[i]; bc < cg_.bidder_offset[i + 1]; ++bc) {
      if (st.assigned[bc] == kNone) continue;
      if (!items.insert(cg_.item_owner[st.assigned[bc]]).second) {
        fail(round, "one-item-match", "bidder " + std::to_string(i) + " holds two copies of one item");
      }
    }
  }

  const auto min_price = min_copy_prices(cg_, st);
  for (std::int32_t bc = 0; bc < cg_.bidder_copies(); ++bc) {
    const auto a = st.assigned[bc];
    if (a == kNone && !find_demand_set(cg_, adj_, st, bc).empty()) continue;
    const std::int64_t u = a == kNone ? 0 : st.k - st.price[a];
    for (ItemId j : eligible_items(cg_, adj_, st, min_price, bc)) {
      bool happy = true;
      for (auto c = cg_.item_offset[j]; c < cg_.item_offset[j + 1]; ++c) {
        if (u < st.k - st.price[c] - 1) happy = false;
      }
      if (!happy) {
        fail(round, "eps-c-happiness", "bidder copy " + std::to_string(bc) + " vs item " +
                                           std::to_string(j));
        break;
      }
    }
  }
}

}  // namespace auction
