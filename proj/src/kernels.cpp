#include "auction/kernels.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace auction {

std::size_t Subgraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& b : bidders) total += b.candidates.size();
  return total;
}

namespace {

bool candidate_less(const Candidate& a, const Candidate& b) {
  if (a.price != b.price) return a.price < b.price;
  return a.item < b.item;
}

/// Bidder visiting order and per-bidder candidate order for the greedy scans.
std::vector<BidderDemand> ordered_copy(const Subgraph& sub, ScanOrder order, std::uint64_t seed) {
  std::vector<BidderDemand> bidders = sub.bidders;
  if (order == ScanOrder::Deterministic) {
    std::sort(bidders.begin(), bidders.end(),
              [](const auto& a, const auto& b) { return a.bidder < b.bidder; });
    for (auto& b : bidders) std::sort(b.candidates.begin(), b.candidates.end(), candidate_less);
  } else {
    std::mt19937_64 rng(seed);
    std::shuffle(bidders.begin(), bidders.end(), rng);
    for (auto& b : bidders) std::shuffle(b.candidates.begin(), b.candidates.end(), rng);
  }
  return bidders;
}

struct Occupancy {
  std::vector<char> bidder;
  std::vector<char> item;

  explicit Occupancy(const Subgraph& sub)
      : bidder(static_cast<std::size_t>(sub.n_bidders), 0),
        item(static_cast<std::size_t>(sub.n_items), 0) {}
};

void greedy_into(const std::vector<BidderDemand>& bidders, Occupancy& occ, KernelMatching& out) {
  for (const auto& b : bidders) {
    if (occ.bidder[b.bidder]) continue;
    for (const auto& c : b.candidates) {
      if (occ.item[c.item]) continue;
      occ.bidder[b.bidder] = 1;
      occ.item[c.item] = 1;
      out.pairs.emplace_back(b.bidder, c.item);
      break;
    }
  }
}

void proposals_into(const std::vector<BidderDemand>& bidders, Occupancy& occ, std::mt19937_64& rng,
                    KernelMatching& out) {
  std::vector<ItemId> free_items;
  std::map<ItemId, BidderId> offers;
  while (true) {
    offers.clear();
    std::int64_t sent = 0;
    for (const auto& b : bidders) {
      if (occ.bidder[b.bidder]) continue;
      free_items.clear();
      for (const auto& c : b.candidates) {
        if (!occ.item[c.item]) free_items.push_back(c.item);
      }
      if (free_items.empty()) continue;
      std::uniform_int_distribution<std::size_t> pick(0, free_items.size() - 1);
      const ItemId target = free_items[pick(rng)];
      ++sent;
      auto [it, inserted] = offers.emplace(target, b.bidder);
      if (!inserted) it->second = std::min(it->second, b.bidder);
    }
    if (sent == 0) break;
    ++out.rounds;
    out.proposals += sent;
    for (const auto& [item, bidder] : offers) {
      occ.item[item] = 1;
      occ.bidder[bidder] = 1;
      out.pairs.emplace_back(bidder, item);
    }
  }
}

std::vector<std::int32_t> distinct_buckets(const Subgraph& sub) {
  std::vector<std::int32_t> buckets;
  for (const auto& b : sub.bidders) {
    for (const auto& c : b.candidates) buckets.push_back(c.bucket);
  }
  std::sort(buckets.begin(), buckets.end());
  buckets.erase(std::unique(buckets.begin(), buckets.end()), buckets.end());
  return buckets;
}

std::vector<BidderDemand> bucket_slice(const std::vector<BidderDemand>& bidders, std::int32_t bucket) {
  std::vector<BidderDemand> out;
  for (const auto& b : bidders) {
    BidderDemand d{b.bidder, {}};
    for (const auto& c : b.candidates) {
      if (c.bucket == bucket) d.candidates.push_back(c);
    }
    if (!d.candidates.empty()) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

KernelMatching greedy_maximal(const Subgraph& sub, ScanOrder order, std::uint64_t seed) {
  KernelMatching out;
  Occupancy occ(sub);
  greedy_into(ordered_copy(sub, order, seed), occ, out);
  return out;
}

KernelMatching randomized_proposal_mm(const Subgraph& sub, std::uint64_t seed) {
  KernelMatching out;
  Occupancy occ(sub);
  std::mt19937_64 rng(seed);
  proposals_into(ordered_copy(sub, ScanOrder::Deterministic, 0), occ, rng, out);
  return out;
}

KernelMatching bucket_ordered_maximal(const Subgraph& sub) {
  KernelMatching out;
  Occupancy occ(sub);
  const auto bidders = ordered_copy(sub, ScanOrder::Deterministic, 0);
  for (auto bucket : distinct_buckets(sub)) greedy_into(bucket_slice(bidders, bucket), occ, out);
  return out;
}

KernelMatching bucket_ordered_randomized(const Subgraph& sub, std::uint64_t seed) {
  KernelMatching out;
  Occupancy occ(sub);
  std::mt19937_64 rng(seed);
  const auto bidders = ordered_copy(sub, ScanOrder::Deterministic, 0);
  for (auto bucket : distinct_buckets(sub)) {
    proposals_into(bucket_slice(bidders, bucket), occ, rng, out);
  }
  return out;
}

KernelMatching edge_order_maximal(std::span<const MatchedPair> edges, std::int32_t n_bidders,
                                  std::int32_t n_items) {
  KernelMatching out;
  std::vector<char> bidder_used(static_cast<std::size_t>(n_bidders), 0);
  std::vector<char> item_used(static_cast<std::size_t>(n_items), 0);
  for (const auto& [i, j] : edges) {
    if (bidder_used[i] || item_used[j]) continue;
    bidder_used[i] = 1;
    item_used[j] = 1;
    out.pairs.emplace_back(i, j);
  }
  return out;
}

KernelMatching nondup_maximal(const Subgraph& sub, const NondupContext& ctx, ScanOrder order,
                              std::uint64_t seed) {
  KernelMatching out;
  Occupancy occ(sub);
  std::unordered_set<std::uint64_t> fresh;
  const auto bidders = ordered_copy(sub, order, seed);

  auto blocked = [&](BidderId bc, ItemId ic) {
    const auto key = pair_key(ctx.bidder_owner[bc], ctx.item_owner[ic]);
    return (ctx.held != nullptr && ctx.held->count(key) != 0) || fresh.count(key) != 0;
  };
  auto sweep = [&](bool unmatched_only) {
    for (const auto& b : bidders) {
      if (occ.bidder[b.bidder]) continue;
      for (const auto& c : b.candidates) {
        if (occ.item[c.item]) continue;
        if (unmatched_only && ctx.item_copy_matched[c.item]) continue;
        if (blocked(b.bidder, c.item)) continue;
        occ.bidder[b.bidder] = 1;
        occ.item[c.item] = 1;
        fresh.insert(pair_key(ctx.bidder_owner[b.bidder], ctx.item_owner[c.item]));
        out.pairs.emplace_back(b.bidder, c.item);
        break;
      }
    }
  };
  sweep(true);
  sweep(false);
  return out;
}

bool is_valid_matching(const KernelMatching& m, std::int32_t n_bidders, std::int32_t n_items) {
  std::vector<char> bidder_used(static_cast<std::size_t>(n_bidders), 0);
  std::vector<char> item_used(static_cast<std::size_t>(n_items), 0);
  for (const auto& [i, j] : m.pairs) {
    if (i < 0 || i >= n_bidders || j < 0 || j >= n_items) return false;
    if (bidder_used[i] || item_used[j]) return false;
    bidder_used[i] = item_used[j] = 1;
  }
  return true;
}

bool is_maximal(const Subgraph& sub, const KernelMatching& m) {
  std::vector<char> bidder_used(static_cast<std::size_t>(sub.n_bidders), 0);
  std::vector<char> item_used(static_cast<std::size_t>(sub.n_items), 0);
  for (const auto& [i, j] : m.pairs) bidder_used[i] = item_used[j] = 1;
  for (const auto& b : sub.bidders) {
    if (bidder_used[b.bidder]) continue;
    for (const auto& c : b.candidates) {
      if (!item_used[c.item]) return false;
    }
  }
  return true;
}

bool is_nondup_maximal(const Subgraph& sub, const NondupContext& ctx, const KernelMatching& m) {
  if (!is_valid_matching(m, sub.n_bidders, sub.n_items)) return false;
  std::vector<char> bidder_used(static_cast<std::size_t>(sub.n_bidders), 0);
  std::vector<char> item_used(static_cast<std::size_t>(sub.n_items), 0);
  std::unordered_set<std::uint64_t> fresh;
  for (const auto& [i, j] : m.pairs) {
    bidder_used[i] = item_used[j] = 1;
    const auto key = pair_key(ctx.bidder_owner[i], ctx.item_owner[j]);
    if (!fresh.insert(key).second) return false;
    if (ctx.held != nullptr && ctx.held->count(key) != 0) return false;
  }
  for (const auto& b : sub.bidders) {
    if (bidder_used[b.bidder]) continue;
    for (const auto& c : b.candidates) {
      if (item_used[c.item]) continue;
      const auto key = pair_key(ctx.bidder_owner[b.bidder], ctx.item_owner[c.item]);
      if (fresh.count(key) != 0) continue;
      if (ctx.held != nullptr && ctx.held->count(key) != 0) continue;
      return false;
    }
  }
  return true;
}

}  // namespace auction
