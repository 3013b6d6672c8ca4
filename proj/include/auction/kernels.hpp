#pragma once

#include <cstdint>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

#include "auction/graph.hpp"

namespace auction {

/// A demanded item as seen by one bidder. `bucket` is only read by the
/// bucket-ordered kernels (1 = heaviest).
struct Candidate {
  ItemId item = 0;
  std::int64_t price = 0;
  std::int32_t bucket = 1;
};

struct BidderDemand {
  BidderId bidder = 0;
  std::vector<Candidate> candidates;
};

/// Induced demand subgraph: every listed candidate is a neighbor of its bidder.
struct Subgraph {
  std::int32_t n_bidders = 0;
  std::int32_t n_items = 0;
  std::vector<BidderDemand> bidders;

  std::size_t edge_count() const;
};

using MatchedPair = std::pair<BidderId, ItemId>;

struct KernelMatching {
  std::vector<MatchedPair> pairs;
  std::int32_t rounds = 0;       // proposal rounds (randomized kernel)
  std::int64_t proposals = 0;    // proposal messages (randomized kernel)
};

enum class ScanOrder { Deterministic, Seeded };

/// Greedy maximal matching. Deterministic order scans bidders ascending by id
/// and candidates ascending by (price, item id); Seeded shuffles both.
KernelMatching greedy_maximal(const Subgraph& sub, ScanOrder order = ScanOrder::Deterministic,
                              std::uint64_t seed = 0);

/// Folklore proposal algorithm: each round every unmatched bidder proposes to a
/// uniformly random still-free candidate and every item accepts its lowest-id
/// proposer. Runs until maximal.
KernelMatching randomized_proposal_mm(const Subgraph& sub, std::uint64_t seed);

/// Highest bucket first: a maximal matching on bucket-1 edges, then bucket-2
/// edges on the residual graph, and so on.
KernelMatching bucket_ordered_maximal(const Subgraph& sub);

/// Bucket sweep using the randomized proposal kernel inside each bucket.
KernelMatching bucket_ordered_randomized(const Subgraph& sub, std::uint64_t seed);

/// Greedy over an explicit edge sequence: an edge is taken when both
/// endpoints are still free.
KernelMatching edge_order_maximal(std::span<const MatchedPair> edges, std::int32_t n_bidders,
                                  std::int32_t n_items);

inline std::uint64_t pair_key(std::int64_t a, std::int64_t b) {
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

/// Copy-graph context for the non-duplicate kernel. Ids in the subgraph are
/// copy ids; the owner maps give originals.
struct NondupContext {
  std::span<const BidderId> bidder_owner;
  std::span<const ItemId> item_owner;
  std::span<const char> item_copy_matched;          // at round start
  const std::unordered_set<std::uint64_t>* held = nullptr;  // (orig i, orig j) already held
};

/// Non-duplicate maximal matching in two sub-phases: first only currently
/// unmatched item copies, then all of them. Never pairs two copies of one
/// bidder with copies of one item, nor a bidder copy with an item whose copy
/// is already held by a sibling copy.
KernelMatching nondup_maximal(const Subgraph& sub, const NondupContext& ctx,
                              ScanOrder order = ScanOrder::Deterministic, std::uint64_t seed = 0);

bool is_valid_matching(const KernelMatching& m, std::int32_t n_bidders, std::int32_t n_items);

/// No candidate edge left with both endpoints free.
bool is_maximal(const Subgraph& sub, const KernelMatching& m);

/// Maximality under the duplicate rule of the copy graph.
bool is_nondup_maximal(const Subgraph& sub, const NondupContext& ctx, const KernelMatching& m);

}  // namespace auction
