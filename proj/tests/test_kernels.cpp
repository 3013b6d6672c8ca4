#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_set>

#include "auction/kernels.hpp"

namespace auction {
namespace {

Subgraph make_subgraph(std::int32_t n_b, std::int32_t n_i,
                       std::initializer_list<std::tuple<int, int, int>> edges) {
  Subgraph sub;
  sub.n_bidders = n_b;
  sub.n_items = n_i;
  for (const auto& [i, j, bucket] : edges) {
    auto it = std::find_if(sub.bidders.begin(), sub.bidders.end(),
                           [&](const BidderDemand& d) { return d.bidder == i; });
    if (it == sub.bidders.end()) {
      sub.bidders.push_back({i, {}});
      it = sub.bidders.end() - 1;
    }
    it->candidates.push_back({j, 0, bucket});
  }
  return sub;
}

Subgraph random_subgraph(std::mt19937_64& rng, std::int32_t n, double density) {
  Subgraph sub;
  sub.n_bidders = sub.n_items = n;
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<int> bucket(1, 4);
  for (BidderId i = 0; i < n; ++i) {
    BidderDemand d{i, {}};
    for (ItemId j = 0; j < n; ++j) {
      if (keep(rng)) d.candidates.push_back({j, 0, bucket(rng)});
    }
    if (!d.candidates.empty()) sub.bidders.push_back(std::move(d));
  }
  return sub;
}

TEST(GreedyMaximal, ForcedPair) {
  const auto m = greedy_maximal(make_subgraph(1, 1, {{0, 0, 1}}));
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_EQ(m.pairs[0], (MatchedPair{0, 0}));
}

TEST(GreedyMaximal, StarMatchesLowestBidder) {
  const auto m = greedy_maximal(make_subgraph(2, 1, {{0, 0, 1}, {1, 0, 1}}));
  ASSERT_EQ(m.pairs.size(), 1u);
  EXPECT_EQ(m.pairs[0], (MatchedPair{0, 0}));
}

TEST(GreedyMaximal, PathGetsSizeTwo) {
  const auto sub = make_subgraph(2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 1, 1}});
  const auto m = greedy_maximal(sub);
  EXPECT_EQ(m.pairs, (std::vector<MatchedPair>{{0, 0}, {1, 1}}));
}

TEST(GreedyMaximal, EmptySubgraph) {
  EXPECT_TRUE(greedy_maximal(Subgraph{}).pairs.empty());
  EXPECT_TRUE(randomized_proposal_mm(Subgraph{}, 1).pairs.empty());
  EXPECT_EQ(randomized_proposal_mm(Subgraph{}, 1).rounds, 0);
}

TEST(BucketOrdered, HigherBucketFirst) {
  const auto m = bucket_ordered_maximal(make_subgraph(2, 1, {{0, 0, 1}, {1, 0, 3}}));
  EXPECT_EQ(m.pairs, (std::vector<MatchedPair>{{0, 0}}));
  // Bucket 1 wins even when listed second.
  const auto m2 = bucket_ordered_maximal(make_subgraph(2, 1, {{0, 0, 3}, {1, 0, 1}}));
  EXPECT_EQ(m2.pairs, (std::vector<MatchedPair>{{1, 0}}));
}

TEST(BucketOrdered, DisjointEdgesBothMatched) {
  const auto m = bucket_ordered_maximal(make_subgraph(2, 2, {{0, 0, 1}, {1, 1, 2}}));
  EXPECT_EQ(m.pairs.size(), 2u);
}

TEST(BucketOrdered, TwoPassSweep) {
  const auto m = bucket_ordered_maximal(make_subgraph(2, 2, {{0, 0, 1}, {1, 0, 2}, {1, 1, 2}}));
  ASSERT_EQ(m.pairs.size(), 2u);
  std::set<MatchedPair> got(m.pairs.begin(), m.pairs.end());
  EXPECT_EQ(got, (std::set<MatchedPair>{{0, 0}, {1, 1}}));
}

TEST(BucketOrdered, BucketPriorityProperty) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sub = random_subgraph(rng, 10, 0.3);
    for (const auto& m : {bucket_ordered_maximal(sub), bucket_ordered_randomized(sub, trial)}) {
      EXPECT_TRUE(is_valid_matching(m, sub.n_bidders, sub.n_items));
      EXPECT_TRUE(is_maximal(sub, m));
      // No unmatched-at-the-time edge of a heavier bucket may touch a matched
      // edge of a lighter one: check that every candidate of bucket b has an
      // endpoint matched through bucket <= b.
      std::vector<int> bidder_bucket(10, 99), item_bucket(10, 99);
      for (const auto& [i, j] : m.pairs) {
        for (const auto& d : sub.bidders) {
          if (d.bidder != i) continue;
          for (const auto& c : d.candidates) {
            if (c.item == j) bidder_bucket[i] = item_bucket[j] = c.bucket;
          }
        }
      }
      for (const auto& d : sub.bidders) {
        for (const auto& c : d.candidates) {
          EXPECT_TRUE(bidder_bucket[d.bidder] <= c.bucket || item_bucket[c.item] <= c.bucket);
        }
      }
    }
    EXPECT_EQ(bucket_ordered_maximal(sub).pairs, bucket_ordered_maximal(sub).pairs);
  }
}

TEST(RandomizedProposal, SinglePairOneRound) {
  const auto m = randomized_proposal_mm(make_subgraph(1, 1, {{0, 0, 1}}), 3);
  EXPECT_EQ(m.pairs.size(), 1u);
  EXPECT_EQ(m.rounds, 1);
  EXPECT_EQ(m.proposals, 1);
}

TEST(RandomizedProposal, CompleteGraphRounds) {
  Subgraph sub;
  sub.n_bidders = sub.n_items = 8;
  for (BidderId i = 0; i < 8; ++i) {
    BidderDemand d{i, {}};
    for (ItemId j = 0; j < 8; ++j) d.candidates.push_back({j, 0, 1});
    sub.bidders.push_back(d);
  }
  double total_rounds = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto m = randomized_proposal_mm(sub, seed);
    EXPECT_EQ(m.pairs.size(), 8u);
    EXPECT_TRUE(is_valid_matching(m, 8, 8));
    total_rounds += m.rounds;
  }
  EXPECT_LE(total_rounds / 100.0, 4.0 * std::log2(16.0));
}

TEST(RandomizedProposal, MaximalAndDeterministicPerSeed) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto sub = random_subgraph(rng, 12, 0.25);
    const auto a = randomized_proposal_mm(sub, trial);
    EXPECT_TRUE(is_valid_matching(a, 12, 12));
    EXPECT_TRUE(is_maximal(sub, a));
    EXPECT_EQ(a.pairs, randomized_proposal_mm(sub, trial).pairs);
    const auto g = greedy_maximal(sub, ScanOrder::Seeded, trial);
    EXPECT_TRUE(is_maximal(sub, g));
  }
}

TEST(EdgeOrder, TakesFirstFreeEdge) {
  const std::vector<MatchedPair> edges = {{1, 0}, {0, 0}, {0, 1}, {1, 1}};
  const auto m = edge_order_maximal(edges, 2, 2);
  EXPECT_EQ(m.pairs, (std::vector<MatchedPair>{{1, 0}, {0, 1}}));
}

struct CopySetup {
  std::vector<BidderId> bidder_owner;
  std::vector<ItemId> item_owner;
  std::vector<char> matched;
  std::unordered_set<std::uint64_t> held;
  NondupContext ctx() const { return {bidder_owner, item_owner, matched, &held}; }
};

TEST(Nondup, BicliqueOfCopiesYieldsOnePair) {
  CopySetup s{{0, 0}, {0, 0}, {0, 0}, {}};
  const auto sub = make_subgraph(2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}});
  const auto m = nondup_maximal(sub, s.ctx());
  EXPECT_EQ(m.pairs.size(), 1u);
  EXPECT_TRUE(is_nondup_maximal(sub, s.ctx(), m));
}

TEST(Nondup, DistinctItemsOnePerCopy) {
  CopySetup s{{0, 0}, {0, 1}, {0, 0}, {}};
  const auto sub = make_subgraph(2, 2, {{0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}});
  const auto m = nondup_maximal(sub, s.ctx());
  EXPECT_EQ(m.pairs.size(), 2u);
}

TEST(Nondup, PrefersUnmatchedItemCopy) {
  // Item copy 0 is held by someone else at round start; copy 1 is free.
  CopySetup s{{0}, {0, 1}, {1, 0}, {}};
  const auto sub = make_subgraph(1, 2, {{0, 0, 1}, {0, 1, 1}});
  const auto m = nondup_maximal(sub, s.ctx());
  EXPECT_EQ(m.pairs, (std::vector<MatchedPair>{{0, 1}}));
}

TEST(Nondup, HeldPairIsForbidden) {
  CopySetup s{{0, 0}, {0, 0}, {1, 0}, {}};
  s.held.insert(pair_key(0, 0));
  const auto sub = make_subgraph(2, 2, {{1, 1, 1}});
  EXPECT_TRUE(nondup_maximal(sub, s.ctx()).pairs.empty());
}

TEST(Nondup, RandomizedPropertyCheck) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    // Three originals per side with two copies each.
    CopySetup s{{0, 0, 1, 1, 2, 2}, {0, 0, 1, 1, 2, 2}, {}, {}};
    std::bernoulli_distribution coin(0.3);
    for (int c = 0; c < 6; ++c) s.matched.push_back(coin(rng) ? 1 : 0);
    const auto sub = random_subgraph(rng, 6, 0.5);
    for (const auto& m : {nondup_maximal(sub, s.ctx()),
                          nondup_maximal(sub, s.ctx(), ScanOrder::Seeded, trial)}) {
      EXPECT_TRUE(is_valid_matching(m, 6, 6));
      EXPECT_TRUE(is_nondup_maximal(sub, s.ctx(), m));
      std::set<std::pair<int, int>> originals;
      for (const auto& [i, j] : m.pairs) {
        EXPECT_TRUE(originals.insert({s.bidder_owner[i], s.item_owner[j]}).second);
      }
    }
  }
}

}  // namespace
}  // namespace auction
