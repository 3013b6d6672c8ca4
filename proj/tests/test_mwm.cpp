#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "auction/generate.hpp"
#include "auction/mwm.hpp"
#include "auction/oracles.hpp"
#include "test_util.hpp"

namespace auction {
namespace {

using testing::build;

MwmState mwm_state(std::int64_t k, Weight w_max, std::vector<std::int64_t> prices,
                   std::int32_t n_l) {
  MwmState st;
  st.k = k;
  st.w_max = w_max;
  st.owner.assign(prices.size(), kNone);
  st.price = std::move(prices);
  st.assigned.assign(static_cast<std::size_t>(n_l), kNone);
  return st;
}

TEST(MwmDemandSet, SlackExample) {
  // w_max = 10, k = 4, base unit 1/40. j1: v = 1, p = 0. j2: v = 1/2, p = 1/10 = 4 units.
  const auto inst = build(1, 2, {{0, 0, 10}, {0, 1, 5}});
  const auto d = demand_set_mwm(mwm_state(4, 10, {0, 4}, 1), Adjacency(inst), 0);
  ASSERT_TRUE(d.max_utility.has_value());
  EXPECT_EQ(*d.max_utility, 40);
  EXPECT_EQ(d.items, (std::vector<ItemId>{0}));
}

TEST(MwmDemandSet, EmptyWhenEveryPriceReachesValue) {
  const auto inst = build(1, 2, {{0, 0, 10}, {0, 1, 5}});
  const auto d = demand_set_mwm(mwm_state(4, 10, {40, 25}, 1), Adjacency(inst), 0);
  EXPECT_FALSE(d.max_utility.has_value());
  EXPECT_TRUE(d.items.empty());
}

TEST(MwmDemandSet, SingleNeighbor) {
  for (const std::int64_t k : {2, 3, 16}) {
    const auto inst = build(1, 1, {{0, 0, 7}});
    const auto d = demand_set_mwm(mwm_state(k, 7, {0}, 1), Adjacency(inst), 0);
    EXPECT_EQ(d.items, (std::vector<ItemId>{0}));
  }
}

TEST(MwmDemandSet, DefinitionProperty) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> price(0, 120);
  GeneratorConfig cfg;
  cfg.n_l = 6;
  cfg.n_r = 8;
  cfg.density = 0.6;
  cfg.weights = {1, 30};
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    cfg.seed = seed;
    const auto inst = generate_random(cfg);
    const Adjacency adj(inst);
    Weight w_max = 0;
    for (const auto& e : inst.edges) w_max = std::max(w_max, e.weight);
    const std::int64_t k = 4;
    std::vector<std::int64_t> prices(8);
    for (auto& p : prices) p = price(rng);
    const auto st = mwm_state(k, w_max, prices, 6);
    for (BidderId i = 0; i < 6; ++i) {
      const auto d = demand_set_mwm(st, adj, i);
      std::int64_t best = 0;
      for (std::size_t t = 0; t < adj.items[i].size(); ++t) {
        best = std::max(best, k * adj.weights[i][t] - prices[adj.items[i][t]]);
      }
      EXPECT_EQ(d.max_utility.has_value(), best > 0);
      std::vector<ItemId> expect;
      for (std::size_t t = 0; t < adj.items[i].size(); ++t) {
        const auto u = k * adj.weights[i][t] - prices[adj.items[i][t]];
        if (u > 0 && u >= best - adj.weights[i][t]) expect.push_back(adj.items[i][t]);
      }
      std::sort(expect.begin(), expect.end());
      auto got = d.items;
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, expect);
    }
  }
}

TEST(EdgeBucket, Examples) {
  EXPECT_EQ(edge_bucket(10, 10, Epsilon(2)), 1);
  EXPECT_EQ(edge_bucket(3, 10, Epsilon(2)), 3);
  // w / w_max = eps^3 exactly lands in bucket 4.
  EXPECT_EQ(edge_bucket(1, 8, Epsilon(2)), 4);
  EXPECT_EQ(edge_bucket(2, 8, Epsilon(2)), 3);
  EXPECT_THROW(edge_bucket(0, 8, Epsilon(2)), std::domain_error);
}

TEST(PhaseBudget, Formula) {
  // W = 1: ceil(4 / eps^4).
  EXPECT_EQ(mwm_phase_budget(Epsilon(2), 0), 64);
  EXPECT_EQ(mwm_phase_budget(Epsilon(4), 0), 1024);
  // s = 2: 2 * (4 + 2) * k^4.
  EXPECT_EQ(mwm_phase_budget(Epsilon(2), 2), 192);
}

TEST(RunMwm, SingleEdge) {
  const auto run = run_mwm(scale_and_prune(build(1, 1, {{0, 0, 7}}), Epsilon(4)));
  EXPECT_EQ(run.result.value, 7);
  ASSERT_EQ(run.result.edges.size(), 1u);
  EXPECT_EQ(run.result.edges[0], (Edge{0, 0, 7}));
}

TEST(RunMwm, TwoByTwoFindsOptimum) {
  const auto inst = build(2, 2, {{0, 0, 10}, {0, 1, 1}, {1, 0, 10}, {1, 1, 1}});
  ASSERT_EQ(exact_mwm(inst).value, 11);
  const auto run = run_mwm(scale_and_prune(inst, Epsilon(16)));
  EXPECT_EQ(run.result.value, 11);
}

TEST(RunMwm, EqualWeightsBehaveLikeCardinality) {
  for (std::int32_t n = 1; n <= 6; ++n) {
    const auto inst = testing::complete(n, n, 3);
    for (const std::int64_t k : {2, 4}) {
      const auto run = run_mwm(scale_and_prune(inst, Epsilon(k)));
      EXPECT_EQ(run.result.value, 3 * n);
      // W = 1 gives the 4 / eps^4 budget.
      EXPECT_LE(run.trace.phases, 4 * k * k * k * k);
    }
  }
}

TEST(RunMwm, UnitWeightPhaseBudgetOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GeneratorConfig cfg;
    cfg.n_l = cfg.n_r = 12;
    cfg.density = 0.3;
    cfg.seed = seed;
    const auto sg = scale_and_prune(generate_random(cfg), Epsilon(2));
    EXPECT_EQ(sg.surviving_log_ratio(), 0);
    EXPECT_LE(run_mwm(sg).trace.phases, 64);
  }
}

TEST(RunMwm, KernelsAuditedAndWithinBounds) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GeneratorConfig cfg;
    cfg.n_l = 9;
    cfg.n_r = 11;
    cfg.density = 0.4;
    cfg.weights = {1, 50};
    cfg.seed = seed;
    const auto inst = generate_random(cfg);
    const auto opt = exact_mwm(inst).value;
    for (const std::int64_t k : {8, 10}) {
      const auto sg = scale_and_prune(inst, Epsilon(k));
      const auto sg_opt = exact_mwm(sg.instance).value;
      for (const auto choice : {KernelChoice::Deterministic, KernelChoice::Randomized,
                                KernelChoice::StreamOrder}) {
        MwmAuditor auditor(sg, sg_opt);
        const auto run = run_mwm(sg, {choice, seed}, auditor.hook());
        EXPECT_TRUE(auditor.violations().empty()) << auditor.violations().front();
        EXPECT_TRUE(run.result.valid);
        const std::int64_t slack = choice == KernelChoice::Randomized ? 7 : 6;
        EXPECT_GE(k * run.result.value, (k - slack) * opt);
        EXPECT_LE(run.trace.phases, run.trace.phase_budget);
        EXPECT_EQ(run.trace.phase_budget, mwm_phase_budget(Epsilon(k), sg.surviving_log_ratio()));
      }
    }
  }
}

// Two bidders value one item at 10 and 9. With eps = 1/2 the price climbs
// 10 -> 19 -> 29 base units, while k * OPT = 20. The auditor must report the
// price-sum property as violated on this instance.
TEST(MwmAuditor, PriceSumCanExceedOptimum) {
  const auto inst = build(2, 1, {{0, 0, 10}, {1, 0, 9}});
  const auto sg = scale_and_prune(inst, Epsilon(2));
  MwmAuditor auditor(sg, exact_mwm(sg.instance).value);
  const auto run = run_mwm(sg, {}, auditor.hook());
  EXPECT_EQ(run.result.value, 10);
  EXPECT_EQ(auditor.max_price_sum(), 29);
  EXPECT_GE(auditor.counts().at("price-sum"), 1);
  EXPECT_EQ(auditor.counts().size(), 1u);
}

TEST(MwmAuditor, FlagsUnhappyMatchedBidder) {
  // Bidder 0 holds the light item at zero price while the heavy one is free.
  const auto inst = build(1, 2, {{0, 0, 10}, {0, 1, 100}});
  const auto sg = scale_and_prune(inst, Epsilon(4));
  MwmAuditor auditor(sg, std::nullopt);
  auto st = mwm_state(4, 100, {0, 0}, 1);
  st.assigned = {0};
  st.owner = {0, kNone};
  auditor.observe(st, 1);
  EXPECT_EQ(auditor.counts().count("happiness"), 1u);
}

TEST(RunMwm, DeterministicTrace) {
  GeneratorConfig cfg;
  cfg.n_l = cfg.n_r = 16;
  cfg.density = 0.3;
  cfg.weights = {1, 100};
  cfg.seed = 9;
  const auto sg = scale_and_prune(generate_random(cfg), Epsilon(8));
  for (const auto choice : {KernelChoice::Deterministic, KernelChoice::Randomized}) {
    const auto a = run_mwm(sg, {choice, 4});
    const auto b = run_mwm(sg, {choice, 4});
    EXPECT_EQ(a.result.edges, b.result.edges);
    EXPECT_EQ(a.trace.phases, b.trace.phases);
    EXPECT_EQ(a.trace.proposals, b.trace.proposals);
  }
}

}  // namespace
}  // namespace auction
