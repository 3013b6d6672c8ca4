#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "auction/generate.hpp"
#include "auction/instance_io.hpp"
#include "test_util.hpp"

namespace auction {
namespace {

using testing::build;

TEST(Epsilon, ParsesReciprocalForm) {
  EXPECT_EQ(Epsilon::parse("1/8").k(), 8);
  EXPECT_EQ(Epsilon::parse("1/2").str(), "1/2");
  EXPECT_THROW(Epsilon::parse("0.25"), std::invalid_argument);
  EXPECT_THROW(Epsilon::parse("2/8"), std::invalid_argument);
  EXPECT_THROW(Epsilon::parse("1/1"), std::invalid_argument);
  EXPECT_THROW(Epsilon::parse("1/x"), std::invalid_argument);
  EXPECT_THROW(Epsilon(0), std::invalid_argument);
}

TEST(Instance, ValidateRejectsBadInput) {
  EXPECT_THROW(build(1, 1, {{0, 0, 1}, {0, 0, 2}}), InstanceError);
  EXPECT_THROW(build(1, 1, {{0, 1, 1}}), InstanceError);
  EXPECT_THROW(build(1, 1, {{0, 0, 0}}), InstanceError);
  EXPECT_THROW(build(1, 2, {{0, 0, 1}}, {3}), InstanceError);
  EXPECT_EQ(build(2, 1, {{0, 0, 1}}, {1, 1}).sum_bidder_capacity(), 2);
}

TEST(CheckedArithmetic, DetectsOverflow) {
  EXPECT_EQ(checked_pow(2, 10), 1024);
  EXPECT_THROW(checked_pow(10, 19), CapacityError);
  EXPECT_THROW(checked_add(INT64_MAX, 1), CapacityError);
  EXPECT_EQ(ceil_log_ratio(2, 1, 1), 0);
  EXPECT_EQ(ceil_log_ratio(2, 1, 5), 3);
  EXPECT_EQ(ceil_log_ratio(10, 1, 100), 2);
  EXPECT_EQ(ceil_log_ratio(2, 1, INT64_MAX), 63);
}

TEST(ScaleAndPrune, SingleEdgeScalesToOne) {
  const auto sg = scale_and_prune(build(1, 1, {{0, 0, 5}}), Epsilon(2));
  EXPECT_EQ(sg.w_max, 5);
  EXPECT_EQ(sg.pruned, 0u);
  EXPECT_EQ(sg.instance.edges.size(), 1u);
}

TEST(ScaleAndPrune, DropsEdgeBelowThreshold) {
  // W = 100, m = 2: t = ceil(log2 2) + 1 = 2, threshold 1/4, so 1/100 goes.
  const auto sg = scale_and_prune(build(2, 2, {{0, 0, 100}, {1, 1, 1}}), Epsilon(2));
  EXPECT_EQ(sg.prune_exponent, 2);
  EXPECT_EQ(sg.pruned, 1u);
  ASSERT_EQ(sg.instance.edges.size(), 1u);
  EXPECT_EQ(sg.instance.edges[0].weight, 100);
  EXPECT_EQ(sg.w_min_original, 1);
  EXPECT_EQ(sg.w_min_surviving, 100);
}

TEST(ScaleAndPrune, EqualWeightsKeepEverything) {
  for (const std::int64_t k : {2, 3, 8}) {
    const auto sg = scale_and_prune(testing::complete(4, 4, 7), Epsilon(k));
    EXPECT_EQ(sg.pruned, 0u);
    EXPECT_EQ(sg.surviving_log_ratio(), 0);
  }
}

TEST(ScaleAndPrune, RejectsEmptyGraph) {
  EXPECT_THROW(scale_and_prune(build(1, 1, {}), Epsilon(2)), InstanceError);
}

TEST(ScaleAndPrune, RejectsWeightsTooLargeForExactPrices) {
  EXPECT_THROW(scale_and_prune(build(1, 1, {{0, 0, INT64_MAX / 4}}), Epsilon(4)), CapacityError);
}

// The prune threshold depends on m and W of its input, so a second application
// can prune again. With k = 2 and weights {64, 4, 4, 4, 1} the first call keeps
// the 4s (t = 4) and the second drops them (m = 4, t = 3).
TEST(ScaleAndPrune, SecondApplicationCanPruneAgain) {
  const auto inst = build(5, 5, {{0, 0, 64}, {1, 1, 4}, {2, 2, 4}, {3, 3, 4}, {4, 4, 1}});
  const auto once = scale_and_prune(inst, Epsilon(2));
  EXPECT_EQ(once.prune_exponent, 4);
  EXPECT_EQ(once.instance.edges.size(), 4u);
  const auto twice = scale_and_prune(once.instance, Epsilon(2));
  EXPECT_EQ(twice.prune_exponent, 3);
  EXPECT_EQ(twice.instance.edges.size(), 1u);
}

TEST(ScaleAndPrune, SurvivorsRespectThresholdProperty) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GeneratorConfig cfg;
    cfg.n_l = cfg.n_r = 12;
    cfg.density = 0.4;
    cfg.weights = {1, 100000};
    cfg.law = WeightLaw::LogUniform;
    cfg.seed = seed;
    const auto inst = generate_random(cfg);
    for (const std::int64_t k : {2, 4, 8}) {
      const auto sg = scale_and_prune(inst, Epsilon(k));
      EXPECT_EQ(sg.instance.edges.size() + sg.pruned, inst.edges.size());
      for (const auto& e : inst.edges) {
        // w * k^t >= w_max decides survival.
        bool survives = false;
        __extension__ using wide = unsigned __int128;
        wide lhs = static_cast<wide>(e.weight);
        for (int s = 0; s < sg.prune_exponent; ++s) lhs *= static_cast<wide>(k);
        survives = lhs >= static_cast<wide>(sg.w_max);
        const bool kept = std::find(sg.instance.edges.begin(), sg.instance.edges.end(), e) !=
                          sg.instance.edges.end();
        EXPECT_EQ(kept, survives);
      }
      // Pruning never reorders: survivors keep input order.
      std::size_t pos = 0;
      for (const auto& e : inst.edges) {
        if (pos < sg.instance.edges.size() && sg.instance.edges[pos] == e) ++pos;
      }
      EXPECT_EQ(pos, sg.instance.edges.size());
    }
  }
}

TEST(InstanceIo, ReadsHeaderEdgesAndCapacities) {
  std::istringstream in("c comment\np bm 2 2 2\nb l 2 2\ne 1 1 5\n\ne 2 2 3\n");
  const auto inst = read_instance(in);
  EXPECT_EQ(inst.n_l, 2);
  EXPECT_EQ(inst.n_r, 2);
  ASSERT_EQ(inst.edges.size(), 2u);
  EXPECT_EQ(inst.edges[0], (Edge{0, 0, 5}));
  EXPECT_EQ(inst.edges[1], (Edge{1, 1, 3}));
  ASSERT_EQ(inst.b_l.size(), 2u);
  EXPECT_EQ(inst.b_l[1], 2);
  EXPECT_EQ(inst.b_l[0], 1);
  EXPECT_TRUE(inst.b_r.empty());
}

TEST(InstanceIo, CapacityLineSetsEntry) {
  std::istringstream in("p bm 2 4 1\nb l 1 3\ne 1 1 1\n");
  EXPECT_EQ(read_instance(in).b_l[0], 3);
}

TEST(InstanceIo, ErrorsNameTheLine) {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_instance(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("p bm 2 2 2\ne 1 1 1\ne 1 1 2\n"), 3u);
  EXPECT_EQ(line_of("p bm 2 2 1\ne 3 1 1\n"), 2u);
  EXPECT_EQ(line_of("p bm 2 2 1\ne 1 x 1\n"), 2u);
  EXPECT_EQ(line_of("e 1 1 1\n"), 1u);
  EXPECT_EQ(line_of("p bm 2 2 1\ne 1 1 0\n"), 2u);
  EXPECT_EQ(line_of("p bm 2 2 1\nq\n"), 2u);
  EXPECT_EQ(line_of("p bm 1 1 1\nb l 1 2\n"), 2u);
  EXPECT_GT(line_of("p bm 2 2 3\ne 1 1 1\n"), 0u);
  std::istringstream empty("");
  EXPECT_THROW(read_instance(empty), ParseError);
}

TEST(InstanceIo, RoundTrip) {
  GeneratorConfig cfg;
  cfg.n_l = 9;
  cfg.n_r = 7;
  cfg.density = 0.5;
  cfg.weights = {1, 1000};
  cfg.bidder_capacity = {1, 3};
  cfg.item_capacity = {1, 2};
  cfg.seed = 11;
  const auto inst = generate_random(cfg);
  std::stringstream buf;
  write_instance(inst, buf);
  EXPECT_EQ(read_instance(buf), inst);
}

TEST(Generator, FullDensityGivesCompleteGraph) {
  GeneratorConfig cfg;
  cfg.n_l = cfg.n_r = 2;
  cfg.density = 1.0;
  cfg.seed = 5;
  const auto inst = generate_random(cfg);
  EXPECT_EQ(inst.edges.size(), 4u);
  for (const auto& e : inst.edges) EXPECT_EQ(e.weight, 1);
}

TEST(Generator, DeterministicAndInRange) {
  GeneratorConfig cfg;
  cfg.n_l = cfg.n_r = 10;
  cfg.density = 0.3;
  cfg.weights = {1, 100};
  cfg.bidder_capacity = {1, 3};
  cfg.seed = 42;
  const auto a = generate_random(cfg);
  EXPECT_EQ(a, generate_random(cfg));
  for (const auto& e : a.edges) {
    EXPECT_GE(e.weight, 1);
    EXPECT_LE(e.weight, 100);
  }
  for (auto b : a.b_l) {
    EXPECT_GE(b, 1);
    EXPECT_LE(b, 3);
  }
  cfg.seed = 43;
  EXPECT_NE(a, generate_random(cfg));
}

TEST(Generator, TwoPointAndLogUniformLaws) {
  GeneratorConfig cfg;
  cfg.n_l = cfg.n_r = 16;
  cfg.density = 0.5;
  cfg.weights = {1, 10000};
  cfg.law = WeightLaw::TwoPoint;
  for (const auto& e : generate_random(cfg).edges) EXPECT_TRUE(e.weight == 1 || e.weight == 10000);
  cfg.law = WeightLaw::LogUniform;
  cfg.weights = {1, 1000000};
  for (const auto& e : generate_random(cfg).edges) {
    EXPECT_GE(e.weight, 1);
    EXPECT_LE(e.weight, 1000000);
  }
}

TEST(Generator, RejectsBadConfig) {
  GeneratorConfig cfg;
  cfg.density = 0.0;
  EXPECT_THROW(generate_random(cfg), std::invalid_argument);
  cfg.density = 0.5;
  cfg.weights = {5, 2};
  EXPECT_THROW(generate_random(cfg), std::invalid_argument);
}

}  // namespace
}  // namespace auction
