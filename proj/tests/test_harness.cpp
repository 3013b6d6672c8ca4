#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "auction/generate.hpp"
#include "auction/harness.hpp"
#include "auction/instance_io.hpp"
#include "auction/suite.hpp"
#include "test_util.hpp"

namespace auction {
namespace {

using nlohmann::json;
using testing::build;

RunConfig config(Algo algo, std::int64_t k, Mode mode = Mode::Memory,
                 KernelChoice kernel = KernelChoice::Deterministic) {
  RunConfig cfg;
  cfg.algo = algo;
  cfg.eps = Epsilon(k);
  cfg.mode = mode;
  cfg.kernel = kernel;
  return cfg;
}

TEST(Bound, ExactComparison) {
  EXPECT_TRUE((Bound{"", 2, 4}.holds(5, 10)));
  EXPECT_FALSE((Bound{"", 3, 4}.holds(7, 10)));
  EXPECT_TRUE((Bound{"", 1, 1}.holds(0, 0)));
  EXPECT_EQ(guaranteed_bound(config(Algo::Mwm, 8)).num, 2);
  EXPECT_EQ(guaranteed_bound(config(Algo::Mwm, 8, Mode::Memory, KernelChoice::Randomized)).num, 1);
  EXPECT_EQ(guaranteed_bound(config(Algo::Mwm, 8, Mode::Gp)).den, 24);
  EXPECT_EQ(guaranteed_bound(config(Algo::Mcbm, 4)).num, 2);
}

TEST(ExecuteRun, ReportSchema) {
  auto cfg = config(Algo::Mwm, 8);
  cfg.verify = true;
  const auto out = execute_run(build(2, 2, {{0, 0, 10}, {0, 1, 1}, {1, 0, 10}, {1, 1, 1}}), cfg);
  const auto& r = out.report;
  EXPECT_EQ(out.exit_code, 0);
  for (const char* key : {"algo", "eps", "instance", "mode", "kernel", "seed", "phases",
                          "phase_budget", "passes", "peak_words", "blackboard", "value",
                          "matching", "oracle", "ratio", "bound", "audit", "wall_time_s"}) {
    EXPECT_TRUE(r.contains(key)) << key;
  }
  EXPECT_EQ(r["eps"], "1/8");
  EXPECT_EQ(r["value"], 11);
  EXPECT_EQ(r["oracle"], 11);
  EXPECT_DOUBLE_EQ(r["ratio"].get<double>(), 1.0);
  EXPECT_TRUE(r["passes"].is_null());
  EXPECT_TRUE(r["audit"].is_null());
}

TEST(ExecuteRun, StreamModeAuditsCounters) {
  const auto inst = make_instance(1, 2, {{0, 0, 1}, {0, 1, 1}}, {2}, {1, 1});
  auto cfg = config(Algo::Mcbm, 4, Mode::Stream);
  cfg.audit = true;
  cfg.verify = true;
  const auto out = execute_run(inst, cfg);
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_EQ(out.report["value"], 2);
  EXPECT_EQ(out.report["kernel"], "stream-order");
  EXPECT_LE(out.report["passes"].get<std::int64_t>(), 65);
  EXPECT_TRUE(out.report["audit"]["passed"].get<bool>());
}

TEST(ExecuteRun, RandomizedKernelReportsBlackboard) {
  auto cfg = config(Algo::Mcm, 2, Mode::Memory, KernelChoice::Randomized);
  const auto out = execute_run(build(1, 1, {{0, 0, 1}}), cfg);
  EXPECT_EQ(out.report["value"], 1);
  EXPECT_EQ(out.report["blackboard"]["bits"], 2);
}

TEST(ExecuteRun, RejectsBadCombinations) {
  const auto inst = build(1, 1, {{0, 0, 1}});
  EXPECT_THROW(execute_run(inst, config(Algo::Mcm, 2, Mode::Stream)), UsageError);
  EXPECT_THROW(execute_run(inst, config(Algo::Mcbm, 2, Mode::Gp)), UsageError);
  EXPECT_THROW(execute_run(inst, config(Algo::Mwm, 2, Mode::Stream, KernelChoice::Randomized)),
               UsageError);
  auto cfg = config(Algo::Mwm, 2);
  cfg.gp_schedule = GpSchedule::Sequential;
  EXPECT_THROW(execute_run(inst, cfg), UsageError);
}

TEST(ExecuteRun, AuditViolationSetsExitCode) {
  // The price-sum property fails on this instance, see the auditor test.
  auto cfg = config(Algo::Mwm, 2);
  cfg.audit = true;
  const auto out = execute_run(build(2, 1, {{0, 0, 10}, {1, 0, 9}}), cfg);
  EXPECT_EQ(out.exit_code, 1);
  EXPECT_FALSE(out.report["audit"]["passed"].get<bool>());
  EXPECT_EQ(out.report["audit"]["by_property"]["price-sum"].get<int>() > 0, true);
  ASSERT_FALSE(out.diagnostics.empty());
}

TEST(ExecuteRun, RepeatableModuloWallTime) {
  GeneratorConfig gen;
  gen.n_l = gen.n_r = 12;
  gen.density = 0.4;
  gen.weights = {1, 1000};
  gen.seed = 3;
  const auto inst = generate_random(gen);
  for (auto cfg : {config(Algo::Mwm, 8), config(Algo::Mwm, 8, Mode::Stream),
                   config(Algo::Mwm, 4, Mode::Gp), config(Algo::Mcm, 4),
                   config(Algo::Mwm, 8, Mode::Memory, KernelChoice::Randomized)}) {
    cfg.verify = true;
    cfg.seed = 17;
    const auto a = strip_timing(execute_run(inst, cfg).report);
    const auto b = strip_timing(execute_run(inst, cfg).report);
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_FALSE(a.contains("wall_time_s"));
  }
}

TEST(Families, SizesAndDeterminism) {
  EXPECT_EQ(mcm_family().size(), 200u);
  EXPECT_EQ(mwm_family().size(), 200u);
  EXPECT_EQ(mcbm_family().size(), 100u);
  EXPECT_EQ(gp_family().size(), 50u);
  EXPECT_EQ(tiny_family().size(), 150u);
  EXPECT_EQ(mwm_family(), mwm_family());
  for (const auto& inst : tiny_family()) {
    EXPECT_LE(inst.n_l, 8);
    EXPECT_LE(inst.n_r, 8);
  }
}

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult cli(const std::string& args) {
  const std::string cmd = std::string(AUCTION_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / "auction_cli_test";
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST_F(Cli, GenIsDeterministic) {
  ASSERT_EQ(cli("gen --nl 4 --nr 4 --density 1 --seed 1 --out " + path("a.txt")).code, 0);
  ASSERT_EQ(cli("gen --nl 4 --nr 4 --density 1 --seed 1 --out " + path("b.txt")).code, 0);
  std::ifstream a(path("a.txt")), b(path("b.txt"));
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(load_instance(path("a.txt")).edges.size(), 16u);
}

TEST_F(Cli, GenRespectsRanges) {
  ASSERT_EQ(cli("gen --nl 10 --nr 10 --density 0.5 --wmin 1 --wmax 100 --bl 1:3 --seed 2 --out " +
                path("g.txt"))
                .code,
            0);
  const auto inst = load_instance(path("g.txt"));
  for (const auto& e : inst.edges) {
    EXPECT_GE(e.weight, 1);
    EXPECT_LE(e.weight, 100);
  }
  ASSERT_EQ(inst.b_l.size(), 10u);
  for (auto b : inst.b_l) {
    EXPECT_GE(b, 1);
    EXPECT_LE(b, 3);
  }
}

TEST_F(Cli, RunVerifyOnTwoByTwo) {
  save_instance(build(2, 2, {{0, 0, 10}, {0, 1, 1}, {1, 0, 10}, {1, 1, 1}}), path("k22.txt"));
  const auto r = cli("run " + path("k22.txt") + " --algo mwm --eps 1/8 --verify --report " +
                     path("report.json"));
  ASSERT_EQ(r.code, 0);
  const auto report = json::parse(r.out);
  EXPECT_DOUBLE_EQ(report["ratio"].get<double>(), 1.0);
  std::ifstream saved(path("report.json"));
  EXPECT_EQ(json::parse(saved), report);
}

TEST_F(Cli, RunSingleEdgeMcm) {
  save_instance(build(1, 1, {{0, 0, 1}}), path("one.txt"));
  const auto r = cli("run " + path("one.txt") + " --algo mcm --eps 1/2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["value"], 1);
}

TEST_F(Cli, RunStreamStarWithAudit) {
  save_instance(make_instance(1, 2, {{0, 0, 1}, {0, 1, 1}}, {2}, {1, 1}), path("star.txt"));
  const auto r = cli("run " + path("star.txt") + " --algo mcbm --eps 1/4 --mode stream --audit");
  ASSERT_EQ(r.code, 0);
  const auto report = json::parse(r.out);
  EXPECT_EQ(report["value"], 2);
  EXPECT_LE(report["passes"].get<int>(), 65);
}

TEST_F(Cli, ViolationExitsWithOne) {
  save_instance(build(2, 1, {{0, 0, 10}, {1, 0, 9}}), path("pair.txt"));
  EXPECT_EQ(cli("run " + path("pair.txt") + " --algo mwm --eps 1/2 --audit").code, 1);
}

TEST_F(Cli, UsageErrorsExitWithTwo) {
  save_instance(build(1, 1, {{0, 0, 1}}), path("one.txt"));
  EXPECT_EQ(cli("run " + path("one.txt") + " --eps 0.5").code, 2);
  EXPECT_EQ(cli("run " + path("one.txt") + " --algo mcm --mode stream").code, 2);
  EXPECT_EQ(cli("run " + path("missing.txt")).code, 2);
  EXPECT_EQ(cli("run " + path("one.txt") + " --unknown").code, 2);
  EXPECT_EQ(cli("gen --density 0").code, 2);
  std::ofstream(path("bad.txt")) << "p bm 1 1 1\ne 1 2 1\n";
  EXPECT_EQ(cli("run " + path("bad.txt")).code, 2);
}

TEST_F(Cli, SuiteSubsetReportsJson) {
  const auto r = cli("suite --only 1,9");
  ASSERT_EQ(r.code, 0);
  const auto report = json::parse(r.out);
  EXPECT_TRUE(report["passed"].get<bool>());
  ASSERT_EQ(report["criteria"].size(), 2u);
  EXPECT_EQ(report["criteria"][1]["id"], 9);
}

}  // namespace
}  // namespace auction
