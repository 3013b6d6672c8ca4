#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "auction/generate.hpp"
#include "auction/harness.hpp"
#include "auction/instance_io.hpp"
#include "auction/oracles.hpp"
#include "auction/suite.hpp"

namespace {

using namespace auction;
using nlohmann::json;

constexpr int kExitUsage = 2;

IntRange parse_range(const std::string& text, const char* flag) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const auto v = std::stoll(text);
      return {v, v};
    }
    return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + " expects lo:hi, got '" + text + "'");
  }
}

WeightLaw parse_law(const std::string& text) {
  if (text == "uniform") return WeightLaw::Uniform;
  if (text == "twopoint") return WeightLaw::TwoPoint;
  if (text == "loguniform") return WeightLaw::LogUniform;
  throw UsageError("unknown weight law '" + text + "'");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

struct RunFlags {
  std::string instance;
  std::string algo = "mcm";
  std::string eps = "1/2";
  std::string mode = "memory";
  std::string kernel = "det";
  std::uint64_t seed = 0;
  bool verify = false;
  bool audit = false;
  std::string report;
  std::string gp_schedule;
};

int cmd_run(const RunFlags& f) {
  RunConfig cfg;
  cfg.algo = parse_algo(f.algo);
  try {
    cfg.eps = Epsilon::parse(f.eps);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cfg.mode = parse_mode(f.mode);
  if (f.kernel == "det") {
    cfg.kernel = KernelChoice::Deterministic;
  } else if (f.kernel == "rand") {
    cfg.kernel = KernelChoice::Randomized;
  } else {
    throw UsageError("--kernel must be det or rand");
  }
  cfg.seed = f.seed;
  cfg.verify = f.verify;
  cfg.audit = f.audit;
  if (!f.gp_schedule.empty()) {
    try {
      cfg.gp_schedule = parse_schedule(f.gp_schedule);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  BipartiteInstance inst;
  std::unique_ptr<EdgeStream> stream;
  if (f.instance == "-") {
    if (cfg.mode == Mode::Stream) throw UsageError("stream mode needs a re-readable instance file");
    inst = read_instance(std::cin);
  } else {
    inst = load_instance(f.instance);
    if (cfg.mode == Mode::Stream) stream = std::make_unique<FileEdgeStream>(f.instance);
  }

  const auto outcome = execute_run(inst, cfg, stream.get());
  const auto text = outcome.report.dump(2) + "\n";
  std::cout << text;
  if (!f.report.empty()) write_text(f.report, text);
  for (const auto& d : outcome.diagnostics) std::cerr << "violation: " << d << "\n";
  return outcome.exit_code;
}

struct GenFlags {
  std::int32_t n_l = 8;
  std::int32_t n_r = 8;
  double density = 0.5;
  std::uint64_t seed = 0;
  std::int64_t w_min = 1;
  std::int64_t w_max = 1;
  std::string law = "uniform";
  std::string b_l = "1:1";
  std::string b_r = "1:1";
  std::string out;
};

int cmd_gen(const GenFlags& f) {
  GeneratorConfig cfg;
  cfg.n_l = f.n_l;
  cfg.n_r = f.n_r;
  cfg.density = f.density;
  cfg.seed = f.seed;
  cfg.weights = {f.w_min, f.w_max};
  cfg.law = parse_law(f.law);
  cfg.bidder_capacity = parse_range(f.b_l, "--bl");
  cfg.item_capacity = parse_range(f.b_r, "--br");
  const auto inst = generate_random(cfg);
  if (f.out.empty()) {
    write_instance(inst, std::cout);
  } else {
    save_instance(inst, f.out);
  }
  return 0;
}

int cmd_suite(const std::vector<int>& only, const std::string& out_path) {
  json criteria = json::array();
  bool all_passed = true;
  run_acceptance(only, [&](const CriterionResult& r) {
    std::cerr << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " (" << r.title
              << "): " << r.summary << "\n";
    all_passed = all_passed && r.passed;
    criteria.push_back(to_json(r));
  });
  const json report = {{"passed", all_passed}, {"criteria", criteria}};
  const auto text = report.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_text(out_path, text);
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Auction algorithms for bipartite matching"};
  app.require_subcommand(1);

  RunFlags run;
  auto* run_cmd = app.add_subcommand("run", "Run one engine on an instance file");
  run_cmd->add_option("instance", run.instance, "Instance file, or - for stdin")->required();
  run_cmd->add_option("--algo", run.algo, "mcm | mwm | mcbm");
  run_cmd->add_option("--eps", run.eps, "Approximation parameter 1/k");
  run_cmd->add_option("--mode", run.mode, "memory | stream | gp");
  run_cmd->add_option("--kernel", run.kernel, "det | rand");
  run_cmd->add_option("--seed", run.seed, "Seed for the randomized kernel");
  run_cmd->add_flag("--verify", run.verify, "Compare against the exact oracle");
  run_cmd->add_flag("--audit", run.audit, "Check invariants after every round");
  run_cmd->add_option("--report", run.report, "Also write the JSON report here");
  run_cmd->add_option("--gp-schedule", run.gp_schedule,
                      "gp mode with streamed levels: sequential | concurrent");

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--nl", gen.n_l, "Bidders");
  gen_cmd->add_option("--nr", gen.n_r, "Items");
  gen_cmd->add_option("--density", gen.density, "Edge probability in (0, 1]");
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--wmin", gen.w_min, "Smallest weight");
  gen_cmd->add_option("--wmax", gen.w_max, "Largest weight");
  gen_cmd->add_option("--law", gen.law, "uniform | twopoint | loguniform");
  gen_cmd->add_option("--bl", gen.b_l, "Bidder capacity range lo:hi");
  gen_cmd->add_option("--br", gen.b_r, "Item capacity range lo:hi");
  gen_cmd->add_option("--out", gen.out, "Output file (stdout when omitted)");

  std::vector<int> only;
  std::string suite_out;
  auto* suite_cmd = app.add_subcommand("suite", "Run the acceptance matrix");
  suite_cmd->add_option("--only", only, "Criterion ids to run")->delimiter(',');
  suite_cmd->add_option("--out", suite_out, "Also write the aggregate report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*gen_cmd) return cmd_gen(gen);
    return cmd_suite(only, suite_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
  } catch (const OracleSizeError& e) {
    std::cerr << "oracle refused instance: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}
