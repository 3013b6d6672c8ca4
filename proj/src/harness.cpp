#include "auction/harness.hpp"

#include <chrono>

#include "auction/mcbm.hpp"
#include "auction/mcm.hpp"
#include "auction/mwm.hpp"
#include "auction/oracles.hpp"

namespace auction {

using nlohmann::json;

std::string to_string(Algo a) {
  switch (a) {
    case Algo::Mcm: return "mcm";
    case Algo::Mwm: return "mwm";
    case Algo::Mcbm: return "mcbm";
  }
  return "?";
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Memory: return "memory";
    case Mode::Stream: return "stream";
    case Mode::Gp: return "gp";
  }
  return "?";
}

Algo parse_algo(const std::string& text) {
  if (text == "mcm") return Algo::Mcm;
  if (text == "mwm") return Algo::Mwm;
  if (text == "mcbm") return Algo::Mcbm;
  throw UsageError("unknown algo '" + text + "'");
}

Mode parse_mode(const std::string& text) {
  if (text == "memory") return Mode::Memory;
  if (text == "stream") return Mode::Stream;
  if (text == "gp") return Mode::Gp;
  throw UsageError("unknown mode '" + text + "'");
}

bool Bound::holds(std::int64_t value, std::int64_t optimum) const {
  __extension__ using wide = __int128;
  return static_cast<wide>(value) * den >= static_cast<wide>(num) * optimum;
}

Bound guaranteed_bound(const RunConfig& cfg) {
  const std::int64_t k = cfg.eps.k();
  if (cfg.mode == Mode::Gp) return {"1/(1+16eps)", k, k + 16};
  if (cfg.algo == Algo::Mwm) {
    if (cfg.kernel == KernelChoice::Randomized) return {"1-7eps", k - 7, k};
    return {"1-6eps", k - 6, k};
  }
  return {"1-2eps", k - 2, k};
}

namespace {

void check_config(RunConfig& cfg) {
  if (cfg.mode == Mode::Stream) {
    if (cfg.algo == Algo::Mcm) throw UsageError("stream mode supports mwm and mcbm only");
    if (cfg.kernel == KernelChoice::Randomized) {
      throw UsageError("stream mode runs the stream-order kernel; --kernel rand is not available");
    }
    cfg.kernel = KernelChoice::StreamOrder;
  }
  if (cfg.mode == Mode::Gp) {
    if (cfg.algo != Algo::Mwm) throw UsageError("gp mode supports mwm only");
    if (cfg.kernel == KernelChoice::Randomized) {
      throw UsageError("gp mode runs the deterministic inner engine");
    }
  }
  if (cfg.gp_schedule && cfg.mode != Mode::Gp) throw UsageError("--gp-schedule needs --mode gp");
}

json audit_json(std::int64_t checks, const std::map<std::string, std::int64_t>& counts,
                const std::vector<std::string>& samples) {
  std::int64_t total = 0;
  json by_kind = json::object();
  for (const auto& [kind, n] : counts) {
    by_kind[kind] = n;
    total += n;
  }
  return json{{"ran", true},
              {"checks", checks},
              {"violations", total},
              {"by_property", by_kind},
              {"samples", samples},
              {"passed", total == 0}};
}

json edges_json(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const auto& e : edges) out.push_back({e.bidder + 1, e.item + 1, e.weight});
  return out;
}

}  // namespace

RunOutcome execute_run(const BipartiteInstance& inst, const RunConfig& cfg_in, EdgeStream* stream) {
  RunConfig cfg = cfg_in;
  check_config(cfg);
  const auto started = std::chrono::steady_clock::now();

  RunOutcome out;
  json audit = nullptr;
  json blackboard = nullptr;
  json extra = json::object();
  MatchingResult result;
  RunTrace trace;
  std::map<std::string, std::int64_t> audit_counts;
  std::vector<std::string> audit_samples;
  std::int64_t audit_checks = 0;
  const std::int64_t k = cfg.eps.k();
  const KernelSpec kernel{cfg.kernel, cfg.seed};

  MemoryEdgeStream memory_stream(inst);
  EdgeStream& source = stream != nullptr ? *stream : memory_stream;

  switch (cfg.algo) {
    case Algo::Mcm: {
      McmAuditor auditor(inst);
      auto run = run_mcm(inst, cfg.eps, kernel, cfg.audit ? auditor.hook() : McmObserver{});
      result = std::move(run.result);
      trace = run.trace;
      if (cfg.audit) {
        audit_checks = auditor.checks();
        audit_counts = auditor.counts();
        audit_samples = auditor.violations();
      }
      if (cfg.kernel == KernelChoice::Randomized) {
        const auto bb = blackboard_trace(trace, inst.n_r, k);
        blackboard = {{"rounds", bb.rounds}, {"bits", bb.bits}};
      }
      break;
    }
    case Algo::Mwm: {
      if (cfg.mode == Mode::Gp) {
        GpOptions options;
        options.streaming = cfg.gp_schedule.has_value();
        if (cfg.gp_schedule) options.schedule = *cfg.gp_schedule;
        auto run = run_transformed_mwm(inst, cfg.eps, options);
        result = run.result;
        trace = run.trace;
        extra["gp"] = {{"copies", run.partition.copies},
                       {"best_copy", run.best_copy},
                       {"schedule", cfg.gp_schedule ? json(to_string(*cfg.gp_schedule)) : json()}};
        if (cfg.audit) {
          Weight removed = 0;
          for (const auto& copy : run.partition.by_copy) {
            removed += copy.removed_weight;
            for (const auto& level : copy.levels) {
              ++audit_checks;
              if (!level_ratio_ok(level, cfg.eps, run.partition.copies)) {
                ++audit_counts["level-ratio"];
              }
            }
          }
          if (removed != run.partition.total_weight) ++audit_counts["removal-partition"];
          // The replaced-weight bound is only claimed for eps < 1/2.
          if (k > 2) {
            for (const auto& copy : run.copies) {
              for (const auto& rec : copy.combined.records) {
                ++audit_checks;
                if (k * rec.replaced_weight > (k + 3) * rec.kept.weight) {
                  ++audit_counts["replaced-weight"];
                }
              }
            }
          }
        }
        break;
      }
      if (cfg.mode == Mode::Stream) {
        auto run = stream_mwm(source, cfg.eps);
        result = std::move(run.result);
        result.valid = is_valid_b_matching(inst, result.edges);
        trace = run.trace;
        if (cfg.audit) {
          ++audit_checks;
          if (trace.passes != 1 + 2 * trace.phases) ++audit_counts["pass-count"];
        }
        break;
      }
      const auto sg = scale_and_prune(inst, cfg.eps);
      std::optional<Weight> optimum;
      if (cfg.audit) optimum = exact_mwm(sg.instance).value;
      MwmAuditor auditor(sg, optimum);
      auto run = run_mwm(sg, kernel, cfg.audit ? auditor.hook() : MwmObserver{});
      result = std::move(run.result);
      trace = run.trace;
      extra["pruned_edges"] = sg.pruned;
      if (cfg.audit) {
        audit_checks = auditor.checks();
        audit_counts = auditor.counts();
        audit_samples = auditor.violations();
        ++audit_checks;
        if (trace.phases > trace.phase_budget) ++audit_counts["phase-budget"];
      }
      if (cfg.kernel == KernelChoice::Randomized) {
        const auto bb = blackboard_trace(trace, inst.n_r, checked_mul(k, sg.w_max));
        blackboard = {{"rounds", bb.rounds}, {"bits", bb.bits}};
      }
      break;
    }
    case Algo::Mcbm: {
      if (cfg.mode == Mode::Stream) {
        auto run = stream_mcbm(source, cfg.eps);
        result = std::move(run.result.matching);
        result.valid = is_valid_b_matching(inst, result.edges);
        trace = run.trace;
        if (cfg.audit) {
          audit_checks += 2;
          if (trace.passes != 1 + 2 * trace.phases) ++audit_counts["pass-count"];
          if (trace.passes > 1 + 2 * mcm_round_budget(cfg.eps)) ++audit_counts["pass-budget"];
          const auto units = inst.sum_bidder_capacity() + inst.n_r;
          extra["words_per_unit"] = static_cast<double>(trace.peak_words) /
                                    static_cast<double>(std::max<std::int64_t>(1, units));
        }
        break;
      }
      McbmAuditor auditor(inst);
      auto run = run_mcbm(inst, cfg.eps, kernel, cfg.audit ? auditor.hook() : McbmObserver{});
      result = std::move(run.result.matching);
      trace = run.trace;
      if (cfg.audit) {
        audit_checks = auditor.checks();
        audit_counts = auditor.counts();
        audit_samples = auditor.violations();
      }
      break;
    }
  }

  if (cfg.audit) {
    ++audit_checks;
    if (trace.phases > trace.phase_budget && cfg.mode != Mode::Gp) ++audit_counts["round-budget"];
    audit = audit_json(audit_checks, audit_counts, audit_samples);
    if (!audit["passed"].get<bool>()) {
      out.exit_code = 1;
      for (const auto& [kind, n] : audit_counts) {
        out.diagnostics.push_back("audit: property '" + kind + "' violated " + std::to_string(n) +
                                  " time(s)");
      }
    }
  }
  if (!result.valid) {
    out.exit_code = 1;
    out.diagnostics.push_back("returned edge set is not a valid matching");
  }

  json oracle = nullptr;
  json ratio = nullptr;
  json bound = nullptr;
  if (cfg.verify) {
    const auto b = guaranteed_bound(cfg);
    std::int64_t opt = 0;
    switch (cfg.algo) {
      case Algo::Mcm: opt = exact_mcm(inst).value; break;
      case Algo::Mwm: opt = exact_mwm(inst).value; break;
      case Algo::Mcbm: opt = exact_mcbm(inst).value; break;
    }
    oracle = opt;
    if (opt > 0) ratio = static_cast<double>(result.value) / static_cast<double>(opt);
    const bool holds = b.holds(result.value, opt);
    bound = {{"label", b.label}, {"holds", holds}};
    if (!holds) {
      out.exit_code = 1;
      out.diagnostics.push_back("approximation bound " + b.label + " violated: value " +
                                std::to_string(result.value) + " vs optimum " +
                                std::to_string(opt));
    }
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  out.report = {
      {"algo", to_string(cfg.algo)},
      {"eps", cfg.eps.str()},
      {"instance",
       {{"n_l", inst.n_l},
        {"n_r", inst.n_r},
        {"m", inst.edges.size()},
        {"sum_b", inst.sum_bidder_capacity()}}},
      {"mode", to_string(cfg.mode)},
      {"kernel", to_string(cfg.kernel)},
      {"seed", cfg.seed},
      {"phases", trace.phases},
      {"phase_budget", trace.phase_budget},
      {"passes", cfg.mode == Mode::Stream || (cfg.mode == Mode::Gp && cfg.gp_schedule)
                     ? json(trace.passes)
                     : json()},
      {"peak_words", cfg.mode == Mode::Stream || (cfg.mode == Mode::Gp && cfg.gp_schedule)
                         ? json(trace.peak_words)
                         : json()},
      {"blackboard", blackboard},
      {"value", result.value},
      {"captured_phase", result.captured_phase},
      {"matching", edges_json(result.edges)},
      {"valid", result.valid},
      {"oracle", oracle},
      {"ratio", ratio},
      {"bound", bound},
      {"audit", audit},
      {"extra", extra},
      {"diagnostics", out.diagnostics},
      {"wall_time_s", wall},
  };
  return out;
}

json strip_timing(json report) {
  report.erase("wall_time_s");
  return report;
}

}  // namespace auction
