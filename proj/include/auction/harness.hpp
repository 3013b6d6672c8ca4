#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "auction/graph.hpp"
#include "auction/gupta_peng.hpp"
#include "auction/result.hpp"
#include "auction/streaming.hpp"

namespace auction {

/// Bad flag combination; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Algo { Mcm, Mwm, Mcbm };
enum class Mode { Memory, Stream, Gp };

std::string to_string(Algo a);
std::string to_string(Mode m);
Algo parse_algo(const std::string& text);
Mode parse_mode(const std::string& text);

struct RunConfig {
  Algo algo = Algo::Mcm;
  Epsilon eps{2};
  Mode mode = Mode::Memory;
  KernelChoice kernel = KernelChoice::Deterministic;
  std::uint64_t seed = 0;
  bool verify = false;
  bool audit = false;
  std::optional<GpSchedule> gp_schedule;  // gp mode: streamed inner engine with this schedule
};

struct RunOutcome {
  nlohmann::json report;
  int exit_code = 0;  // 0 ok, 1 bound or audit violation
  std::vector<std::string> diagnostics;
};

/// Numerator and denominator of the guaranteed ratio for a configuration,
/// e.g. (k - 6, k) for the deterministic weighted engine.
struct Bound {
  std::string label;
  std::int64_t num = 1;
  std::int64_t den = 1;
  /// value / optimum >= num / den, exactly.
  bool holds(std::int64_t value, std::int64_t optimum) const;
};

Bound guaranteed_bound(const RunConfig& cfg);

/// Runs one engine on an instance and builds the JSON report. In stream mode
/// `stream` is used when given, otherwise the instance is streamed from memory.
RunOutcome execute_run(const BipartiteInstance& inst, const RunConfig& cfg,
                       EdgeStream* stream = nullptr);

/// Report without the wall-time field, for reproducibility comparisons.
nlohmann::json strip_timing(nlohmann::json report);

}  // namespace auction
