#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "auction/graph.hpp"

namespace auction {

enum class KernelChoice {
  Deterministic,  // ascending-id greedy (bucket-ordered for MWM)
  Randomized,     // seeded proposal kernel
  StreamOrder,    // greedy in input edge order, mirrors the streaming engines
};

std::string to_string(KernelChoice k);
KernelChoice parse_kernel(const std::string& text);

struct KernelSpec {
  KernelChoice choice = KernelChoice::Deterministic;
  std::uint64_t seed = 0;
};

struct MatchingResult {
  std::vector<Edge> edges;        // original ids and weights
  std::int64_t value = 0;         // cardinality or weight in original units
  std::int64_t captured_phase = 0;  // 1-based; 0 when empty
  bool valid = true;
};

/// Blackboard protocol cost of one run.
struct BlackboardTrace {
  std::int64_t rounds = 0;
  std::int64_t bits = 0;
  std::int64_t proposal_messages = 0;
  std::int64_t price_announcements = 0;
  std::int32_t proposal_bits = 0;  // per message
  std::int32_t price_bits = 0;     // per message
};

struct RunTrace {
  std::int64_t phases = 0;        // phases or rounds actually executed
  std::int64_t phase_budget = 0;  // nominal loop bound
  std::int64_t passes = 0;        // streaming only
  std::int64_t peak_words = 0;    // streaming only
  std::int64_t kernel_rounds = 0;  // summed proposal rounds (randomized kernel)
  std::int64_t proposals = 0;
  std::int64_t price_announcements = 0;
  std::int64_t active_phases = 0;  // phases whose demand subgraph was non-empty
  std::optional<BlackboardTrace> blackboard;
};

/// Matching validity for an instance: ids in range, edges exist, capacities respected.
bool is_valid_b_matching(const BipartiteInstance& inst, const std::vector<Edge>& edges);

}  // namespace auction
