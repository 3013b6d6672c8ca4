#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "auction/graph.hpp"

namespace auction {

struct OracleResult {
  std::int64_t value = 0;   // cardinality or weight
  std::vector<Edge> witness;
};

class OracleSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Refuses instances with n_l * n_r above this many vertex pairs.
inline constexpr std::int64_t kOraclePairLimit = 4'000'000;

/// Maximum cardinality via repeated augmenting paths (Kuhn).
OracleResult exact_mcm(const BipartiteInstance& inst, std::int64_t pair_limit = kOraclePairLimit);

/// Maximum weight via the Hungarian method on the square zero-padded profit matrix.
OracleResult exact_mwm(const BipartiteInstance& inst, std::int64_t pair_limit = kOraclePairLimit);

/// Maximum cardinality b-matching via integral max-flow (Dinic).
OracleResult exact_mcbm(const BipartiteInstance& inst, std::int64_t pair_limit = kOraclePairLimit);

/// Exhaustive reference values for tiny instances (at most 8 + 8 vertices).
/// These enumerate bidder choices with memoization and share nothing with the
/// exact solvers above.
std::int64_t brute_force_mcm(const BipartiteInstance& inst);
std::int64_t brute_force_mwm(const BipartiteInstance& inst);
std::int64_t brute_force_mcbm(const BipartiteInstance& inst);

inline constexpr std::int32_t kBruteForceSide = 8;

}  // namespace auction
