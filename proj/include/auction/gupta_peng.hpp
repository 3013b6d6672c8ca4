#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "auction/graph.hpp"
#include "auction/result.hpp"

namespace auction {

/// Bucket b >= 0 with k^b <= w < k^(b+1). Throws std::domain_error for w < 1.
std::int32_t gp_bucket(Weight w, Epsilon eps);

/// Same bucket for w / w_min, compared exactly.
std::int32_t gp_bucket(Weight w, Weight w_min, Epsilon eps);

struct GpLevel {
  std::int32_t level = 0;      // may be -1 for the buckets below the first removed residue
  std::int32_t lo_bucket = 0;  // inclusive range of buckets covered
  std::int32_t hi_bucket = 0;
  std::vector<Edge> edges;     // original ids and weights, instance order
};

struct GpCopy {
  std::int32_t residue = 0;  // buckets with b mod C == residue are removed
  std::vector<GpLevel> levels;  // ascending level, empty levels omitted
  Weight removed_weight = 0;
  std::size_t removed_edges = 0;
};

struct GpPartition {
  Epsilon eps{2};
  std::int32_t copies = 2;  // C = k
  Weight w_min = 1;
  Weight total_weight = 0;
  std::vector<GpCopy> by_copy;
};

GpPartition gp_partition(const BipartiteInstance& inst, Epsilon eps);

/// Exact check that max / min < k^(C-1) within a level.
bool level_ratio_ok(const GpLevel& level, Epsilon eps, std::int32_t copies);

struct LevelMatching {
  std::int32_t level = 0;
  std::vector<Edge> edges;
};

struct CombineRecord {
  Edge kept;
  std::int32_t level = 0;
  Weight replaced_weight = 0;  // w(e) plus lower-level matched edges touching e
};

struct CombineResult {
  std::vector<Edge> matching;
  Weight weight = 0;
  std::vector<CombineRecord> records;
};

/// Greedy from the highest level down: an edge is kept iff both endpoints are
/// still free.
CombineResult gp_combine(std::vector<LevelMatching> levels);

enum class GpSchedule { Sequential, Concurrent };
std::string to_string(GpSchedule s);
GpSchedule parse_schedule(const std::string& text);

struct GpOptions {
  bool streaming = false;  // inner engine: stream_mwm instead of run_mwm
  GpSchedule schedule = GpSchedule::Sequential;
};

struct GpCopyResult {
  std::int32_t residue = 0;
  std::vector<LevelMatching> level_matchings;
  CombineResult combined;
  std::vector<std::int64_t> level_passes;  // streaming only
  std::vector<std::int64_t> level_words;
};

struct GpRun {
  MatchingResult result;
  RunTrace trace;
  GpPartition partition;
  std::vector<GpCopyResult> copies;
  std::int32_t best_copy = 0;
};

/// Solves every non-empty level with the bounded-ratio engine, combines per
/// copy, and returns the heaviest combined matching.
GpRun run_transformed_mwm(const BipartiteInstance& inst, Epsilon eps, GpOptions options = {});

}  // namespace auction
