#include "auction/gupta_peng.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "auction/mwm.hpp"
#include "auction/streaming.hpp"

namespace auction {

std::int32_t gp_bucket(Weight w, Epsilon eps) { return gp_bucket(w, 1, eps); }

std::int32_t gp_bucket(Weight w, Weight w_min, Epsilon eps) {
  if (w_min < 1 || w < w_min) throw std::domain_error("gp_bucket needs w >= w_min >= 1");
  // Largest b with k^b * w_min <= w.
  std::int32_t b = 0;
  std::int64_t lhs = w_min;
  while (true) {
    std::int64_t next = 0;
    if (__builtin_mul_overflow(lhs, eps.k(), &next) || next > w) return b;
    lhs = next;
    ++b;
  }
}

namespace {

std::int32_t floor_div(std::int32_t a, std::int32_t b) {
  std::int32_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

GpPartition gp_partition(const BipartiteInstance& inst, Epsilon eps) {
  GpPartition out;
  out.eps = eps;
  out.copies = static_cast<std::int32_t>(eps.k());
  if (inst.edges.empty()) throw InstanceError("no edges");
  out.w_min = inst.edges.front().weight;
  for (const auto& e : inst.edges) {
    out.w_min = std::min(out.w_min, e.weight);
    out.total_weight = checked_add(out.total_weight, e.weight);
  }
  std::vector<std::int32_t> bucket;
  bucket.reserve(inst.edges.size());
  for (const auto& e : inst.edges) bucket.push_back(gp_bucket(e.weight, out.w_min, eps));

  const std::int32_t C = out.copies;
  for (std::int32_t c = 0; c < C; ++c) {
    GpCopy copy;
    copy.residue = c;
    std::map<std::int32_t, GpLevel> levels;
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
      const auto b = bucket[e];
      if (b % C == c) {
        copy.removed_weight += inst.edges[e].weight;
        ++copy.removed_edges;
        continue;
      }
      const auto level = floor_div(b - c - 1, C);
      auto& lv = levels[level];
      lv.level = level;
      lv.lo_bucket = level * C + c + 1;
      lv.hi_bucket = (level + 1) * C + c - 1;
      lv.edges.push_back(inst.edges[e]);
    }
    for (auto& [_, lv] : levels) copy.levels.push_back(std::move(lv));
    out.by_copy.push_back(std::move(copy));
  }
  return out;
}

bool level_ratio_ok(const GpLevel& level, Epsilon eps, std::int32_t copies) {
  if (level.edges.empty()) return true;
  Weight lo = level.edges.front().weight;
  Weight hi = lo;
  for (const auto& e : level.edges) {
    lo = std::min(lo, e.weight);
    hi = std::max(hi, e.weight);
  }
  std::int64_t bound = lo;
  for (std::int32_t s = 0; s < copies - 1; ++s) {
    if (__builtin_mul_overflow(bound, eps.k(), &bound)) return true;
  }
  return hi < bound;
}

CombineResult gp_combine(std::vector<LevelMatching> levels) {
  std::sort(levels.begin(), levels.end(),
            [](const LevelMatching& a, const LevelMatching& b) { return a.level > b.level; });
  CombineResult out;
  std::map<BidderId, char> bidder_used;
  std::map<ItemId, char> item_used;
  for (std::size_t idx = 0; idx < levels.size(); ++idx) {
    for (const auto& e : levels[idx].edges) {
      if (bidder_used.count(e.bidder) || item_used.count(e.item)) continue;
      bidder_used[e.bidder] = 1;
      item_used[e.item] = 1;
      out.matching.push_back(e);
      out.weight += e.weight;
      CombineRecord rec{e, levels[idx].level, e.weight};
      for (std::size_t lower = idx + 1; lower < levels.size(); ++lower) {
        for (const auto& f : levels[lower].edges) {
          if (f.bidder == e.bidder || f.item == e.item) rec.replaced_weight += f.weight;
        }
      }
      out.records.push_back(rec);
    }
  }
  return out;
}

std::string to_string(GpSchedule s) {
  return s == GpSchedule::Sequential ? "sequential" : "concurrent";
}

GpSchedule parse_schedule(const std::string& text) {
  if (text == "sequential") return GpSchedule::Sequential;
  if (text == "concurrent") return GpSchedule::Concurrent;
  throw std::invalid_argument("unknown gp schedule '" + text + "'");
}

GpRun run_transformed_mwm(const BipartiteInstance& inst, Epsilon eps, GpOptions options) {
  GpRun run;
  run.partition = gp_partition(inst, eps);
  Weight best = -1;
  std::int64_t seq_passes = 0, seq_words = 0, con_passes = 0, con_words = 0;

  for (const auto& copy : run.partition.by_copy) {
    GpCopyResult cr;
    cr.residue = copy.residue;
    std::int64_t copy_max_passes = 0, copy_words = 0;
    for (const auto& level : copy.levels) {
      const BipartiteInstance sub{inst.n_l, inst.n_r, level.edges, {}, {}};
      LevelMatching lm{level.level, {}};
      if (options.streaming) {
        MemoryEdgeStream stream(sub);
        auto sr = stream_mwm(stream, eps);
        lm.edges = std::move(sr.result.edges);
        cr.level_passes.push_back(sr.trace.passes);
        cr.level_words.push_back(sr.trace.peak_words);
        copy_max_passes = std::max(copy_max_passes, sr.trace.passes);
        copy_words += sr.trace.peak_words;
        con_passes = std::max(con_passes, sr.trace.passes);
        con_words += sr.trace.peak_words;
        run.trace.phases += sr.trace.phases;
      } else {
        const auto mr = run_mwm(scale_and_prune(sub, eps));
        lm.edges = mr.result.edges;
        run.trace.phases += mr.trace.phases;
        run.trace.active_phases += mr.trace.active_phases;
      }
      cr.level_matchings.push_back(std::move(lm));
    }
    seq_passes += copy_max_passes;
    seq_words = std::max(seq_words, copy_words);
    cr.combined = gp_combine(cr.level_matchings);
    if (cr.combined.weight > best) {
      best = cr.combined.weight;
      run.best_copy = copy.residue;
    }
    run.copies.push_back(std::move(cr));
  }

  if (options.streaming) {
    // One extra pass up front finds w_min for the bucket boundaries.
    if (options.schedule == GpSchedule::Sequential) {
      run.trace.passes = 1 + seq_passes;
      run.trace.peak_words = seq_words;
    } else {
      run.trace.passes = 1 + con_passes;
      run.trace.peak_words = con_words;
    }
  }
  const auto& chosen = run.copies[static_cast<std::size_t>(run.best_copy)].combined;
  run.result.edges = chosen.matching;
  run.result.value = chosen.weight;
  run.result.valid = is_valid_b_matching(inst, run.result.edges);
  return run;
}

}  // namespace auction
