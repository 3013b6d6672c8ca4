#include "auction/streaming.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <optional>
#include <string>

#include "auction/mwm.hpp"

namespace auction {

void EdgeStream::pass(const std::function<void(const Record&)>& visit) {
  traverse(visit);
  ++passes_;
}

void MemoryEdgeStream::traverse(const std::function<void(const Record&)>& visit) {
  const auto& inst = *inst_;
  Record r;
  r.kind = Record::Kind::Header;
  r.a = inst.n_l;
  r.b = inst.n_r;
  r.c = static_cast<std::int64_t>(inst.edges.size());
  visit(r);
  r.kind = Record::Kind::BidderCapacity;
  for (std::size_t i = 0; i < inst.b_l.size(); ++i) {
    r.a = static_cast<std::int64_t>(i);
    r.b = inst.b_l[i];
    visit(r);
  }
  r.kind = Record::Kind::ItemCapacity;
  for (std::size_t j = 0; j < inst.b_r.size(); ++j) {
    r.a = static_cast<std::int64_t>(j);
    r.b = inst.b_r[j];
    visit(r);
  }
  r.kind = Record::Kind::Edge;
  for (const auto& e : inst.edges) {
    r.a = e.bidder;
    r.b = e.item;
    r.c = e.weight;
    visit(r);
  }
}

namespace {

void visit_lines(std::istream& in, const std::function<void(const Record&)>& visit) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const Record r = parse_record(line, line_no);
    if (r.kind != Record::Kind::Blank) visit(r);
  }
}

}  // namespace

FileEdgeStream::FileEdgeStream(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::ifstream(path_)) throw std::runtime_error("cannot open " + path_.string());
}

void FileEdgeStream::traverse(const std::function<void(const Record&)>& visit) {
  std::ifstream in(path_);
  if (!in) throw ConfigurationError("stream source " + path_.string() + " vanished between passes");
  visit_lines(in, visit);
}

IstreamEdgeStream::IstreamEdgeStream(std::istream& in) : in_(&in), start_(in.tellg()) {}

void IstreamEdgeStream::traverse(const std::function<void(const Record&)>& visit) {
  if (used_) {
    in_->clear();
    if (start_ == std::streampos(-1) || !in_->seekg(start_)) {
      throw ConfigurationError("edge stream is not re-iterable");
    }
  }
  used_ = true;
  visit_lines(*in_, visit);
}

void SpaceAccountant::acquire(std::int64_t words) {
  current_ += words;
  peak_ = std::max(peak_, current_);
}

void SpaceAccountant::release(std::int64_t words) { current_ -= words; }

namespace {

struct Header {
  std::int32_t n_l = 0;
  std::int32_t n_r = 0;
  std::int64_t m = 0;
};

void check_edge(const Record& r, const Header& h) {
  if (r.a < 0 || r.a >= h.n_l || r.b < 0 || r.b >= h.n_r) {
    throw InstanceError("edge (" + std::to_string(r.a + 1) + "," + std::to_string(r.b + 1) +
                        ") out of range in stream");
  }
}

}  // namespace

StreamRun stream_mwm(EdgeStream& stream, Epsilon eps) {
  SpaceAccountant acct;
  const std::int64_t k = eps.k();
  StreamRun run;

  // Pass 1: sizes and weight range.
  Header h;
  bool have_header = false;
  AccountedScalar<Weight> w_max(acct, 0);
  AccountedScalar<Weight> w_min(acct, 0);
  AccountedScalar<std::int64_t> m(acct, 0);
  stream.pass([&](const Record& r) {
    if (r.kind == Record::Kind::Header) {
      h = {static_cast<std::int32_t>(r.a), static_cast<std::int32_t>(r.b), r.c};
      have_header = true;
    } else if (r.kind == Record::Kind::Edge) {
      if (!have_header) throw InstanceError("edge before header in stream");
      check_edge(r, h);
      *w_max = std::max(*w_max, r.c);
      *w_min = *m == 0 ? r.c : std::min(*w_min, r.c);
      ++*m;
    }
  });
  if (*m == 0) throw InstanceError("no edges");
  checked_mul(checked_mul(k + 1, *w_max), 4);
  AccountedScalar<std::int32_t> t(acct, prune_exponent(k, *m, *w_min, *w_max));
  AccountedScalar<Weight> w_min_surviving(acct, *w_max);

  const auto n_l = static_cast<std::size_t>(h.n_l);
  const auto n_r = static_cast<std::size_t>(h.n_r);
  AccountedArray<std::int64_t> price(acct, n_r, 0);
  AccountedArray<std::int32_t> owner(acct, n_r, kNone);
  AccountedArray<char> taken(acct, n_r, 0);
  AccountedArray<std::int32_t> assigned(acct, n_l, kNone);
  AccountedArray<Weight> held(acct, n_l, 0);
  AccountedArray<std::int64_t> best_utility(acct, n_l, 0);
  AccountedArray<char> bidding(acct, n_l, 0);
  AccountedArray<std::int32_t> best_item(acct, n_l, kNone);
  AccountedArray<Weight> best_weight(acct, n_l, 0);
  AccountedScalar<Weight> value(acct, 0);
  AccountedScalar<Weight> best_value(acct, 0);
  AccountedScalar<std::int64_t> budget(acct, 1);

  auto survives = [&](const Record& r) { return survives_prune(r.c, *w_max, k, *t); };

  for (std::int64_t phase = 1; phase <= *budget; ++phase) {
    ++run.trace.phases;
    for (std::size_t i = 0; i < n_l; ++i) {
      bidding[i] = assigned[i] == kNone ? 1 : 0;
      best_utility[i] = 0;
    }
    taken.fill(0);

    // Pass A: U_i for every bidding bidder.
    stream.pass([&](const Record& r) {
      if (r.kind != Record::Kind::Edge || !survives(r)) return;
      if (phase == 1) *w_min_surviving = std::min(*w_min_surviving, r.c);
      if (!bidding[r.a]) return;
      best_utility[r.a] = std::max(best_utility[r.a], k * r.c - price[r.b]);
    });
    if (phase == 1) {
      *budget = mwm_phase_budget(eps, ceil_log_ratio(k, *w_min_surviving, *w_max));
      run.trace.phase_budget = *budget;
    }

    // Pass B: take every edge that lies in D_i while both ends are free.
    std::int64_t reassigned = 0;
    stream.pass([&](const Record& r) {
      if (r.kind != Record::Kind::Edge || !survives(r)) return;
      const auto i = static_cast<std::size_t>(r.a);
      const auto j = static_cast<std::size_t>(r.b);
      if (!bidding[i] || taken[j] || best_utility[i] <= 0) return;
      const std::int64_t util = k * r.c - price[j];
      if (util <= 0 || util < best_utility[i] - r.c) return;
      if (owner[j] != kNone) {
        *value -= held[owner[j]];
        assigned[owner[j]] = kNone;
        held[owner[j]] = 0;
      }
      owner[j] = static_cast<std::int32_t>(i);
      assigned[i] = static_cast<std::int32_t>(j);
      held[i] = r.c;
      *value += r.c;
      price[j] = checked_add(price[j], r.c);
      taken[j] = 1;
      bidding[i] = 0;
      ++reassigned;
    });
    if (reassigned == 0) break;
    ++run.trace.active_phases;
    run.trace.price_announcements += reassigned;

    if (*value > *best_value) {
      *best_value = *value;
      for (std::size_t i = 0; i < n_l; ++i) {
        best_item[i] = assigned[i];
        best_weight[i] = held[i];
      }
      run.result.captured_phase = phase;
    }
  }

  for (std::size_t i = 0; i < n_l; ++i) {
    if (best_item[i] == kNone) continue;
    run.result.edges.push_back({static_cast<BidderId>(i), best_item[i], best_weight[i]});
  }
  run.result.value = *best_value;
  run.trace.passes = stream.passes();
  run.trace.peak_words = acct.peak();
  return run;
}

StreamMcbmRun stream_mcbm(EdgeStream& stream, Epsilon eps) {
  SpaceAccountant acct;
  const std::int64_t k = eps.k();
  StreamMcbmRun run;

  // Pass 1: header, capacities, edge count.
  Header h;
  bool have_header = false;
  std::optional<AccountedArray<std::int32_t>> b_l;
  std::optional<AccountedArray<std::int32_t>> b_r;
  AccountedScalar<std::int64_t> m(acct, 0);
  stream.pass([&](const Record& r) {
    switch (r.kind) {
      case Record::Kind::Header:
        h = {static_cast<std::int32_t>(r.a), static_cast<std::int32_t>(r.b), r.c};
        have_header = true;
        b_l.emplace(acct, static_cast<std::size_t>(h.n_l), 1);
        b_r.emplace(acct, static_cast<std::size_t>(h.n_r), 1);
        break;
      case Record::Kind::BidderCapacity:
      case Record::Kind::ItemCapacity: {
        if (!have_header) throw InstanceError("capacity before header in stream");
        const bool bidder = r.kind == Record::Kind::BidderCapacity;
        auto& caps = bidder ? *b_l : *b_r;
        const auto other = bidder ? h.n_r : h.n_l;
        if (r.a < 0 || r.a >= static_cast<std::int64_t>(caps.size()) || r.b < 1 ||
            r.b > std::max(other, 1)) {
          throw InstanceError("capacity line out of range in stream");
        }
        caps[static_cast<std::size_t>(r.a)] = static_cast<std::int32_t>(r.b);
        break;
      }
      case Record::Kind::Edge:
        if (!have_header) throw InstanceError("edge before header in stream");
        check_edge(r, h);
        ++*m;
        break;
      case Record::Kind::Blank:
        break;
    }
  });
  if (!have_header) throw InstanceError("stream has no header");

  const auto n_l = static_cast<std::size_t>(h.n_l);
  const auto n_r = static_cast<std::size_t>(h.n_r);
  AccountedArray<std::int32_t> offset(acct, n_l + 1, 0);
  for (std::size_t i = 0; i < n_l; ++i) {
    const auto next = checked_add(offset[i], (*b_l)[i]);
    if (next > INT32_MAX) throw CapacityError("too many bidder copies");
    offset[i + 1] = static_cast<std::int32_t>(next);
  }
  const auto n_bc = static_cast<std::size_t>(offset[n_l]);

  // Per item: the two price levels present among its copies and their counts.
  AccountedArray<std::int64_t> min_p(acct, n_r, 0);
  AccountedArray<std::int32_t> cnt_min(acct, n_r, 0);
  AccountedArray<std::int64_t> max_p(acct, n_r, 0);
  AccountedArray<std::int32_t> cnt_max(acct, n_r, 0);
  AccountedArray<std::int32_t> taken(acct, n_r, 0);
  AccountedArray<std::int32_t> head(acct, n_r, kNone);  // holders list
  for (std::size_t j = 0; j < n_r; ++j) cnt_min[j] = cnt_max[j] = (*b_r)[j];

  // Per bidder copy.
  AccountedArray<std::int32_t> held_item(acct, n_bc, kNone);
  AccountedArray<std::int64_t> held_price(acct, n_bc, 0);
  AccountedArray<Weight> held_weight(acct, n_bc, 0);
  AccountedArray<std::int64_t> cutoff(acct, n_bc, 0);
  AccountedArray<std::int64_t> demand(acct, n_bc, -1);
  AccountedArray<std::int32_t> start_item(acct, n_bc, kNone);
  AccountedArray<char> copy_taken(acct, n_bc, 0);
  AccountedArray<std::int32_t> next(acct, n_bc, kNone);
  AccountedArray<std::int32_t> prev(acct, n_bc, kNone);
  AccountedArray<std::int32_t> best_item(acct, n_bc, kNone);
  AccountedArray<Weight> best_weight(acct, n_bc, 0);
  AccountedScalar<std::int64_t> size(acct, 0);
  AccountedScalar<std::int64_t> best_size(acct, -1);
  AccountedScalar<std::int64_t> reassigned(acct, 0);

  auto copies = [&](std::int64_t i) {
    return std::pair<std::int32_t, std::int32_t>{offset[i], offset[i + 1]};
  };
  auto held_at_start = [&](std::int64_t i, std::int64_t j) {
    const auto [lo, hi] = copies(i);
    for (auto bc = lo; bc < hi; ++bc) {
      if (start_item[bc] == j) return true;
    }
    return false;
  };
  auto fresh = [&](std::int64_t i, std::int64_t j) {
    const auto [lo, hi] = copies(i);
    for (auto bc = lo; bc < hi; ++bc) {
      if (copy_taken[bc] && held_item[bc] == j) return true;
    }
    return false;
  };
  auto bidding = [&](std::int32_t bc) { return start_item[bc] == kNone && !copy_taken[bc]; };
  auto available = [&](std::int64_t j) { return cnt_min[j] - taken[j] > 0; };
  auto unlink = [&](std::int32_t bc, std::int64_t j) {
    if (prev[bc] != kNone) next[prev[bc]] = next[bc];
    else head[j] = next[bc];
    if (next[bc] != kNone) prev[next[bc]] = prev[bc];
    next[bc] = prev[bc] = kNone;
  };
  auto link = [&](std::int32_t bc, std::int64_t j) {
    next[bc] = head[j];
    prev[bc] = kNone;
    if (head[j] != kNone) prev[head[j]] = bc;
    head[j] = bc;
  };
  // Takes a copy of j at its round-start minimum price: an unowned copy when
  // that price is 0, otherwise the copy held by the lowest-id holder.
  auto take = [&](std::int32_t bc, std::int64_t j, Weight w) {
    const auto p = min_p[j];
    if (p > 0) {
      std::int32_t victim = kNone;
      for (auto h2 = head[j]; h2 != kNone; h2 = next[h2]) {
        if (held_price[h2] == p && (victim == kNone || h2 < victim)) victim = h2;
      }
      if (victim == kNone) throw std::logic_error("price summary out of sync with holders");
      unlink(victim, j);
      held_item[victim] = kNone;
      held_price[victim] = 0;
      held_weight[victim] = 0;
      --*size;
    }
    held_item[bc] = static_cast<std::int32_t>(j);
    held_price[bc] = p + 1;
    held_weight[bc] = w;
    link(bc, j);
    copy_taken[bc] = 1;
    ++taken[j];
    ++*size;
    ++*reassigned;
  };

  run.trace.phase_budget = mcm_round_budget(eps);
  for (std::int64_t round = 1; round <= run.trace.phase_budget; ++round) {
    ++run.trace.phases;
    for (std::size_t bc = 0; bc < n_bc; ++bc) {
      start_item[bc] = held_item[bc];
      demand[bc] = -1;
      copy_taken[bc] = 0;
    }
    taken.fill(0);
    *reassigned = 0;

    // Pass A: demand prices, and the first sub-phase on unowned copies. An
    // item with an unowned copy has minimum price 0, so only zero-cutoff
    // copies can want it and their demand price is certainly 0.
    stream.pass([&](const Record& r) {
      if (r.kind != Record::Kind::Edge || held_at_start(r.a, r.b)) return;
      const auto p = min_p[r.b];
      const auto [lo, hi] = copies(r.a);
      if (p < k) {
        for (auto bc = lo; bc < hi; ++bc) {
          if (start_item[bc] != kNone || p < cutoff[bc]) continue;
          demand[bc] = demand[bc] < 0 ? p : std::min(demand[bc], p);
        }
      }
      if (p != 0 || fresh(r.a, r.b)) return;
      for (auto bc = lo; bc < hi; ++bc) {
        if (!bidding(bc) || cutoff[bc] != 0) continue;
        if (available(r.b)) take(bc, r.b, r.c);
        break;
      }
    });

    // Pass B: second sub-phase over all copies at the minimum price.
    stream.pass([&](const Record& r) {
      if (r.kind != Record::Kind::Edge) return;
      if (held_at_start(r.a, r.b) || fresh(r.a, r.b)) return;
      const auto p = min_p[r.b];
      const auto [lo, hi] = copies(r.a);
      for (auto bc = lo; bc < hi; ++bc) {
        if (!bidding(bc) || demand[bc] != p || p < cutoff[bc]) continue;
        if (available(r.b)) take(bc, r.b, r.c);
        break;
      }
    });
    if (*reassigned == 0) break;
    ++run.trace.active_phases;
    run.trace.price_announcements += *reassigned;

    for (std::size_t bc = 0; bc < n_bc; ++bc) {
      if (demand[bc] >= 0 && held_item[bc] == kNone) ++cutoff[bc];
    }
    for (std::size_t j = 0; j < n_r; ++j) {
      if (taken[j] == 0) continue;
      const std::int32_t b = (*b_r)[j];
      const std::int64_t lo = min_p[j];
      std::int32_t c_lo = cnt_min[j] - taken[j];
      std::int32_t c_hi = (max_p[j] == lo ? 0 : cnt_max[j]) + taken[j];
      if (max_p[j] > lo + 1) throw std::logic_error("copy price spread exceeded eps");
      if (c_lo == 0) {
        min_p[j] = max_p[j] = lo + 1;
        cnt_min[j] = cnt_max[j] = b;
      } else {
        min_p[j] = lo;
        max_p[j] = lo + 1;
        cnt_min[j] = c_lo;
        cnt_max[j] = c_hi;
      }
    }

    if (*size > *best_size) {
      *best_size = *size;
      for (std::size_t bc = 0; bc < n_bc; ++bc) {
        best_item[bc] = held_item[bc];
        best_weight[bc] = held_weight[bc];
      }
      run.result.matching.captured_phase = round;
    }
  }

  auto& out = run.result;
  out.bidder_usage.assign(n_l, 0);
  out.item_usage.assign(n_r, 0);
  for (std::size_t i = 0; i < n_l; ++i) {
    for (auto bc = offset[i]; bc < offset[i + 1]; ++bc) {
      if (best_item[bc] == kNone) continue;
      out.matching.edges.push_back({static_cast<BidderId>(i), best_item[bc], best_weight[bc]});
      ++out.bidder_usage[i];
      ++out.item_usage[best_item[bc]];
    }
  }
  out.matching.value = static_cast<std::int64_t>(out.matching.edges.size());
  run.trace.passes = stream.passes();
  run.trace.peak_words = acct.peak();
  return run;
}

BlackboardTrace blackboard_trace(const RunTrace& trace, std::int32_t n_r,
                                 std::int64_t price_levels) {
  BlackboardTrace out;
  out.proposal_bits = message_bits(n_r);
  out.price_bits = message_bits(price_levels);
  out.proposal_messages = trace.proposals;
  out.price_announcements = trace.price_announcements;
  out.rounds = trace.kernel_rounds + 2 * trace.active_phases;
  out.bits = trace.proposals * out.proposal_bits + trace.price_announcements * out.price_bits;
  return out;
}

std::int32_t message_bits(std::int64_t x) {
  if (x <= 2) return 1;
  return static_cast<std::int32_t>(std::bit_width(static_cast<std::uint64_t>(x - 1)));
}

}  // namespace auction
