#include "auction/graph.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

namespace auction {

Epsilon::Epsilon(std::int64_t k) : k_(k) {
  if (k < 2) {
    throw std::invalid_argument("epsilon must be 1/k with integer k >= 2, got k=" +
                                std::to_string(k));
  }
}

Epsilon Epsilon::parse(const std::string& text) {
  if (text.size() < 3 || text[0] != '1' || text[1] != '/') {
    throw std::invalid_argument("epsilon must be written as 1/k, got '" + text + "'");
  }
  std::int64_t k = 0;
  const char* first = text.data() + 2;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, k);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("epsilon must be written as 1/k, got '" + text + "'");
  }
  return Epsilon(k);
}

std::int64_t BipartiteInstance::sum_bidder_capacity() const {
  if (b_l.empty()) return n_l;
  std::int64_t total = 0;
  for (auto b : b_l) total = checked_add(total, b);
  return total;
}

void BipartiteInstance::validate() const {
  if (n_l < 0 || n_r < 0) throw InstanceError("negative vertex count");
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    if (e.bidder < 0 || e.bidder >= n_l) {
      throw InstanceError("bidder id " + std::to_string(e.bidder) + " out of range");
    }
    if (e.item < 0 || e.item >= n_r) {
      throw InstanceError("item id " + std::to_string(e.item) + " out of range");
    }
    if (e.weight <= 0) {
      throw InstanceError("edge (" + std::to_string(e.bidder) + "," + std::to_string(e.item) +
                          ") has non-positive weight");
    }
    auto key = (static_cast<std::uint64_t>(e.bidder) << 32) | static_cast<std::uint32_t>(e.item);
    if (!seen.insert(key).second) {
      throw InstanceError("duplicate edge (" + std::to_string(e.bidder) + "," +
                          std::to_string(e.item) + ")");
    }
  }
  if (!b_l.empty()) {
    if (static_cast<std::int32_t>(b_l.size()) != n_l) throw InstanceError("b_l size mismatch");
    for (auto b : b_l) {
      if (b < 1 || b > std::max(n_r, 1)) throw InstanceError("bidder capacity out of range");
    }
  }
  if (!b_r.empty()) {
    if (static_cast<std::int32_t>(b_r.size()) != n_r) throw InstanceError("b_r size mismatch");
    for (auto b : b_r) {
      if (b < 1 || b > std::max(n_l, 1)) throw InstanceError("item capacity out of range");
    }
  }
}

BipartiteInstance make_instance(std::int32_t n_l, std::int32_t n_r, std::vector<Edge> edges,
                                std::vector<std::int32_t> b_l, std::vector<std::int32_t> b_r) {
  BipartiteInstance inst{n_l, n_r, std::move(edges), std::move(b_l), std::move(b_r)};
  inst.validate();
  return inst;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw CapacityError("exact arithmetic overflow in multiplication");
  }
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw CapacityError("exact arithmetic overflow in addition");
  }
  return out;
}

std::int64_t checked_pow(std::int64_t base, std::int32_t exp) {
  std::int64_t out = 1;
  for (std::int32_t i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

std::int32_t ceil_log_ratio(std::int64_t base, std::int64_t lhs, std::int64_t rhs) {
  std::int32_t s = 0;
  std::int64_t acc = lhs;
  while (acc < rhs) {
    ++s;
    // An overflowing product is certainly past rhs.
    if (__builtin_mul_overflow(acc, base, &acc)) break;
  }
  return s;
}

std::int32_t prune_exponent(std::int64_t k, std::int64_t m, Weight w_min, Weight w_max) {
  // ceil(log_k min(m, W)) = min(ceil(log_k m), ceil(log_k W)) since both maps are monotone.
  const std::int32_t s_m = ceil_log_ratio(k, 1, m);
  const std::int32_t s_w = ceil_log_ratio(k, w_min, w_max);
  return std::min(s_m, s_w) + 1;
}

bool survives_prune(Weight w, Weight w_max, std::int64_t k, std::int32_t t) {
  std::int64_t lhs = w;
  for (std::int32_t i = 0; i < t; ++i) {
    if (lhs >= w_max) return true;
    if (__builtin_mul_overflow(lhs, k, &lhs)) return true;
  }
  return lhs >= w_max;
}

std::int32_t ScaledGraph::surviving_log_ratio() const {
  return ceil_log_ratio(eps.k(), w_min_surviving, w_max);
}

ScaledGraph scale_and_prune(const BipartiteInstance& inst, Epsilon eps) {
  if (inst.edges.empty()) throw InstanceError("no edges");
  ScaledGraph out;
  out.eps = eps;
  out.w_max = 0;
  out.w_min_original = inst.edges.front().weight;
  for (const auto& e : inst.edges) {
    if (e.weight < 1) throw InstanceError("edge weights must be >= 1");
    out.w_max = std::max(out.w_max, e.weight);
    out.w_min_original = std::min(out.w_min_original, e.weight);
  }
  // The largest price is below (1 + eps) * k * w_max base units; reject up front
  // if that cannot be carried.
  checked_mul(checked_mul(eps.k() + 1, out.w_max), 4);

  out.prune_exponent = prune_exponent(eps.k(), static_cast<std::int64_t>(inst.edges.size()),
                                      out.w_min_original, out.w_max);
  out.instance.n_l = inst.n_l;
  out.instance.n_r = inst.n_r;
  out.instance.b_l = inst.b_l;
  out.instance.b_r = inst.b_r;
  out.w_min_surviving = out.w_max;
  for (const auto& e : inst.edges) {
    if (survives_prune(e.weight, out.w_max, eps.k(), out.prune_exponent)) {
      out.instance.edges.push_back(e);
      out.w_min_surviving = std::min(out.w_min_surviving, e.weight);
    } else {
      ++out.pruned;
    }
  }
  return out;
}

}  // namespace auction
