#include "auction/result.hpp"

#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "auction/kernels.hpp"

namespace auction {

std::string to_string(KernelChoice k) {
  switch (k) {
    case KernelChoice::Deterministic: return "det";
    case KernelChoice::Randomized: return "rand";
    case KernelChoice::StreamOrder: return "stream-order";
  }
  return "?";
}

KernelChoice parse_kernel(const std::string& text) {
  if (text == "det") return KernelChoice::Deterministic;
  if (text == "rand") return KernelChoice::Randomized;
  if (text == "stream-order") return KernelChoice::StreamOrder;
  throw std::invalid_argument("unknown kernel '" + text + "'");
}

bool is_valid_b_matching(const BipartiteInstance& inst, const std::vector<Edge>& edges) {
  std::unordered_map<std::uint64_t, Weight> weight_of;
  weight_of.reserve(inst.edges.size() * 2);
  for (const auto& e : inst.edges) weight_of[pair_key(e.bidder, e.item)] = e.weight;
  std::vector<std::int32_t> used_l(static_cast<std::size_t>(inst.n_l), 0);
  std::vector<std::int32_t> used_r(static_cast<std::size_t>(inst.n_r), 0);
  std::unordered_set<std::uint64_t> seen;
  for (const auto& e : edges) {
    if (e.bidder < 0 || e.bidder >= inst.n_l || e.item < 0 || e.item >= inst.n_r) return false;
    auto it = weight_of.find(pair_key(e.bidder, e.item));
    if (it == weight_of.end() || it->second != e.weight) return false;
    if (!seen.insert(it->first).second) return false;
    if (++used_l[e.bidder] > inst.bidder_capacity(e.bidder)) return false;
    if (++used_r[e.item] > inst.item_capacity(e.item)) return false;
  }
  return true;
}

}  // namespace auction
