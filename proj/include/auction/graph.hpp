#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace auction {

using BidderId = std::int32_t;
using ItemId = std::int32_t;
using Weight = std::int64_t;

inline constexpr std::int32_t kNone = -1;

/// Raised when an exact quantity no longer fits the 64-bit carrier.
class CapacityError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Approximation parameter restricted to eps = 1/k with integer k >= 2.
class Epsilon {
 public:
  explicit Epsilon(std::int64_t k);

  /// Parses the "1/k" form.
  static Epsilon parse(const std::string& text);

  std::int64_t k() const { return k_; }
  double value() const { return 1.0 / static_cast<double>(k_); }
  std::string str() const { return "1/" + std::to_string(k_); }

  friend bool operator==(const Epsilon&, const Epsilon&) = default;

 private:
  std::int64_t k_;
};

struct Edge {
  BidderId bidder = 0;
  ItemId item = 0;
  Weight weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Bipartite instance: bidders L = [0, n_l), items R = [0, n_r).
struct BipartiteInstance {
  std::int32_t n_l = 0;
  std::int32_t n_r = 0;
  std::vector<Edge> edges;
  std::vector<std::int32_t> b_l;  // empty means all 1
  std::vector<std::int32_t> b_r;

  std::int32_t bidder_capacity(BidderId i) const { return b_l.empty() ? 1 : b_l[i]; }
  std::int32_t item_capacity(ItemId j) const { return b_r.empty() ? 1 : b_r[j]; }
  std::int64_t sum_bidder_capacity() const;

  /// Throws InstanceError on any invariant violation.
  void validate() const;

  friend bool operator==(const BipartiteInstance&, const BipartiteInstance&) = default;
};

/// Builds and validates an instance from raw parts.
BipartiteInstance make_instance(std::int32_t n_l, std::int32_t n_r, std::vector<Edge> edges,
                                std::vector<std::int32_t> b_l = {},
                                std::vector<std::int32_t> b_r = {});

/// Smallest s >= 0 with base^s * lhs >= rhs (lhs, rhs, base positive).
std::int32_t ceil_log_ratio(std::int64_t base, std::int64_t lhs, std::int64_t rhs);

/// base^exp with overflow detection.
std::int64_t checked_pow(std::int64_t base, std::int32_t exp);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

/// Rescaled and pruned weighted graph. Scaled weight of an edge is
/// weight / w_max; every price and increment downstream is an integer
/// multiple of the base unit 1 / (k * w_max).
struct ScaledGraph {
  BipartiteInstance instance;  // surviving edges only, original weights
  Epsilon eps{2};
  Weight w_max = 0;
  Weight w_min_original = 0;   // before pruning
  Weight w_min_surviving = 0;
  std::int32_t prune_exponent = 0;  // t with threshold eps^t
  std::size_t pruned = 0;

  /// ceil(log_{1/eps} W) over surviving edges.
  std::int32_t surviving_log_ratio() const;

  /// Scaled weight in base units: k * w.
  std::int64_t value_units(Weight w) const { return eps.k() * w; }
  /// eps * scaled weight in base units: exactly w.
  std::int64_t increment_units(Weight w) const { return w; }
};

/// Divides by w_max and drops edges below eps^(ceil(log_{1/eps} min(m, W)) + 1),
/// with W taken over the unpruned graph.
ScaledGraph scale_and_prune(const BipartiteInstance& inst, Epsilon eps);

/// Prune threshold exponent for the given statistics.
std::int32_t prune_exponent(std::int64_t k, std::int64_t m, Weight w_min, Weight w_max);

/// True iff w / w_max >= eps^t, by exact cross-multiplication.
bool survives_prune(Weight w, Weight w_max, std::int64_t k, std::int32_t t);

}  // namespace auction
