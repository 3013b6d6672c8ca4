#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "auction/graph.hpp"
#include "auction/instance_io.hpp"
#include "auction/mcbm.hpp"
#include "auction/result.hpp"

namespace auction {

class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Re-iterable sequence of instance records (header, capacity lines, edges)
/// in a fixed order. Every call to `pass` is one full traversal.
class EdgeStream {
 public:
  virtual ~EdgeStream() = default;

  void pass(const std::function<void(const Record&)>& visit);
  std::int64_t passes() const { return passes_; }

 protected:
  virtual void traverse(const std::function<void(const Record&)>& visit) = 0;

 private:
  std::int64_t passes_ = 0;
};

class MemoryEdgeStream : public EdgeStream {
 public:
  explicit MemoryEdgeStream(const BipartiteInstance& inst) : inst_(&inst) {}

 protected:
  void traverse(const std::function<void(const Record&)>& visit) override;

 private:
  const BipartiteInstance* inst_;
};

/// Re-reads a file in the instance format on every pass.
class FileEdgeStream : public EdgeStream {
 public:
  explicit FileEdgeStream(std::filesystem::path path);

 protected:
  void traverse(const std::function<void(const Record&)>& visit) override;

 private:
  std::filesystem::path path_;
};

/// Wraps an istream; later passes seek back to the start and fail with a
/// ConfigurationError when the stream cannot be rewound.
class IstreamEdgeStream : public EdgeStream {
 public:
  explicit IstreamEdgeStream(std::istream& in);

 protected:
  void traverse(const std::function<void(const Record&)>& visit) override;

 private:
  std::istream* in_;
  std::streampos start_;
  bool used_ = false;
};

/// Word-level space meter. One word holds one id, price, counter, or flag.
class SpaceAccountant {
 public:
  void acquire(std::int64_t words);
  void release(std::int64_t words);

  std::int64_t current() const { return current_; }
  std::int64_t peak() const { return peak_; }

 private:
  std::int64_t current_ = 0;
  std::int64_t peak_ = 0;
};

/// Vector whose size is charged to an accountant for its lifetime.
template <typename T>
class AccountedArray {
 public:
  AccountedArray(SpaceAccountant& acct, std::size_t n, T init = T{})
      : acct_(&acct), data_(n, init) {
    acct_->acquire(static_cast<std::int64_t>(n));
  }
  ~AccountedArray() { acct_->release(static_cast<std::int64_t>(data_.size())); }
  AccountedArray(const AccountedArray&) = delete;
  AccountedArray& operator=(const AccountedArray&) = delete;

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }
  std::size_t size() const { return data_.size(); }
  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

 private:
  SpaceAccountant* acct_;
  std::vector<T> data_;
};

/// Scalar charged as one word.
template <typename T>
class AccountedScalar {
 public:
  AccountedScalar(SpaceAccountant& acct, T init = T{}) : acct_(&acct), value_(init) {
    acct_->acquire(1);
  }
  ~AccountedScalar() { acct_->release(1); }
  AccountedScalar(const AccountedScalar&) = delete;
  AccountedScalar& operator=(const AccountedScalar&) = delete;

  T& operator*() { return value_; }
  const T& operator*() const { return value_; }

 private:
  SpaceAccountant* acct_;
  T value_;
};

struct StreamRun {
  MatchingResult result;
  RunTrace trace;
};

/// Two passes per phase: one for the best utilities, one that matches each
/// qualifying edge on the fly. Equals run_mwm with the stream-order kernel.
StreamRun stream_mwm(EdgeStream& stream, Epsilon eps);

/// Words charged per unit of (sum of bidder capacities + item count).
inline constexpr std::int64_t kMcbmWordsPerUnit = 16;

struct StreamMcbmRun {
  BMatchingResult result;
  RunTrace trace;
};

/// Two passes per round over a compact per-item (min, count, max, count)
/// price summary; item copies are never materialized. Equals run_mcbm with
/// the stream-order kernel.
StreamMcbmRun stream_mcbm(EdgeStream& stream, Epsilon eps);

/// Blackboard cost of a run made with the randomized kernel. `price_levels`
/// is the number of distinct price units (k * w_max, or k when unweighted).
BlackboardTrace blackboard_trace(const RunTrace& trace, std::int32_t n_r,
                                 std::int64_t price_levels);

/// max(1, ceil(log2 x)).
std::int32_t message_bits(std::int64_t x);

}  // namespace auction
