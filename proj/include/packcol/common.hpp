#pragma once

#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace packcol {

using Vertex = int;

inline constexpr int kInfinity = std::numeric_limits<int>::max();
inline constexpr const char* kToolVersion = "0.1.0";

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Search limits. An unset cap means unlimited.
struct Budget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<std::int64_t> max_millis;

  static Budget unlimited() { return {}; }
  static Budget nodes(std::uint64_t n) { return {n, std::nullopt}; }
  static Budget millis(std::int64_t ms) { return {std::nullopt, ms}; }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Counts nodes against a Budget. The clock is sampled every 1024 ticks.
// An optional shared flag lets parallel workers stop each other.
class BudgetMeter {
 public:
  explicit BudgetMeter(const Budget& b, const std::atomic<bool>* stop = nullptr) : budget_(b), stop_(stop) {}

  bool tick() {
    ++nodes_;
    if (exhausted_) return false;
    if (budget_.max_nodes && nodes_ > *budget_.max_nodes) return fail();
    if ((nodes_ & 1023u) == 0) {
      if (budget_.max_millis && watch_.millis() > static_cast<double>(*budget_.max_millis)) return fail();
      if (stop_ && stop_->load(std::memory_order_relaxed)) return fail();
    }
    return true;
  }

  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }
  double millis() const { return watch_.millis(); }

 private:
  bool fail() {
    exhausted_ = true;
    return false;
  }

  Budget budget_;
  const std::atomic<bool>* stop_;
  Stopwatch watch_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }
  void set(int i) { w_[i >> 6] |= (1ULL << (i & 63)); }
  void reset(int i) { w_[i >> 6] &= ~(1ULL << (i & 63)); }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1ULL; }

  bool none() const {
    for (auto x : w_)
      if (x) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (auto x : w_) c += std::popcount(x);
    return c;
  }
  int first() const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return static_cast<int>(k * 64 + std::countr_zero(w_[k]));
    return -1;
  }
  int next(int i) const {
    ++i;
    if (i >= n_) return -1;
    std::size_t k = i >> 6;
    std::uint64_t x = w_[k] & (~0ULL << (i & 63));
    while (true) {
      if (x) return static_cast<int>(k * 64 + std::countr_zero(x));
      if (++k == w_.size()) return -1;
      x = w_[k];
    }
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  Bitset& and_not(const Bitset& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
    return *this;
  }
  int count_and(const Bitset& o) const {
    int c = 0;
    for (std::size_t k = 0; k < w_.size(); ++k) c += std::popcount(w_[k] & o.w_[k]);
    return c;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace packcol
