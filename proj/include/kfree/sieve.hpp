// Segmented k-free sieve, residue-class counts and the lcm-pair sums.
//
// Segment boundaries are fixed multiples of the segment size starting at 1,
// so every count is independent of the OpenMP thread count.

#pragma once

#include <cstdint>
#include <vector>

#include "kfree/arith.hpp"

namespace kfree {

inline constexpr std::uint64_t kDefaultSegmentBudget = std::uint64_t{1} << 22;
inline constexpr std::uint64_t kSieveUpperLimit = 1'000'000'000'000;

/// Bitset over [lo, hi): bit i is set iff lo + i is k-free.
class SieveSegment {
 public:
  SieveSegment(unsigned k, std::uint64_t lo, std::uint64_t hi);

  unsigned k() const { return k_; }
  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  std::uint64_t size() const { return hi_ - lo_; }

  bool test(std::uint64_t offset) const { return (words_[offset >> 6] >> (offset & 63)) & 1u; }
  bool is_kfree(std::uint64_t n) const { return test(n - lo_); }
  std::uint64_t count() const;

  const std::vector<std::uint64_t>& words() const { return words_; }

  /// Calls f(n) for every k-free n in the segment, ascending.
  template <class F>
  void for_each_kfree(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        f(lo_ + (w << 6) + static_cast<std::uint64_t>(b));
        bits &= bits - 1;
      }
    }
  }

  /// Clears every multiple of p^k for the given primes (those with p^k >= hi
  /// are skipped).
  void mark(const std::vector<std::uint32_t>& primes);

 private:
  void clear(std::uint64_t offset) { words_[offset >> 6] &= ~(std::uint64_t{1} << (offset & 63)); }

  unsigned k_;
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::vector<std::uint64_t> words_;
};

/// Requires 1 <= lo < hi <= 10^12, k >= 2 and hi - lo <= budget.
SieveSegment kfree_segment(std::uint64_t lo, std::uint64_t hi, unsigned k,
                           std::uint64_t budget = kDefaultSegmentBudget);

/// #{n <= x : n k-free}.
std::uint64_t count_kfree(std::uint64_t x, unsigned k);

/// k-free counts per residue class.  Labels run a = 1..q with a = q standing
/// for the zero class.
struct ClassCounts {
  std::uint64_t q = 0;
  unsigned k = 0;
  std::uint64_t x = 0;
  std::vector<std::uint64_t> counts;  // counts[a - 1]

  std::uint64_t operator[](std::uint64_t a) const { return counts[a - 1]; }
  std::uint64_t total() const;
};

/// Requires 1 <= q <= x.
ClassCounts class_counts(std::uint64_t x, std::uint64_t q, unsigned k);

/// Sieves [1, x_max] once and answers count_kfree(x) for any x <= x_max in
/// constant time.
class KfreeCounter {
 public:
  KfreeCounter(std::uint64_t x_max, unsigned k);
  std::uint64_t count(std::uint64_t x) const;
  std::uint64_t limit() const { return x_max_; }

 private:
  std::uint64_t x_max_;
  unsigned k_;
  std::vector<std::uint64_t> words_;   // bit j of word w <-> n = 64 w + j
  std::vector<std::uint64_t> prefix_;  // popcount of words [0, w)
};

/// #{(d, d') : lcm(d, d') <= y}, via sum_{n <= y} tau(n^2).
std::uint64_t lcm_pair_count(std::uint64_t y);

/// tau(n^2) for n = 0..y (entry 0 unused): the number of ordered pairs with
/// lcm exactly n.
std::vector<std::uint32_t> lcm_pair_multiplicities(std::uint64_t y);

/// Upper bound for sum_{[d,d'] > D} [d,d']^{-k}, from
/// sum_{n<=N} tau(n^2) <= N (1 + log N)^2 and partial summation.
double lcm_tail_bound(std::uint64_t D, unsigned k);

struct LcmTail {
  BigRational partial;      // sum over y < [d,d'] <= D of [d,d']^{-k}
  double remainder_bound;   // bound for the omitted part [d,d'] > D
};

LcmTail lcm_tail_sum(std::uint64_t y, unsigned k, std::uint64_t D);

namespace reference {

// Unsegmented single-threaded versions kept as test oracles and benchmark
// baselines.
std::uint64_t count_kfree(std::uint64_t x, unsigned k);
ClassCounts class_counts(std::uint64_t x, std::uint64_t q, unsigned k);

}  // namespace reference

}  // namespace kfree
