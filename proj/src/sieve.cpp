#include "kfree/sieve.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace kfree {

namespace {

using u128 = unsigned __int128;

// p^k, or 0 when p^k >= limit.
std::uint64_t prime_power_below(std::uint64_t p, unsigned k, std::uint64_t limit) {
  u128 pk = 1;
  for (unsigned i = 0; i < k; ++i) {
    pk *= p;
    if (pk >= limit) return 0;
  }
  return static_cast<std::uint64_t>(pk);
}

std::uint64_t segment_count(std::uint64_t x) {
  return (x + kDefaultSegmentBudget - 1) / kDefaultSegmentBudget;
}

// Segment i of the fixed partition of [1, x].
SieveSegment fixed_segment(std::uint64_t i, std::uint64_t x, unsigned k,
                           const std::vector<std::uint32_t>& primes) {
  const std::uint64_t lo = 1 + i * kDefaultSegmentBudget;
  const std::uint64_t hi = std::min(lo + kDefaultSegmentBudget, x + 1);
  SieveSegment seg(k, lo, hi);
  seg.mark(primes);
  return seg;
}

void check_k(unsigned k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
}

BigRational sum_tree(std::vector<BigRational>& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return BigRational(0);
  if (hi - lo == 1) return terms[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return sum_tree(terms, lo, mid) + sum_tree(terms, mid, hi);
}

}  // namespace

SieveSegment::SieveSegment(unsigned k, std::uint64_t lo, std::uint64_t hi)
    : k_(k), lo_(lo), hi_(hi), words_((hi - lo + 63) / 64, ~std::uint64_t{0}) {
  if (const std::uint64_t tail = (hi - lo) & 63; tail != 0) {
    words_.back() = (std::uint64_t{1} << tail) - 1;
  }
}

std::uint64_t SieveSegment::count() const {
  std::uint64_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

void SieveSegment::mark(const std::vector<std::uint32_t>& primes) {
  for (std::uint32_t p : primes) {
    const std::uint64_t pk = prime_power_below(p, k_, hi_);
    if (pk == 0) break;
    std::uint64_t m = (lo_ + pk - 1) / pk * pk;
    for (; m < hi_; m += pk) clear(m - lo_);
  }
}

SieveSegment kfree_segment(std::uint64_t lo, std::uint64_t hi, unsigned k, std::uint64_t budget) {
  check_k(k);
  if (lo < 1 || hi <= lo) throw std::invalid_argument("kfree_segment: need 1 <= lo < hi");
  if (hi > kSieveUpperLimit) throw std::out_of_range("kfree_segment: hi exceeds 10^12");
  if (hi - lo > budget) throw std::length_error("kfree_segment: segment exceeds the length budget");
  const auto primes = primes_up_to(integer_root(hi - 1, k));
  SieveSegment seg(k, lo, hi);
  seg.mark(*primes);
  return seg;
}

std::uint64_t count_kfree(std::uint64_t x, unsigned k) {
  check_k(k);
  if (x == 0) return 0;
  if (x > kSieveUpperLimit) throw std::out_of_range("count_kfree: x exceeds 10^12");
  const auto primes = primes_up_to(integer_root(x, k));
  const std::uint64_t n_seg = segment_count(x);
  std::vector<std::uint64_t> per_segment(n_seg, 0);

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_seg); ++i) {
    per_segment[i] = fixed_segment(static_cast<std::uint64_t>(i), x, k, *primes).count();
  }

  std::uint64_t total = 0;
  for (std::uint64_t c : per_segment) total += c;
  return total;
}

std::uint64_t ClassCounts::total() const {
  std::uint64_t t = 0;
  for (std::uint64_t c : counts) t += c;
  return t;
}

ClassCounts class_counts(std::uint64_t x, std::uint64_t q, unsigned k) {
  check_k(k);
  if (q < 1 || q > x) throw std::invalid_argument("class_counts: need 1 <= q <= x");
  if (x > kSieveUpperLimit) throw std::out_of_range("class_counts: x exceeds 10^12");

  ClassCounts out{q, k, x, std::vector<std::uint64_t>(q, 0)};
  const auto primes = primes_up_to(integer_root(x, k));
  const std::uint64_t n_seg = segment_count(x);
  // Thread-private tallies unless that would cost too much memory.
  const bool private_tallies = q * static_cast<std::uint64_t>(omp_get_max_threads()) <= (std::uint64_t{1} << 25);

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(private_tallies ? q : 0, 0);

#pragma omp for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_seg); ++i) {
      const SieveSegment seg = fixed_segment(static_cast<std::uint64_t>(i), x, k, *primes);
      std::uint64_t r = seg.lo() % q;
      std::uint64_t prev = seg.lo();
      seg.for_each_kfree([&](std::uint64_t n) {
        r = (r + (n - prev)) % q;
        prev = n;
        const std::uint64_t idx = (r + q - 1) % q;
        if (private_tallies) {
          ++local[idx];
        } else {
#pragma omp atomic
          ++out.counts[idx];
        }
      });
    }

    if (private_tallies) {
#pragma omp critical
      for (std::uint64_t a = 0; a < q; ++a) out.counts[a] += local[a];
    }
  }
  return out;
}

KfreeCounter::KfreeCounter(std::uint64_t x_max, unsigned k)
    : x_max_(x_max), k_(k), words_(x_max / 64 + 1, 0), prefix_(x_max / 64 + 2, 0) {
  check_k(k);
  if (x_max > kSieveUpperLimit) throw std::out_of_range("KfreeCounter: x_max exceeds 10^12");
  if (x_max >= 1) {
    const auto primes = primes_up_to(integer_root(x_max, k));
    const std::uint64_t S = kDefaultSegmentBudget;  // multiple of 64
    const std::uint64_t n_seg = x_max / S + 1;

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_seg); ++i) {
      const std::uint64_t lo = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(i) * S);
      const std::uint64_t hi = std::min<std::uint64_t>(static_cast<std::uint64_t>(i + 1) * S, x_max + 1);
      if (lo >= hi) continue;
      SieveSegment seg(k, lo, hi);
      seg.mark(*primes);
      if (i == 0) {
        seg.for_each_kfree([&](std::uint64_t n) { words_[n >> 6] |= std::uint64_t{1} << (n & 63); });
      } else {
        std::copy(seg.words().begin(), seg.words().end(), words_.begin() + static_cast<std::ptrdiff_t>(lo / 64));
      }
    }
  }
  for (std::size_t w = 0; w < words_.size(); ++w) {
    prefix_[w + 1] = prefix_[w] + static_cast<std::uint64_t>(std::popcount(words_[w]));
  }
}

std::uint64_t KfreeCounter::count(std::uint64_t x) const {
  if (x > x_max_) throw std::out_of_range("KfreeCounter::count: x beyond the sieved range");
  const std::uint64_t w = x >> 6;
  const unsigned b = static_cast<unsigned>(x & 63);
  const std::uint64_t mask = (b == 63) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (b + 1)) - 1);
  return prefix_[w] + static_cast<std::uint64_t>(std::popcount(words_[w] & mask));
}

std::vector<std::uint32_t> lcm_pair_multiplicities(std::uint64_t y) {
  std::vector<std::uint32_t> tau2(y + 1, 1);
  if (y >= 1) {
    const auto primes = primes_up_to(y);
    for (std::uint32_t p : *primes) {
      if (p > y) break;
      for (std::uint64_t m = p; m <= y; m += p) {
        std::uint64_t r = m;
        unsigned e = 0;
        while (r % p == 0) {
          r /= p;
          ++e;
        }
        tau2[m] *= 2 * e + 1;
      }
    }
  }
  tau2[0] = 0;
  return tau2;
}

std::uint64_t lcm_pair_count(std::uint64_t y) {
  if (y < 1) throw std::invalid_argument("lcm_pair_count: y must be positive");
  const auto tau2 = lcm_pair_multiplicities(y);
  std::uint64_t total = 0;
  for (std::uint64_t n = 1; n <= y; ++n) total += tau2[n];
  return total;
}

double lcm_tail_bound(std::uint64_t D, unsigned k) {
  check_k(k);
  if (D < 1) throw std::invalid_argument("lcm_tail_bound: D must be positive");
  const double m = static_cast<double>(k) - 1.0;
  const double L = 1.0 + std::log(static_cast<double>(D));
  return static_cast<double>(k) * std::pow(static_cast<double>(D), -m) *
         (L * L / m + 2.0 * L / (m * m) + 2.0 / (m * m * m));
}

LcmTail lcm_tail_sum(std::uint64_t y, unsigned k, std::uint64_t D) {
  check_k(k);
  if (y < 1) throw std::invalid_argument("lcm_tail_sum: y must be positive");
  if (D < y) throw std::invalid_argument("lcm_tail_sum: truncation D must be at least y");
  const auto tau2 = lcm_pair_multiplicities(D);
  std::vector<BigRational> terms;
  terms.reserve(D - y);
  for (std::uint64_t n = y + 1; n <= D; ++n) {
    terms.emplace_back(BigInt(tau2[n]), pow_big(n, k));
  }
  return {sum_tree(terms, 0, terms.size()), lcm_tail_bound(D, k)};
}

namespace reference {

std::uint64_t count_kfree(std::uint64_t x, unsigned k) {
  check_k(k);
  std::vector<std::uint8_t> kfree(x + 1, 1);
  const auto primes = primes_up_to(integer_root(x, k));
  for (std::uint32_t p : *primes) {
    const std::uint64_t pk = prime_power_below(p, k, x + 1);
    if (pk == 0) break;
    for (std::uint64_t m = pk; m <= x; m += pk) kfree[m] = 0;
  }
  std::uint64_t c = 0;
  for (std::uint64_t n = 1; n <= x; ++n) c += kfree[n];
  return c;
}

ClassCounts class_counts(std::uint64_t x, std::uint64_t q, unsigned k) {
  check_k(k);
  if (q < 1 || q > x) throw std::invalid_argument("class_counts: need 1 <= q <= x");
  std::vector<std::uint8_t> kfree(x + 1, 1);
  const auto primes = primes_up_to(integer_root(x, k));
  for (std::uint32_t p : *primes) {
    const std::uint64_t pk = prime_power_below(p, k, x + 1);
    if (pk == 0) break;
    for (std::uint64_t m = pk; m <= x; m += pk) kfree[m] = 0;
  }
  ClassCounts out{q, k, x, std::vector<std::uint64_t>(q, 0)};
  for (std::uint64_t n = 1; n <= x; ++n) {
    if (kfree[n]) ++out.counts[(n % q + q - 1) % q];
  }
  return out;
}

}  // namespace reference

}  // namespace kfree
