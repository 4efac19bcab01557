// Truncated Euler products with a certified tail.
//
// The product over p <= P is split into a head (p <= kHeadPrimeLimit,
// multiplied in working precision) and a bulk evaluated as a sum of
// long-double logarithms over fixed blocks of primes.  Blocks are reduced in
// ascending order, so the parallel and serial kernels agree bit for bit.

#pragma once

#include <cstdint>
#include <functional>

#include "kfree/certified.hpp"

namespace kfree {

inline constexpr std::uint64_t kHeadPrimeLimit = 1000;
inline constexpr std::size_t kPrimeBlock = 16384;

struct EulerProductSpec {
  /// Local factor at p, used for p <= kHeadPrimeLimit.
  std::function<Real(std::uint64_t)> factor;
  /// log of the local factor at p, used for kHeadPrimeLimit < p <= P.
  /// Assumed accurate to a few long-double ulps relative to its magnitude.
  std::function<long double(std::uint64_t)> log_factor;
  std::uint64_t prime_cutoff = 10'000'000;
  /// |log factor(p)| <= tail_constant * p^-tail_exponent for every p > P.
  double tail_exponent = 2.0;
  double tail_constant = 2.0;
};

/// Bound b with |log prod_{p > P} factor(p)| <= b.
Real euler_tail_log_bound(const EulerProductSpec& spec);

CertifiedReal euler_product(const EulerProductSpec& spec);
CertifiedReal euler_product_serial(const EulerProductSpec& spec);

}  // namespace kfree
