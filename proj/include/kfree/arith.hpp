// Exact integer and rational arithmetic shared by every other module.
//
// Everything here is a pure function; the prime table is built lazily once
// per requested size and is read-only afterwards.

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace kfree {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical prime-power decomposition: primes strictly increasing, exponents
/// at least one.  The empty factorization is n = 1.
class Factorization {
 public:
  Factorization() = default;
  explicit Factorization(std::vector<PrimePower> factors);

  const std::vector<PrimePower>& factors() const { return factors_; }
  auto begin() const { return factors_.begin(); }
  auto end() const { return factors_.end(); }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }

  /// v_p(n); zero when p does not divide n.
  unsigned valuation(std::uint64_t p) const;

  /// Product of p^e over all factors.
  BigInt value() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> factors_;
};

/// Primes up to at least `limit`, ascending.  The returned table may extend
/// past `limit`; callers stop at their own bound.
std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint64_t limit);

/// Throws std::invalid_argument for n = 0.
Factorization factorize(std::uint64_t n);

int moebius(std::uint64_t n);

/// mu(1..n) by a linear sieve; entry 0 is unused.
std::vector<std::int8_t> moebius_table(std::uint64_t n);

/// (q, d^k) = prod p^{min(v_p(q), k v_p(d))}, without forming d^k.
std::uint64_t gcd_pow_k(std::uint64_t q, std::uint64_t d, unsigned k);

/// [d^k, d2^k] exactly.
BigInt lcm_pow_k(std::uint64_t d, std::uint64_t d2, unsigned k);

/// p^e as a BigInt.
BigInt pow_big(std::uint64_t p, unsigned e);

/// Largest r with r^k <= x.
std::uint64_t integer_root(std::uint64_t x, unsigned k);

bool is_prime_u64(std::uint64_t n);

}  // namespace kfree
