#include <random>

#include "doctest.h"
#include "kfree/arith.hpp"
#include "oracles.hpp"

using namespace kfree;

TEST_CASE("factorize examples") {
  CHECK(factorize(12).factors() == std::vector<PrimePower>{{2, 2}, {3, 1}});
  CHECK(factorize(1).empty());
  CHECK(factorize(9991).factors() == std::vector<PrimePower>{{97, 1}, {103, 1}});
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize matches trial division and round-trips up to 1e5") {
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    const Factorization f = factorize(n);
    REQUIRE(f.value() == BigInt(n));
    if (n % 97 == 0 || n < 2000) {
      const auto ref = oracle::trial_factor(n);
      REQUIRE(f.size() == ref.size());
      for (const auto& pp : f) REQUIRE(ref.at(pp.prime) == pp.exponent);
    }
  }
}

TEST_CASE("factorize large inputs") {
  const std::uint64_t p = 1'000'000'007, q = 998'244'353;
  const Factorization f = factorize(p * q);
  CHECK(f.factors() == std::vector<PrimePower>{{q, 1}, {p, 1}});
  CHECK(factorize(std::uint64_t{1} << 62).factors() == std::vector<PrimePower>{{2, 62}});
  const std::uint64_t big_prime = 9'223'372'036'854'775'783ULL;
  CHECK(factorize(big_prime).factors() == std::vector<PrimePower>{{big_prime, 1}});
  CHECK(factorize(4 * 1'000'003ULL * 1'000'003ULL).valuation(1'000'003) == 2);
}

TEST_CASE("moebius examples") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(30) == -1);
  CHECK(moebius(6) == 1);
}

TEST_CASE("moebius table agrees with trial division") {
  const auto mu = moebius_table(20000);
  for (std::uint64_t n = 1; n <= 20000; ++n) {
    REQUIRE(mu[n] == oracle::mobius(n));
    REQUIRE(moebius(n) == mu[n]);
  }
}

TEST_CASE("moebius is multiplicative on random coprime pairs") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> dist(1, 1000);
  int checked = 0;
  while (checked < 2000) {
    const std::uint64_t m = dist(rng), n = dist(rng);
    if (std::gcd(m, n) != 1) continue;
    REQUIRE(moebius(m * n) == moebius(m) * moebius(n));
    ++checked;
  }
}

TEST_CASE("gcd_pow_k examples") {
  CHECK(gcd_pow_k(12, 2, 2) == 4);
  CHECK(gcd_pow_k(8, 2, 3) == 8);
  CHECK(gcd_pow_k(5, 3, 2) == 1);
}

TEST_CASE("gcd_pow_k times lcm(q, d^k) equals q d^k for d, q <= 1000") {
  for (unsigned k : {2u, 3u}) {
    for (std::uint64_t q = 1; q <= 1000; q += (q < 100 ? 1 : 7)) {
      for (std::uint64_t d = 1; d <= 1000; d += (d < 100 ? 1 : 11)) {
        const BigInt dk = pow_big(d, k);
        const BigInt g = gcd(BigInt(q), dk);
        REQUIRE(BigInt(gcd_pow_k(q, d, k)) == g);
        const BigInt l = BigInt(q) * dk / g;
        REQUIRE(BigInt(gcd_pow_k(q, d, k)) * l == BigInt(q) * dk);
      }
    }
  }
}

TEST_CASE("lcm_pow_k examples") {
  CHECK(lcm_pow_k(2, 3, 2) == 36);
  CHECK(lcm_pow_k(2, 2, 2) == 4);
  CHECK(lcm_pow_k(6, 4, 2) == 144);
  CHECK(lcm_pow_k(1'000'003, 999'983, 4) == pow_big(1'000'003, 4) * pow_big(999'983, 4));
}

TEST_CASE("integer_root and primality") {
  CHECK(integer_root(100, 2) == 10);
  CHECK(integer_root(99, 2) == 9);
  CHECK(integer_root(1'000'000'000'000ULL, 3) == 10000);
  CHECK(integer_root(999'999'999'999ULL, 3) == 9999);
  CHECK(integer_root(std::uint64_t(-1), 2) == 4294967295ULL);
  CHECK(is_prime_u64(2));
  CHECK_FALSE(is_prime_u64(1));
  CHECK(is_prime_u64(1'000'000'007));
  CHECK_FALSE(is_prime_u64(3215031751ULL));
  const auto primes = primes_up_to(100);
  CHECK((*primes)[24] == 97);
}
