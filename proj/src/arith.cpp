#include "kfree/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace kfree {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kTrialPrimeLimit = 1'000'000;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

// Pollard-Brent; n is odd, composite and has no factor below the trial limit.
std::uint64_t pollard_rho(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    const std::uint64_t m = 128;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_rho(n);
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace

Factorization::Factorization(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].exponent == 0 || factors_[i].prime < 2 ||
        (i > 0 && factors_[i - 1].prime >= factors_[i].prime)) {
      throw std::invalid_argument("Factorization: factors must be strictly increasing primes with exponent >= 1");
    }
  }
}

unsigned Factorization::valuation(std::uint64_t p) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), p,
                             [](const PrimePower& pp, std::uint64_t v) { return pp.prime < v; });
  return (it != factors_.end() && it->prime == p) ? it->exponent : 0;
}

BigInt Factorization::value() const {
  BigInt v = 1;
  for (const auto& [p, e] : factors_) v *= pow_big(p, e);
  return v;
}

std::shared_ptr<const std::vector<std::uint32_t>> primes_up_to(std::uint64_t limit) {
  static std::mutex mutex;
  static std::shared_ptr<const std::vector<std::uint32_t>> cache;
  static std::uint64_t cached_limit = 0;

  std::lock_guard lock(mutex);
  if (!cache || cached_limit < limit) {
    const std::uint64_t target = std::max<std::uint64_t>({limit, 2 * cached_limit, 1 << 16});
    cache = std::make_shared<const std::vector<std::uint32_t>>(sieve_primes(target));
    cached_limit = target;
  }
  return cache;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic for all 64-bit n.
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

Factorization factorize(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  std::vector<PrimePower> factors;
  const auto primes = primes_up_to(kTrialPrimeLimit);
  for (std::uint32_t p : *primes) {
    if (static_cast<std::uint64_t>(p) * p > n) break;
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    factors.push_back({p, e});
  }
  if (n > 1) {
    const std::uint64_t bound = primes->back();
    if (n <= bound * bound) {
      factors.push_back({n, 1});
    } else {
      std::vector<std::uint64_t> rest;
      split_large(n, rest);
      std::sort(rest.begin(), rest.end());
      for (std::uint64_t p : rest) {
        if (!factors.empty() && factors.back().prime == p) {
          ++factors.back().exponent;
        } else {
          factors.push_back({p, 1});
        }
      }
    }
  }
  return Factorization(std::move(factors));
}

int moebius(std::uint64_t n) {
  const auto f = factorize(n);
  for (const auto& pp : f) {
    if (pp.exponent > 1) return 0;
  }
  return (f.size() % 2) ? -1 : 1;
}

std::vector<std::int8_t> moebius_table(std::uint64_t n) {
  std::vector<std::int8_t> mu(n + 1, 1);
  std::vector<std::uint32_t> primes;
  std::vector<bool> composite(n + 1, false);
  if (n >= 1) mu[1] = 1;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (!composite[i]) {
      primes.push_back(static_cast<std::uint32_t>(i));
      mu[i] = -1;
    }
    for (std::uint32_t p : primes) {
      const std::uint64_t ip = i * p;
      if (ip > n) break;
      composite[ip] = true;
      if (i % p == 0) {
        mu[ip] = 0;
        break;
      }
      mu[ip] = static_cast<std::int8_t>(-mu[i]);
    }
  }
  mu[0] = 0;
  return mu;
}

std::uint64_t gcd_pow_k(std::uint64_t q, std::uint64_t d, unsigned k) {
  if (q == 0 || d == 0) throw std::invalid_argument("gcd_pow_k: arguments must be positive");
  std::uint64_t g = 1;
  for (const auto& [p, e] : factorize(d)) {
    unsigned vq = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
      rest /= p;
      ++vq;
    }
    const std::uint64_t cap = static_cast<std::uint64_t>(k) * e;
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(vq, cap); ++i) g *= p;
  }
  return g;
}

BigInt lcm_pow_k(std::uint64_t d, std::uint64_t d2, unsigned k) {
  if (d == 0 || d2 == 0) throw std::invalid_argument("lcm_pow_k: arguments must be positive");
  const auto fa = factorize(d);
  const auto fb = factorize(d2);
  BigInt out = 1;
  auto ia = fa.begin();
  auto ib = fb.begin();
  while (ia != fa.end() || ib != fb.end()) {
    if (ib == fb.end() || (ia != fa.end() && ia->prime < ib->prime)) {
      out *= pow_big(ia->prime, k * ia->exponent);
      ++ia;
    } else if (ia == fa.end() || ib->prime < ia->prime) {
      out *= pow_big(ib->prime, k * ib->exponent);
      ++ib;
    } else {
      out *= pow_big(ia->prime, k * std::max(ia->exponent, ib->exponent));
      ++ia;
      ++ib;
    }
  }
  return out;
}

BigInt pow_big(std::uint64_t p, unsigned e) {
  BigInt b = p;
  return boost::multiprecision::pow(b, e);
}

std::uint64_t integer_root(std::uint64_t x, unsigned k) {
  if (k == 0) throw std::invalid_argument("integer_root: k must be positive");
  if (k == 1 || x < 2) return x;
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(x), 1.0L / k));
  auto fits = [&](std::uint64_t v) {
    u128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= v;
      if (acc > x) return false;
    }
    return true;
  };
  while (r > 0 && !fits(r)) --r;
  while (fits(r + 1)) ++r;
  return r;
}

}  // namespace kfree
