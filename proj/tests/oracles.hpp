// Independent reference computations for the test suite.  Nothing here calls
// into the library except for the shared BigInt/BigRational/Real types.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include <mpfr.h>

#include "kfree/arith.hpp"
#include "kfree/certified.hpp"

namespace oracle {

using kfree::BigInt;
using kfree::BigRational;
using kfree::Real;

inline std::map<std::uint64_t, unsigned> trial_factor(std::uint64_t n) {
  std::map<std::uint64_t, unsigned> f;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  if (n > 1) ++f[n];
  return f;
}

inline int mobius(std::uint64_t n) {
  int sign = 1;
  for (const auto& [p, e] : trial_factor(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// True when no i >= 2 has i^k | n.
inline bool is_kfree(std::uint64_t n, unsigned k) {
  for (std::uint64_t i = 2; ipow(i, k) <= n; ++i)
    if (n % ipow(i, k) == 0) return false;
  return true;
}

inline std::uint64_t brute_count(std::uint64_t x, unsigned k) {
  std::uint64_t c = 0;
  for (std::uint64_t n = 1; n <= x; ++n) c += is_kfree(n, k);
  return c;
}

/// sum_{d <= x^{1/k}} mu(d) floor(x / d^k), with a caller-supplied mu table.
inline std::int64_t legendre(std::uint64_t x, unsigned k, const std::vector<int>& mu) {
  std::int64_t s = 0;
  for (std::uint64_t d = 1; d < mu.size() && ipow(d, k) <= x; ++d) s += mu[d] * std::int64_t(x / ipow(d, k));
  return s;
}

inline std::vector<int> mobius_upto(std::uint64_t n) {
  std::vector<int> mu(n + 1, 0);
  for (std::uint64_t d = 1; d <= n; ++d) mu[d] = mobius(d);
  return mu;
}

/// counts[a-1] = #{n <= x k-free, n = a mod q}, a = 1..q.
inline std::vector<std::uint64_t> brute_class_counts(std::uint64_t x, std::uint64_t q, unsigned k) {
  std::vector<std::uint64_t> c(q, 0);
  for (std::uint64_t n = 1; n <= x; ++n)
    if (is_kfree(n, k)) ++c[(n % q == 0 ? q : n % q) - 1];
  return c;
}

/// s[a-1] = sum_{d <= D, (q, d^k) | a} mu(d) / [q, d^k] for a = 1..q, in long
/// double.  Requires q D^k < 2^64.
inline std::vector<long double> eta_series(std::uint64_t q, unsigned k, std::uint64_t D, const std::vector<int>& mu) {
  std::vector<long double> s(q, 0.0L);
  for (std::uint64_t d = 1; d <= D; ++d) {
    if (mu[d] == 0) continue;
    const std::uint64_t dk = ipow(d, k);
    const std::uint64_t g = std::gcd(q, dk);
    const long double term = mu[d] / (static_cast<long double>(q / g) * static_cast<long double>(dk));
    for (std::uint64_t a = g; a <= q; a += g) s[a - 1] += term;
  }
  return s;
}

/// Largest (q, d^k) over all d: prod_{p | q} p^{min(v_p(q), k)}.
inline std::uint64_t max_local_gcd(std::uint64_t q, unsigned k) {
  std::uint64_t g = 1;
  for (const auto& [p, v] : trial_factor(q)) g *= ipow(p, std::min(v, k));
  return g;
}

/// Pairs (d, d') with d, d' <= y and lcm <= t, for every t <= y.
inline std::vector<std::uint64_t> lcm_pairs_enumerated(std::uint64_t y) {
  std::vector<std::uint64_t> exact(y + 1, 0);
  for (std::uint64_t d = 1; d <= y; ++d)
    for (std::uint64_t e = 1; e <= y; ++e) {
      const std::uint64_t l = d / std::gcd(d, e) * e;
      if (l <= y) ++exact[l];
    }
  std::vector<std::uint64_t> cum(y + 1, 0);
  for (std::uint64_t t = 1; t <= y; ++t) cum[t] = cum[t - 1] + exact[t];
  return cum;
}

/// sum over pairs with y < [d, d'] <= D of [d, d']^-k, by enumeration.
inline BigRational lcm_tail_enumerated(std::uint64_t y, unsigned k, std::uint64_t D) {
  BigRational s = 0;
  for (std::uint64_t d = 1; d <= D; ++d)
    for (std::uint64_t e = 1; e <= D; ++e) {
      const std::uint64_t l = d / std::gcd(d, e) * e;
      if (l > y && l <= D) s += BigRational(BigInt(1), BigInt(ipow(l, k)));
    }
  return s;
}

/// Direct enumeration of the truncated J(x) over squarefree d, d' <= D, forming
/// every power explicitly.
inline BigRational j_enumerated(const BigRational& x, std::uint64_t q, unsigned k, std::uint64_t D) {
  BigRational total = 0;
  for (std::uint64_t d = 1; d <= D; ++d) {
    const int md = mobius(d);
    if (md == 0) continue;
    for (std::uint64_t e = 1; e <= D; ++e) {
      const int me = mobius(e);
      if (me == 0) continue;
      BigInt dk = 1, ek = 1;
      for (unsigned i = 0; i < k; ++i) {
        dk *= d;
        ek *= e;
      }
      const BigInt g = gcd(dk, ek);
      const BigInt lcm_pow = dk / g * ek;
      const BigInt L = BigInt(q) * g / gcd(BigInt(q), g);
      const BigRational Q = x / BigRational(L);
      const BigInt m = numerator(Q) / denominator(Q);
      const BigRational T = BigRational(m) * Q - BigRational(m * (m + 1), BigInt(2));
      total += BigRational(md * me) * BigRational(L) / BigRational(lcm_pow) * T;
    }
  }
  return total;
}

/// Primes below n by the sieve of Eratosthenes.
inline std::vector<std::uint64_t> primes_below(std::uint64_t n) {
  std::vector<bool> composite(n, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i < n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j < n; j += i) composite[j] = true;
  }
  return out;
}

/// prod_{p < P} (1 - 2 / (p^k (1 + p^{-k(1+s)}))) in long double; the omitted
/// primes change the log by at most 2 P^{1-k} / (k-1).
inline long double q1_euler_product(long double s, unsigned k, std::uint64_t P) {
  long double log_sum = 0;
  for (std::uint64_t p : primes_below(P)) {
    const long double pk = std::pow(static_cast<long double>(p), static_cast<long double>(k));
    const long double u = std::pow(static_cast<long double>(p), -static_cast<long double>(k) * (1 + s));
    log_sum += std::log1p(-2.0L / (pk * (1 + u)));
  }
  return std::exp(log_sum);
}

/// sum_{d, d' <= D} mu(d) mu(d') / ([d^k, d'^k] [q, (d^k, d'^k)]^s) in long double.
inline long double double_sum(unsigned s, std::uint64_t q, unsigned k, std::uint64_t D, const std::vector<int>& mu) {
  long double total = 0;
  for (std::uint64_t d = 1; d <= D; ++d) {
    if (mu[d] == 0) continue;
    long double row = 0;
    for (std::uint64_t e = 1; e <= D; ++e) {
      if (mu[e] == 0) continue;
      const std::uint64_t h = std::gcd(d, e);
      const long double l = static_cast<long double>(d / h * e);
      const std::uint64_t hk = ipow(h, k);
      const long double qh = static_cast<long double>(q / std::gcd(q, hk)) * static_cast<long double>(hk);
      row += mu[e] / (std::pow(l, static_cast<long double>(k)) * std::pow(qh, static_cast<long double>(s)));
    }
    total += mu[d] * row;
  }
  return total;
}

/// zeta(s) from MPFR at 400 bits.
inline Real mpfr_zeta(const Real& s) {
  mpfr_t a, r;
  mpfr_init2(a, 400);
  mpfr_init2(r, 400);
  mpfr_set(a, s.backend().data(), MPFR_RNDN);
  mpfr_zeta(r, a, MPFR_RNDN);
  Real out;
  mpfr_set(out.backend().data(), r, MPFR_RNDN);
  mpfr_clear(a);
  mpfr_clear(r);
  return out;
}

/// Borwein's accelerated alternating series; accurate for modest |im s|.
inline std::complex<long double> borwein_zeta(std::complex<long double> s, int n = 60) {
  std::vector<long double> d(n + 1);
  long double term = 1.0L / n, sum = term;
  d[0] = n * sum;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0L * (n + i - 1) * (n - i + 1) / ((2.0L * i - 1) * (2.0L * i));
    sum += term;
    d[i] = n * sum;
  }
  std::complex<long double> acc = 0;
  for (int k = 0; k < n; ++k) {
    const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
    acc += sign * (d[k] - d[n]) * std::exp(-s * std::log(static_cast<long double>(k + 1)));
  }
  const std::complex<long double> one(1.0L, 0.0L);
  return -acc / (d[n] * (one - std::exp((one - s) * std::log(2.0L))));
}

}  // namespace oracle
