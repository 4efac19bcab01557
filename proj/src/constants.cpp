#include "kfree/constants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

#include <boost/math/special_functions/gamma.hpp>

#include "kfree/euler_product.hpp"
#include "kfree/sieve.hpp"

namespace kfree {

namespace {

void check_k(unsigned k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
}

void check_digits(unsigned digits) {
  if (digits == 0 || digits > kMaxPrecisionDigits)
    throw std::domain_error("requested precision exceeds the working precision");
}

void check_cutoff(std::uint64_t P) {
  if (P < kMinPrimeCutoff) throw std::invalid_argument("prime cutoff must be at least 1e5");
}

Real pow10(int e) { return pow(Real(10), e); }

// (s)_n = s (s+1) ... (s+n-1)
Real rising(const Real& s, unsigned n) {
  Real r = 1;
  for (unsigned i = 0; i < n; ++i) r *= s + i;
  return r;
}

// Euler-Maclaurin for real s >= 0, s != 1.
CertifiedReal zeta_em(const Real& s, unsigned digits) {
  const Real target = pow10(-static_cast<int>(digits) - 5);
  const Real two_pi = 2 * pi_real();
  for (std::uint64_t N = 64;; N *= 2) {
    const Real n_real(N);
    // smallest M whose remainder bound meets the target
    unsigned M = 0;
    Real bound;
    for (unsigned m = 1; m <= 150; ++m) {
      if (s + 2 * m - 1 <= 0) continue;
      bound = 4 * abs(rising(s, 2 * m)) / pow(two_pi, 2 * m) * pow(n_real, 1 - s - 2 * m) / (s + 2 * m - 1);
      if (bound < target) {
        M = m;
        break;
      }
    }
    if (M == 0) continue;

    const auto B = bernoulli_even(M);
    Real sum = 0;
    for (std::uint64_t n = N - 1; n >= 1; --n) sum += pow(Real(n), -s);
    sum += pow(n_real, 1 - s) / (s - 1) + pow(n_real, -s) / 2;
    Real factorial = 1;  // (2j)!
    for (unsigned j = 1; j <= M; ++j) {
      factorial *= Real(2 * j - 1) * (2 * j);
      sum += to_real(B[j - 1]) / factorial * rising(s, 2 * j - 1) * pow(n_real, -s - 2 * j + 1);
    }
    const Real err = bound + abs(sum) * rounding_unit() * static_cast<long>(N + 2 * M + 8);
    return {sum, err};
  }
}

struct CkKey {
  unsigned k;
  unsigned digits;
  std::uint64_t P;
  auto operator<=>(const CkKey&) const = default;
};

// q-dependent pieces of F* at prime p: u = g^s p^{-k(1+s)} with g = (q, p^k).
Real local_u(const Real& s, std::uint64_t p, unsigned v, unsigned k) {
  const Real g = pow(Real(p), std::min(v, k));
  return pow(g, s) * pow(Real(p), -Real(k) * (1 + s));
}

// prod_p (1 - 2 / (p^k (1 + p^{-k(1+s)}))), the q = 1 product; memoised per
// (s, k, P, driver) since every q shares it away from the primes of q.
CertifiedReal generic_product(const Real& s, unsigned k, std::uint64_t P, bool parallel) {
  using Key = std::tuple<std::string, unsigned, std::uint64_t, bool>;
  static std::mutex mu;
  static std::map<Key, CertifiedReal> cache;
  const Key key{s.str(0, std::ios_base::scientific), k, P, parallel};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const long double s_ld = s.convert_to<long double>();
  EulerProductSpec spec;
  spec.prime_cutoff = P;
  spec.tail_exponent = k;
  spec.tail_constant = 2.0 / (1.0 - 2.0 * std::pow(static_cast<double>(P), -static_cast<double>(k)));
  spec.factor = [&](std::uint64_t p) { return 1 - 2 / (pow(Real(p), k) * (1 + local_u(s, p, 0, k))); };
  spec.log_factor = [k, s_ld](std::uint64_t p) {
    const long double lp = std::log(static_cast<long double>(p));
    const long double u = std::exp(-(k * (1 + s_ld)) * lp);
    return std::log1p(-2.0L / (std::exp(k * lp) * (1 + u)));
  };
  const CertifiedReal product = parallel ? euler_product(spec) : euler_product_serial(spec);
  std::lock_guard lock(mu);
  return cache.emplace(key, product).first->second;
}

CertifiedReal fstar_impl(const Real& s, std::uint64_t q, unsigned k, std::uint64_t P, bool parallel) {
  check_k(k);
  check_cutoff(P);
  if (q < 1) throw std::invalid_argument("q must be positive");
  if (s < fstar_abscissa(k)) throw std::domain_error("F*: s below the convergence abscissa");

  // Finite factor over p | q, and for p | q with p <= P the ratio of the
  // q-dependent Euler factor to the generic one.
  const Factorization f = factorize(q);
  Real finite = 1;
  for (const auto& [p, v] : f) {
    const Real u = local_u(s, p, v, k);
    const Real w = local_u(s, p, 0, k);
    finite *= (1 + u) / (1 + w);
    if (p <= P) {
      const Real pk = pow(Real(p), k);
      finite *= (1 - 2 / (pk * (1 + u))) / (1 - 2 / (pk * (1 + w)));
    }
  }
  const CertifiedReal product = generic_product(s, k, P, parallel);
  return CertifiedReal(finite, abs(finite) * rounding_unit() * static_cast<long>(12 * f.size() + 4)) * product;
}

}  // namespace

std::vector<BigRational> bernoulli_even(std::size_t n) {
  static std::mutex mu;
  static std::vector<BigRational> cache{BigRational(1)};  // B_0, B_1, ..., all indices
  std::lock_guard lock(mu);
  const std::size_t need = 2 * n + 1;
  // sum_{j=0}^{m} C(m+1, j) B_j = 0
  while (cache.size() < need) {
    const std::size_t m = cache.size();
    BigInt binom = 1;  // C(m+1, j)
    BigRational acc = 0;
    for (std::size_t j = 0; j < m; ++j) {
      acc += BigRational(binom) * cache[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    cache.push_back(-acc / BigRational(BigInt(m + 1)));
  }
  std::vector<BigRational> out;
  out.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) out.push_back(cache[2 * j]);
  return out;
}

CertifiedReal zeta_real(const Real& s, unsigned digits) {
  check_digits(digits);
  if (s == 1) throw std::domain_error("zeta: pole at s = 1");
  if (s <= -1) throw std::domain_error("zeta: s must exceed -1");
  if (s >= 0) return zeta_em(s, digits);

  // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s); Gamma from MPFR.
  const Real pi = pi_real();
  const Real factor = pow(Real(2), s) * pow(pi, s - 1) * sin(pi * s / 2) * boost::math::tgamma(1 - s);
  const CertifiedReal f(factor, abs(factor) * rounding_unit() * 16);
  return f * zeta_em(1 - s, digits);
}

Real fstar_abscissa(unsigned k) { return Real(-1) + Real(1) / (4 * Real(k)); }

CertifiedReal fstar(const Real& s, std::uint64_t q, unsigned k, std::uint64_t prime_cutoff) {
  return fstar_impl(s, q, k, prime_cutoff, true);
}

CertifiedReal fstar_serial(const Real& s, std::uint64_t q, unsigned k, std::uint64_t prime_cutoff) {
  return fstar_impl(s, q, k, prime_cutoff, false);
}

CertifiedReal gamma_const(std::uint64_t q, unsigned k, unsigned digits, std::uint64_t prime_cutoff) {
  check_k(k);
  check_digits(digits);
  const Real s = Real(-1) + Real(1) / k;
  return zeta_real(s, digits) * fstar(s, q, k, prime_cutoff);
}

CertifiedReal c_k(unsigned k, unsigned digits, std::uint64_t prime_cutoff) {
  check_k(k);
  check_digits(digits);
  check_cutoff(prime_cutoff);
  static std::mutex mu;
  static std::map<CkKey, CertifiedReal> cache;
  const CkKey key{k, digits, prime_cutoff};
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  EulerProductSpec spec;
  spec.prime_cutoff = prime_cutoff;
  spec.tail_exponent = k;
  spec.tail_constant = 2.0 / (1.0 - 2.0 * std::pow(static_cast<double>(prime_cutoff), -static_cast<double>(k)));
  spec.factor = [k](std::uint64_t p) {
    const Real pk1 = pow(Real(p), k - 1);
    return 1 - 2 / (pk1 * p + pk1);
  };
  spec.log_factor = [k](std::uint64_t p) {
    const long double pk1 = std::pow(static_cast<long double>(p), static_cast<long double>(k - 1));
    return std::log1p(-2.0L / (pk1 * p + pk1));
  };
  const CertifiedReal product = euler_product(spec);

  const Real kr(k);
  const CertifiedReal lead = CertifiedReal::exact(BigRational(BigInt(2) * k * k, BigInt(1) - BigInt(k))) /
                             zeta_real(Real(2), digits);  // 2k / (1/k - 1) = 2k^2 / (1 - k)
  CertifiedReal value = lead * zeta_real(Real(-1) + 1 / kr, digits) * product;

  std::lock_guard lock(mu);
  cache.emplace(key, value);
  return value;
}

CertifiedReal f_k_of_q(std::uint64_t q, unsigned k, unsigned digits, std::uint64_t prime_cutoff) {
  check_k(k);
  if (q < 1) throw std::invalid_argument("q must be positive");
  const Real e = Real(1) / k - 1;
  Real local = 1;
  std::size_t ops = 0;
  for (const auto& [p, v] : factorize(q)) {
    const Real pr(p);
    const Real g = pow(pr, std::min(v, k));
    const Real base = 1 - 2 / pow(pr, k);
    local *= (base + pow(g, e) / pr) / (base + 1 / pr);
    ops += 8;
  }
  const CertifiedReal loc(local, abs(local) * rounding_unit() * static_cast<long>(ops + 2));
  return c_k(k, digits, prime_cutoff) * loc;
}

CertifiedReal f_k_via_gamma(std::uint64_t q, unsigned k, unsigned digits, std::uint64_t prime_cutoff) {
  const CertifiedReal lead = CertifiedReal::exact(BigRational(BigInt(2) * k * k, BigInt(1) - BigInt(k))) /
                             zeta_real(Real(2), digits);
  return lead * gamma_const(q, k, digits, prime_cutoff);
}

bool DoubleSumCheck::consistent() const {
  return residual <= Real(tail_bound) + rounding + closed_form.err();
}

DoubleSumCheck dirichlet_double_sum_check(const Real& s, std::uint64_t q, unsigned k, std::uint64_t D,
                                          std::uint64_t prime_cutoff) {
  check_k(k);
  if (!(s > 1)) throw std::domain_error("double sum: s must exceed 1");
  if (q < 1 || D < 1) throw std::invalid_argument("double sum: q and D must be positive");

  const auto mu = moebius_table(D);
  std::vector<std::uint64_t> sqfree;
  for (std::uint64_t d = 1; d <= D; ++d)
    if (mu[d] != 0) sqfree.push_back(d);

  // [q, h^k]^-s depends only on h = (d, d').
  std::vector<Real> weight(D + 1);
  for (std::uint64_t h = 1; h <= D; ++h) {
    if (mu[h] == 0) continue;
    const BigInt hk = pow_big(h, k);
    const BigInt g = gcd(BigInt(q), hk);
    weight[h] = pow(to_real(BigInt(q) * hk / g), -s);
  }

  Real sum = 0;
  Real magnitude = 0;
  for (std::uint64_t d : sqfree) {
    for (std::uint64_t d2 : sqfree) {
      const std::uint64_t h = std::gcd(d, d2);
      const Real l = Real(d / h) * d2;
      const Real term = weight[h] / pow(l, k);
      magnitude += term;
      if (mu[d] * mu[d2] > 0)
        sum += term;
      else
        sum -= term;
    }
  }

  const Real kr(k);
  const CertifiedReal closed = zeta_real(kr * (s + 1)) * fstar(s, q, k, prime_cutoff) /
                               (CertifiedReal(pow(Real(q), s), pow(Real(q), s) * rounding_unit() * 4) *
                                zeta_real(2 * kr * (s + 1)));

  DoubleSumCheck out;
  out.truncated = sum;
  out.closed_form = closed;
  out.residual = abs(sum - closed.value());
  out.rounding = magnitude * rounding_unit() * 8;
  out.tail_bound = lcm_tail_bound(D, k);
  return out;
}

}  // namespace kfree
