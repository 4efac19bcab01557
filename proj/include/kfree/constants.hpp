// Certified values of zeta on the real line, the Euler product F*(s) and the
// constants gamma, C_k and f_k(q) that appear in the variance asymptotic.
//
// For q >= 1, k >= 2 and g_p = (q, p^k):
//
//   F*(s) = prod_{p|q} (1 + g_p^s / p^{k(1+s)}) / (1 + p^{-k(1+s)})
//         * prod_p (1 - 2 / (p^k (1 + g_p^s / p^{k(1+s)})))
//
//   gamma(q) = zeta(-1 + 1/k) F*(-1 + 1/k)
//   C_k      = 2k / ((1/k - 1) zeta(2)) * zeta(-1 + 1/k) * prod_p (1 - 2/(p^k + p^{k-1}))
//   f_k(q)   = C_k prod_{p|q} (1 - 2/p^k + g_p^{1/k-1}/p) / (1 - 2/p^k + 1/p)
//
// The product quoted for C_k, prod_p (1 - 2/(p^k+p^{k-1})) / (1 - p^{1-1/k}),
// has factors tending to zero; the 1/(1 - p^{1-1/k}) part is read as the
// continued zeta(-1 + 1/k).

#pragma once

#include <cstdint>
#include <vector>

#include "kfree/arith.hpp"
#include "kfree/certified.hpp"

namespace kfree {

inline constexpr std::uint64_t kDefaultPrimeCutoff = 10'000'000;
inline constexpr std::uint64_t kMinPrimeCutoff = 100'000;

/// Even-index Bernoulli numbers B_2, B_4, ..., B_{2n}, exact.
std::vector<BigRational> bernoulli_even(std::size_t n);

/// zeta(s) for real s > -1, s != 1.  Euler-Maclaurin with a rigorous
/// remainder for s >= 0; the functional equation for -1 < s < 0.
CertifiedReal zeta_real(const Real& s, unsigned digits = kDefaultPrecisionDigits);

/// Lower end of the domain on which F* is evaluated: s >= -1 + 1/(4k).
Real fstar_abscissa(unsigned k);

/// The product over p not dividing q is shared by every q and memoised per
/// (s, k, prime_cutoff); the primes of q enter through exact local ratios.
CertifiedReal fstar(const Real& s, std::uint64_t q, unsigned k,
                    std::uint64_t prime_cutoff = kDefaultPrimeCutoff);

/// Serial twin of fstar, for determinism tests and benchmarks.
CertifiedReal fstar_serial(const Real& s, std::uint64_t q, unsigned k,
                           std::uint64_t prime_cutoff = kDefaultPrimeCutoff);

CertifiedReal gamma_const(std::uint64_t q, unsigned k, unsigned digits = kDefaultPrecisionDigits,
                          std::uint64_t prime_cutoff = kDefaultPrimeCutoff);

/// Memoised per (k, digits, prime_cutoff).
CertifiedReal c_k(unsigned k, unsigned digits = kDefaultPrecisionDigits,
                  std::uint64_t prime_cutoff = kDefaultPrimeCutoff);

CertifiedReal f_k_of_q(std::uint64_t q, unsigned k, unsigned digits = kDefaultPrecisionDigits,
                       std::uint64_t prime_cutoff = kDefaultPrimeCutoff);

/// 2k gamma(q) / ((1/k - 1) zeta(2)): the gamma route to f_k(q).
CertifiedReal f_k_via_gamma(std::uint64_t q, unsigned k, unsigned digits = kDefaultPrecisionDigits,
                            std::uint64_t prime_cutoff = kDefaultPrimeCutoff);

struct DoubleSumCheck {
  Real truncated;             // sum over d, d' <= D
  CertifiedReal closed_form;  // zeta(k(s+1)) F*(s) / (q^s zeta(2k(s+1)))
  Real residual;              // |truncated - closed_form.value|
  Real rounding;              // rounding bound on the truncated sum
  double tail_bound;          // bound on the omitted pairs
  /// residual is explained by truncation, rounding and the closed-form radius.
  bool consistent() const;
};

/// Compares the truncated double series
///   sum_{d,d'} mu(d) mu(d') / ([d^k, d'^k] [q, (d^k, d'^k)]^s)
/// against its Euler-product closed form.  Requires s > 1.
DoubleSumCheck dirichlet_double_sum_check(const Real& s, std::uint64_t q, unsigned k, std::uint64_t D,
                                          std::uint64_t prime_cutoff = kDefaultPrimeCutoff);

}  // namespace kfree
