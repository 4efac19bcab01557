// Densities of k-free numbers in residue classes, held exactly in Q[1/zeta(k)].
//
// The density of the class a mod q is
//
//   eta(q, a) = sum_{d >= 1, (q, d^k) | a} mu(d) / [q, d^k].
//
// Splitting d into its part supported on the primes of q and its part coprime
// to q gives the closed form used here:
//
//   eta(q, a) = 1 / (q zeta(k)) * prod_{p | q} (1 - c_p(a) (q, p^k) / p^k) / (1 - p^-k),
//
// where c_p(a) = 1 when (q, p^k) divides a and 0 otherwise.  The test suite
// checks this against direct summation of the series.

#pragma once

#include <cstdint>
#include <vector>

#include "kfree/arith.hpp"
#include "kfree/zeta_poly.hpp"

namespace kfree {

/// Rational r with eta(q, a) = r / zeta(k).
BigRational eta_rational(std::uint64_t q, std::uint64_t a, unsigned k);
BigRational eta_rational(const Factorization& q_factors, std::uint64_t q, std::uint64_t a, unsigned k);

/// Requires q >= 1, 1 <= a <= q, k >= 2.
ZetaPoly eta(std::uint64_t q, std::uint64_t a, unsigned k);

/// eta(q, a) for a = 1..q.  eta only depends on gcd(q, a), so one value is
/// stored per divisor class and broadcast through an index.
class EtaTable {
 public:
  EtaTable(std::uint64_t q, unsigned k);

  std::uint64_t q() const { return q_; }
  unsigned k() const { return k_; }

  /// Rational part of eta(q, a), 1 <= a <= q.
  const BigRational& rational(std::uint64_t a) const { return values_[class_of_[a - 1]]; }
  ZetaPoly operator[](std::uint64_t a) const { return ZetaPoly::monomial(k_, 1, rational(a)); }

  /// Number of distinct divisor classes evaluated.
  std::size_t distinct() const { return values_.size(); }
  /// Index of the divisor class of a, in [0, distinct()).
  std::uint32_t class_index(std::uint64_t a) const { return class_of_[a - 1]; }
  const BigRational& class_value(std::uint32_t idx) const { return values_[idx]; }
  /// Number of a in 1..q falling in each class.
  const std::vector<std::uint64_t>& class_sizes() const { return sizes_; }

 private:
  std::uint64_t q_;
  unsigned k_;
  std::vector<BigRational> values_;
  std::vector<std::uint64_t> sizes_;
  std::vector<std::uint32_t> class_of_;
};

EtaTable eta_table(std::uint64_t q, unsigned k);

/// alpha(q) = zeta(k)^-2 prod_{p|q} (1 - 2/p^k + (q,p^k)/p^{2k}) / (1 - p^-k)^2.
ZetaPoly alpha(std::uint64_t q, unsigned k);

/// beta = prod_p (1 - p^-k) = 1/zeta(k).
ZetaPoly beta(unsigned k);

struct IdentityCheck {
  bool holds;
  ZetaPoly discrepancy;  // zero exactly when the identity holds
};

/// sum_{a=1}^q eta(q,a)^2 - alpha(q)/q.
IdentityCheck check_sum_eta_sq(std::uint64_t q, unsigned k);

/// sum_{a=1}^q eta(q,a) - 1/zeta(k).
IdentityCheck check_partition(std::uint64_t q, unsigned k);

/// eta(q, a) - eta(q, gcd(q, a)) over all a, each side evaluated directly.
/// The discrepancy is that of the first failing class, or zero.
IdentityCheck check_class_collapse(std::uint64_t q, unsigned k);

/// max_a q |r_a| where eta(q,a) = r_a / zeta(k); a logged diagnostic.
double eta_scaled_max(std::uint64_t q, unsigned k);

}  // namespace kfree
