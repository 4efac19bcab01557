// The variance V_x(q) = sum_{a=1}^q (N_a - x eta(q,a))^2 of k-free counts in
// residue classes, its exact decomposition, the truncated J(x) double sum and
// the asymptotic main term with its error budget.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kfree/certified.hpp"
#include "kfree/constants.hpp"
#include "kfree/density.hpp"
#include "kfree/sieve.hpp"
#include "kfree/zeta_poly.hpp"

namespace kfree {

inline constexpr std::uint64_t kVarianceMaxX = 1'000'000'000;

/// Literal sum over a of (N_a - x eta_a)^2 in Q[1/zeta(k)].
/// Requires 1 <= q <= x <= 1e9.
ZetaPoly variance_exact(std::uint64_t x, std::uint64_t q, unsigned k);
ZetaPoly variance_exact(const ClassCounts& counts, const EtaTable& table);

struct Decomposition {
  BigInt A;            // sum N_a^2
  ZetaPoly B;          // sum eta_a N_a
  BigInt C;            // sum N_a (N_a - 1) / 2
  ZetaPoly sum_eta_sq; // sum eta_a^2
  std::uint64_t kfree_count = 0;

  explicit Decomposition(unsigned k) : B(k), sum_eta_sq(k) {}

  /// A - 2x B + x^2 sum eta_a^2.
  ZetaPoly variance(std::uint64_t x) const;
  /// A == 2C + #{n <= x k-free}.
  bool pairing_holds() const { return A == 2 * C + kfree_count; }
};

/// Sums grouped by divisor class, independent of variance_exact.
Decomposition decomposition(std::uint64_t x, std::uint64_t q, unsigned k);
Decomposition decomposition(const ClassCounts& counts, const EtaTable& table);

struct JTruncation {
  BigRational partial;      // exact sum over squarefree d, d' <= D
  double remainder_bound;   // x^2/(2q) * sum_{[d,d'] > D} [d,d']^-k
  std::size_t pairs = 0;
};

/// J(x) = sum_{d,d'} mu(d) mu(d') L/[d,d']^k T(x/L),  L = [q, (d,d')^k],
/// T(Y) = floor(Y) Y - floor(Y)(floor(Y)+1)/2, truncated at d, d' <= D.
JTruncation j_truncated(const BigRational& x, std::uint64_t q, unsigned k, std::uint64_t D);

/// q (x/q)^{1/k} f_k(q).
CertifiedReal main_term(std::uint64_t x, std::uint64_t q, unsigned k, unsigned digits = kDefaultPrecisionDigits,
                        std::uint64_t prime_cutoff = kDefaultPrimeCutoff);

/// x^eps (q (x/q)^{2/(9 - 2/k)} + x^{1 + 2/(k+1)} / q).
double error_budget(double x, double q, unsigned k, double eps);

inline constexpr double kSanityConstant = 10.0;

struct VarianceReport {
  std::uint64_t x = 0;
  std::uint64_t q = 0;
  unsigned k = 0;
  ZetaPoly V_exact{2};
  CertifiedReal V_num;   // direct sum of squared class errors
  CertifiedReal V_eval;  // V_exact evaluated at a certified zeta(k)
  BigInt A;
  ZetaPoly B{2};
  BigInt C;
  CertifiedReal main;
  double budget = 0;
  double ratio = 0;
  double wall_time = 0;  // seconds
  bool passed = false;
  std::string error;     // set when the entry could not be computed
};

struct ScanOptions {
  double eps = 0.05;
  unsigned digits = kDefaultPrecisionDigits;
  std::uint64_t prime_cutoff = kDefaultPrimeCutoff;
};

/// One report per q.  An entry passes when the decomposition identities
/// hold, V_num and V_eval overlap, V > 0, main > 0 and
/// |V - main| <= kSanityConstant * error_budget.  Failures are recorded and
/// the scan continues.
std::vector<VarianceReport> scan(std::uint64_t x, const std::vector<std::uint64_t>& q_list, unsigned k,
                                 const ScanOptions& options = {});

}  // namespace kfree
