// Weighted Perron formula, the contour integral behind J(x), and the
// oscillatory-integral diagnostic.
//
// For non-integer Q > 0, c > 1 and T > 1,
//
//   sum_{n <= Q} (Q - n) ~ (1/2 pi i) int_{c-iT}^{c+iT} zeta(s) Q^{s+1} / (s(s+1)) ds,
//
// and the same kernel applied to
//
//   I(s) = zeta(s) zeta(k(s+1)) F*(s) / zeta(2k(s+1))
//        = zeta(s) prod_p (1 - 2/p^k + g_p^s p^{-k(1+s)}),   g_p = (q, p^k),
//
// gives sum_{n <= X} b_n (X - n), whose main terms are the residues
// alpha X^2/2 - beta X/2 + k gamma X^{1/k} / ((-1+1/k) zeta(2)).

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "kfree/certified.hpp"
#include "kfree/quadrature.hpp"

namespace kfree {

struct ComplexPoint {
  double re = 0;
  double im = 0;
};

struct ZetaValue {
  Complex value;
  double err;  // Euler-Maclaurin remainder plus a summation rounding estimate
};

inline constexpr double kZetaTarget = 1e-12;

/// zeta(s) for re(s) >= -0.9, |im(s)| <= 1e4, s != 1.
ZetaValue zeta_complex(ComplexPoint s);

/// zeta(sigma + it) for a fixed sigma, with n^-sigma and log n tabulated.
class ZetaOnLine {
 public:
  /// Valid for |t| <= t_max.
  ZetaOnLine(double sigma, double t_max);
  ZetaValue operator()(double t) const;
  double sigma() const { return sigma_; }

 private:
  double sigma_;
  double t_max_;
  std::vector<double> scale_;  // n^-sigma, index n
  std::vector<double> log_;    // log n, index n
};

/// sum_{n <= Q} (Q - n) = mQ - m(m+1)/2 with m = floor(Q).  Rejects integer
/// or non-positive Q.
double weighted_count(double Q);

struct ContourSpec {
  double c = 0;  // abscissa; 0 selects 1 + 1/log Q
  double T = 200;
  double panel_tol = 1e-10;  // relative to Q^{c+1}
  bool symmetric = true;     // integrate [0, T] and double the real part
  bool parallel = true;
};

struct PerronResult {
  double value = 0;      // real part of the integral
  double imag = 0;       // imaginary part; zero by symmetry
  double quad_error = 0; // accumulated Kronrod-Gauss gaps
  double model_error = 0;  // integrand truncation bound times the kernel mass
  std::size_t evaluations = 0;
  bool converged = true;
};

/// (1/2 pi i) int_{c-iT}^{c+iT} zeta(s) Q^{s+1} / (s(s+1)) ds.
PerronResult perron_integral(double Q, const ContourSpec& spec);

inline constexpr std::uint64_t kContourPrimeCutoff = 100'000;

/// (1/2 pi i) int_{c-iT}^{c+iT} I(s) X^{s+1} / (s(s+1)) ds, with the Euler
/// product of I truncated at prime_cutoff and its tail bound folded into
/// model_error.
PerronResult contour_integral(double X, std::uint64_t q, unsigned k, const ContourSpec& spec,
                              std::uint64_t prime_cutoff = kContourPrimeCutoff);

/// alpha X^2/2 - beta X/2 + k gamma X^{1/k} / ((-1+1/k) zeta(2)).
CertifiedReal residue_main_terms(const Real& X, std::uint64_t q, unsigned k,
                                 unsigned digits = kDefaultPrecisionDigits);

/// sum_{n <= X} b_n (X - n) exactly, where sum b_n n^-s = I(s).  Writing each
/// local factor as (1 - 2/p^k)(1 + rho_p m_p^-s) with rho_p = 1/(p^k - 2) and
/// m_p = p^k/g_p,
///
///   S(X) = prod_p (1 - 2/p^k) * sum_{r squarefree, m(r) <= X} rho(r) m(r) T(X/m(r)),
///
/// T(Y) = floor(Y) Y - floor(Y)(floor(Y)+1)/2.  The only approximation is the
/// constant prod_p (1 - 2/p^k), certified through its Euler product.
CertifiedReal dirichlet_weighted_sum(const Real& X, std::uint64_t q, unsigned k);

struct OscRow {
  double L;         // upper limit of this dyadic row
  double integral;  // |int_1^L zeta(R1+it) zeta(R2+it) Q^{it} dt / t^2|
  double bound;     // L^{1/4 - 1/(2k)} log L
  double ratio;
  double quad_error;
  bool converged;
};

/// Rows at L' = 2, 4, ..., up to L, with R1 = -1 + delta and R2 = delta k.
/// Requires 1/(2k) <= delta < 1/k and 2 <= L <= 1e4.
std::vector<OscRow> osc_diagnostic(double L, double Q, unsigned k, double delta);

}  // namespace kfree
