#include "kfree/perron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kfree/arith.hpp"
#include "kfree/constants.hpp"
#include "kfree/density.hpp"
#include "kfree/euler_product.hpp"

namespace kfree {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr unsigned kMaxCorrections = 40;
constexpr std::uint64_t kMaxTerms = std::uint64_t{1} << 22;
constexpr double kPi = 3.14159265358979323846;

// B_{2j} / (2j)! for j = 1..kMaxCorrections.
const std::vector<double>& bernoulli_ratios() {
  static const std::vector<double> table = [] {
    const auto B = bernoulli_even(kMaxCorrections);
    std::vector<double> out;
    BigRational fact = 1;
    for (unsigned j = 1; j <= kMaxCorrections; ++j) {
      fact *= BigRational((2 * j - 1) * (2 * j));
      out.push_back(static_cast<double>(B[j - 1] / fact));
    }
    return out;
  }();
  return table;
}

struct EmPlan {
  std::uint64_t N;
  unsigned M;
  double bound;
};

// Smallest M (then N by doubling) whose Euler-Maclaurin remainder bound
//   4 |(s)_{2M}| / (2 pi)^{2M} * N^{1 - sigma - 2M} / (sigma + 2M - 1)
// meets kZetaTarget.
EmPlan plan_for(double sigma, double t) {
  const Complex s(sigma, t);
  for (std::uint64_t N = std::max<std::uint64_t>(64, static_cast<std::uint64_t>(std::ceil(std::abs(t))));
       N <= kMaxTerms; N *= 2) {
    const double logN = std::log(static_cast<double>(N));
    double log_rising = 0;  // log |(s)_{2M}|
    for (unsigned M = 1; M <= kMaxCorrections; ++M) {
      log_rising += std::log(std::abs(s + double(2 * M - 2))) + std::log(std::abs(s + double(2 * M - 1)));
      const double denom = sigma + 2.0 * M - 1;
      if (denom <= 0) continue;
      const double log_bound = std::log(4.0) + log_rising - 2.0 * M * std::log(2 * kPi) +
                               (1 - sigma - 2.0 * M) * logN - std::log(denom);
      if (log_bound < std::log(kZetaTarget)) return {N, M, std::exp(log_bound)};
    }
  }
  throw std::domain_error("zeta: no Euler-Maclaurin plan within the term budget");
}

void check_domain(double sigma, double t) {
  if (!std::isfinite(sigma) || !std::isfinite(t)) throw std::domain_error("zeta: non-finite argument");
  if (sigma < -0.9) throw std::domain_error("zeta: real part below -0.9");
  if (std::abs(t) > 1e4) throw std::domain_error("zeta: |imaginary part| above 1e4");
  if (sigma == 1 && t == 0) throw std::domain_error("zeta: pole at s = 1");
}

// Tail and Bernoulli corrections at N; the head sum is supplied by the caller.
Complex em_tail(const Complex& s, std::uint64_t N, unsigned M) {
  const double n = static_cast<double>(N);
  const Complex n_s = std::exp(-s * std::log(n));  // N^{-s}
  Complex out = n_s * n / (s - 1.0) + 0.5 * n_s;
  const auto& br = bernoulli_ratios();
  Complex rising = s;          // (s)_{2j-1}
  Complex power = n_s / n;     // N^{-s-2j+1}
  for (unsigned j = 1; j <= M; ++j) {
    out += br[j - 1] * rising * power;
    rising *= (s + double(2 * j - 1)) * (s + double(2 * j));
    power /= n * n;
  }
  return out;
}

double weighted_count_unchecked(double Q) {
  const double m = std::floor(Q);
  return m * Q - m * (m + 1) / 2;
}

double default_abscissa(double Q) { return 1.0 + 1.0 / std::log(Q); }

PanelPolicy policy_for(double scale, double omega, double panel_tol) {
  PanelPolicy p;
  p.panel_width = std::min(1.0, 6.0 / omega);
  p.abs_tol = panel_tol * scale;
  p.rel_tol = 1e-12;
  p.max_depth = 24;
  return p;
}

// (1/2 pi) int_{-T}^{T} g(t) dt for g(-t) = conj g(t), or the plain version.
PerronResult line_integral(const ComplexIntegrand& g, double T, double scale, double omega, const ContourSpec& spec) {
  const PanelPolicy policy = policy_for(scale, omega, spec.panel_tol);
  PerronResult out;
  QuadratureResult q;
  if (spec.symmetric) {
    q = spec.parallel ? integrate(g, 0.0, T, policy) : integrate_serial(g, 0.0, T, policy);
    out.value = q.value.real() / kPi;
    out.imag = 0;
    out.quad_error = q.error / kPi;
  } else {
    q = spec.parallel ? integrate(g, -T, T, policy) : integrate_serial(g, -T, T, policy);
    out.value = q.value.real() / (2 * kPi);
    out.imag = q.value.imag() / (2 * kPi);
    out.quad_error = q.error / (2 * kPi);
  }
  out.evaluations = q.evaluations;
  out.converged = q.converged;
  return out;
}

}  // namespace

ZetaValue zeta_complex(ComplexPoint p) {
  check_domain(p.re, p.im);
  const Complex s(p.re, p.im);
  const EmPlan plan = plan_for(p.re, p.im);
  Complex head = 0;
  double magnitude = 0;
  for (std::uint64_t n = plan.N - 1; n >= 1; --n) {
    const double ln = std::log(static_cast<double>(n));
    const double scale = std::exp(-p.re * ln);
    head += scale * Complex(std::cos(p.im * ln), -std::sin(p.im * ln));
    magnitude += scale * (4 + std::abs(p.im) * ln);
  }
  const Complex value = head + em_tail(s, plan.N, plan.M);
  const double rounding = kEps * (magnitude + static_cast<double>(plan.N) * std::abs(head));
  return {value, plan.bound + rounding};
}

ZetaOnLine::ZetaOnLine(double sigma, double t_max) : sigma_(sigma), t_max_(std::abs(t_max)) {
  check_domain(sigma, t_max_);
  const EmPlan plan = plan_for(sigma, t_max_);
  scale_.resize(plan.N);
  log_.resize(plan.N);
  for (std::uint64_t n = 1; n < plan.N; ++n) {
    log_[n] = std::log(static_cast<double>(n));
    scale_[n] = std::exp(-sigma * log_[n]);
  }
}

ZetaValue ZetaOnLine::operator()(double t) const {
  if (std::abs(t) > t_max_) throw std::domain_error("ZetaOnLine: |t| beyond the tabulated range");
  if (sigma_ == 1 && t == 0) throw std::domain_error("zeta: pole at s = 1");
  const EmPlan plan = plan_for(sigma_, t);
  Complex head = 0;
  double magnitude = 0;
  for (std::uint64_t n = plan.N - 1; n >= 1; --n) {
    const bool cached = n < scale_.size();
    const double ln = cached ? log_[n] : std::log(static_cast<double>(n));
    const double sc = cached ? scale_[n] : std::exp(-sigma_ * ln);
    head += sc * Complex(std::cos(t * ln), -std::sin(t * ln));
    magnitude += sc * (4 + std::abs(t) * ln);
  }
  const Complex value = head + em_tail(Complex(sigma_, t), plan.N, plan.M);
  const double rounding = kEps * (magnitude + static_cast<double>(plan.N) * std::abs(head));
  return {value, plan.bound + rounding};
}

double weighted_count(double Q) {
  if (!(Q > 0) || !std::isfinite(Q)) throw std::invalid_argument("weighted_count: Q must be positive");
  if (Q == std::floor(Q)) throw std::invalid_argument("weighted_count: Q must not be an integer");
  return weighted_count_unchecked(Q);
}

PerronResult perron_integral(double Q, const ContourSpec& spec) {
  if (!(Q > 1) || Q == std::floor(Q)) throw std::invalid_argument("perron: Q must be a non-integer above 1");
  if (!(spec.T > 1) || spec.T > 1e4) throw std::invalid_argument("perron: T must lie in (1, 1e4]");
  const double c = spec.c > 0 ? spec.c : default_abscissa(Q);
  if (!(c > 1)) throw std::invalid_argument("perron: abscissa must exceed 1");

  const ZetaOnLine zeta(c, spec.T);
  const double logQ = std::log(Q);
  const double scale = std::exp((c + 1) * logQ);
  auto g = [&](double t) {
    const Complex s(c, t);
    const Complex q_pow = scale * Complex(std::cos(t * logQ), std::sin(t * logQ));
    return zeta(t).value * q_pow / (s * (s + 1.0));
  };
  const double omega = std::abs(logQ) + std::log(std::max(64.0, spec.T)) + 1;
  PerronResult out = line_integral(g, spec.T, scale, omega, spec);
  out.model_error = zeta(spec.T).err * scale / (2 * c);
  return out;
}

PerronResult contour_integral(double X, std::uint64_t q, unsigned k, const ContourSpec& spec,
                              std::uint64_t prime_cutoff) {
  if (k < 2) throw std::invalid_argument("contour: k must be at least 2");
  if (q < 1) throw std::invalid_argument("contour: q must be positive");
  if (!(X > 1) || X == std::floor(X)) throw std::invalid_argument("contour: X must be a non-integer above 1");
  if (!(spec.T > 1) || spec.T > 1e4) throw std::invalid_argument("contour: T must lie in (1, 1e4]");
  if (prime_cutoff < 100) throw std::invalid_argument("contour: prime cutoff too small");
  const double c = spec.c > 0 ? spec.c : default_abscissa(X);
  if (!(c > 1)) throw std::invalid_argument("contour: abscissa must exceed 1");

  // Local factor a_p + p^-k exp(s b_p) with b_p = log g_p - k log p.
  const Factorization f = factorize(q);
  const auto primes = primes_up_to(prime_cutoff);
  std::vector<double> a, w, b;
  double abs_product = 1;
  for (std::uint32_t p : *primes) {
    if (p > prime_cutoff) break;
    const double lp = std::log(static_cast<double>(p));
    const double pk = std::exp(k * lp);
    const double bp = std::min(f.valuation(p), k) * lp - k * lp;
    a.push_back(1 - 2 / pk);
    w.push_back(1 / pk);
    b.push_back(bp);
    abs_product *= a.back() + w.back() * std::exp(c * bp);
  }
  // |log factor| <= 3 p^-k beyond the cutoff.
  const double P = static_cast<double>(prime_cutoff);
  const double tail = 3.0 / (1.0 - 3.0 * std::pow(P, -double(k))) * std::pow(P, 1.0 - k) / (k - 1.0);

  const ZetaOnLine zeta(c, spec.T);
  const double logX = std::log(X);
  const double scale = std::exp((c + 1) * logX);
  auto g = [&](double t) {
    const Complex s(c, t);
    Complex prod = 1;
    for (std::size_t i = 0; i < a.size(); ++i) prod *= a[i] + w[i] * std::exp(s * b[i]);
    const Complex x_pow = scale * Complex(std::cos(t * logX), std::sin(t * logX));
    return zeta(t).value * prod * x_pow / (s * (s + 1.0));
  };
  const double omega = std::abs(logX) + std::log(std::max(64.0, spec.T)) + 2.0 * k;
  PerronResult out = line_integral(g, spec.T, scale, omega, spec);
  const double zeta_c = zeta(0.0).value.real();
  out.model_error = (std::expm1(tail) * zeta_c * abs_product + zeta(spec.T).err * abs_product * std::exp(tail)) *
                    scale / (2 * c);
  return out;
}

CertifiedReal residue_main_terms(const Real& X, std::uint64_t q, unsigned k, unsigned digits) {
  if (!(X > 0)) throw std::invalid_argument("residue terms: X must be positive");
  const CertifiedReal zk = zeta_real(Real(k), digits);
  const CertifiedReal a = alpha(q, k).evaluate(zk);
  const CertifiedReal b = beta(k).evaluate(zk);
  const CertifiedReal g = gamma_const(q, k, digits);
  const CertifiedReal z2 = zeta_real(Real(2), digits);
  const CertifiedReal x(X, abs(X) * rounding_unit());
  const CertifiedReal half = CertifiedReal::exact(BigRational(1, 2));
  const CertifiedReal root = pow(x, Real(1) / k);
  // k / (-1 + 1/k) = k^2 / (1 - k)
  const CertifiedReal lead = CertifiedReal::exact(BigRational(BigInt(k) * k, BigInt(1) - BigInt(k)));
  return a * x * x * half - b * x * half + lead * g * root / z2;
}

CertifiedReal dirichlet_weighted_sum(const Real& X, std::uint64_t q, unsigned k) {
  if (k < 2) throw std::invalid_argument("weighted sum: k must be at least 2");
  if (q < 1) throw std::invalid_argument("weighted sum: q must be positive");
  if (!(X > 0)) throw std::invalid_argument("weighted sum: X must be positive");

  struct Local {
    Real m;       // p^k / g_p
    Real weight;  // rho_p m_p
  };
  const Factorization f = factorize(q);
  const std::uint64_t root = integer_root(static_cast<std::uint64_t>(floor(X).convert_to<double>()), k);
  std::vector<Local> locals;
  auto add = [&](std::uint64_t p) {
    const unsigned v = f.valuation(p);
    const BigInt pk = pow_big(p, k);
    const BigInt m = pk / pow_big(p, std::min(v, k));
    locals.push_back({to_real(m), to_real(m) / to_real(BigInt(pk - 2))});
  };
  for (const auto& [p, v] : f)
    if (p > root) add(p);
  for (std::uint32_t p : *primes_up_to(root)) {
    if (p > root) break;
    add(p);
  }
  std::sort(locals.begin(), locals.end(), [](const Local& x, const Local& y) { return x.m < y.m; });

  Real sum = 0;
  std::size_t terms = 0;
  // Depth-first over squarefree r with m(r) <= X, primes ordered by m_p.
  auto visit = [&](auto&& self, std::size_t from, const Real& m, const Real& weight) -> void {
    const Real Y = X / m;
    const Real fl = floor(Y);
    sum += weight * (fl * Y - fl * (fl + 1) / 2);
    ++terms;
    for (std::size_t i = from; i < locals.size(); ++i) {
      const Real next = m * locals[i].m;
      if (next > X) break;
      self(self, i + 1, next, weight * locals[i].weight);
    }
  };
  visit(visit, 0, Real(1), Real(1));

  // prod_p (1 - 2/p^k) = zeta(k)^-2 prod_p (1 - u^2/(1-u)^2), u = p^-k.
  EulerProductSpec spec;
  spec.prime_cutoff = kDefaultPrimeCutoff;
  spec.tail_exponent = 2.0 * k;
  spec.tail_constant = 1.001;
  spec.factor = [k](std::uint64_t p) {
    const Real u = pow(Real(p), -static_cast<int>(k));
    return 1 - u * u / ((1 - u) * (1 - u));
  };
  spec.log_factor = [k](std::uint64_t p) {
    const long double u = std::pow(static_cast<long double>(p), -static_cast<long double>(k));
    const long double r = u / (1 - u);
    return std::log1p(-r * r);
  };
  const CertifiedReal zk = zeta_real(Real(k));
  const CertifiedReal constant = euler_product(spec) / (zk * zk);
  const CertifiedReal body(sum, abs(sum) * rounding_unit() * static_cast<long>(4 * terms + 4));
  return constant * body;
}

std::vector<OscRow> osc_diagnostic(double L, double Q, unsigned k, double delta) {
  if (k < 2) throw std::invalid_argument("osc: k must be at least 2");
  if (!(L >= 2) || L > 1e4) throw std::invalid_argument("osc: L must lie in [2, 1e4]");
  if (!(Q > 0)) throw std::invalid_argument("osc: Q must be positive");
  if (delta < 1.0 / (2 * k) || delta >= 1.0 / k) throw std::invalid_argument("osc: delta must lie in [1/2k, 1/k)");

  const double r1 = -1 + delta;
  const double r2 = delta * k;
  const ZetaOnLine z1(r1, L);
  const ZetaOnLine z2(r2, L);
  const double logQ = std::log(Q);
  auto g = [&](double t) {
    return z1(t).value * z2(t).value * Complex(std::cos(t * logQ), std::sin(t * logQ)) / (t * t);
  };
  const double omega = std::abs(logQ) + 2 * std::log(std::max(64.0, L)) + 1;
  PanelPolicy policy;
  policy.panel_width = std::min(1.0, 6.0 / omega);
  policy.abs_tol = 1e-8;
  policy.rel_tol = 1e-10;

  std::vector<OscRow> rows;
  Complex acc = 0;
  double err = 0;
  bool ok = true;
  for (double lo = 1, hi = 2; hi <= L; lo = hi, hi *= 2) {
    const QuadratureResult part = integrate(g, lo, hi, policy);
    acc += part.value;
    err += part.error;
    ok = ok && part.converged;
    const double bound = std::pow(hi, 0.25 - 0.5 / k) * std::log(hi);
    rows.push_back({hi, std::abs(acc), bound, std::abs(acc) / bound, err, ok});
  }
  return rows;
}

}  // namespace kfree
