#include "kfree/variance.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kfree {

namespace {

void check_range(std::uint64_t x, std::uint64_t q, unsigned k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (q < 1) throw std::invalid_argument("q must be positive");
  if (q > x) throw std::invalid_argument("q must not exceed x");
  if (x > kVarianceMaxX) throw std::out_of_range("x exceeds the sieve budget of 1e9");
}

void check_match(const ClassCounts& counts, const EtaTable& table) {
  if (counts.q != table.q() || counts.k != table.k())
    throw std::invalid_argument("class counts and eta table disagree on q or k");
}

// floor(y) y - floor(y)(floor(y)+1)/2 for y >= 0.
BigRational weighted_floor_sum(const BigRational& y) {
  const BigInt m = numerator(y) / denominator(y);
  return BigRational(m) * y - BigRational(m * (m + 1), BigInt(2));
}

}  // namespace

ZetaPoly variance_exact(const ClassCounts& counts, const EtaTable& table) {
  check_match(counts, table);
  const unsigned k = table.k();
  const BigRational x(counts.x);
  ZetaPoly v(k);
  for (std::uint64_t a = 1; a <= counts.q; ++a) {
    const ZetaPoly e = ZetaPoly::constant(k, BigRational(counts[a])) - table[a] * x;
    v += e * e;
  }
  return v;
}

ZetaPoly variance_exact(std::uint64_t x, std::uint64_t q, unsigned k) {
  check_range(x, q, k);
  return variance_exact(class_counts(x, q, k), EtaTable(q, k));
}

ZetaPoly Decomposition::variance(std::uint64_t x) const {
  const BigRational xr(x);
  return ZetaPoly::constant(B.k(), BigRational(A)) - B * (2 * xr) + sum_eta_sq * (xr * xr);
}

Decomposition decomposition(const ClassCounts& counts, const EtaTable& table) {
  check_match(counts, table);
  const unsigned k = table.k();
  Decomposition d(k);
  std::vector<BigInt> class_total(table.distinct());
  BigInt a_sum = 0;
  BigInt c_sum = 0;
  for (std::uint64_t a = 1; a <= counts.q; ++a) {
    const BigInt n(counts[a]);
    a_sum += n * n;
    c_sum += n * (n - 1) / 2;
    class_total[table.class_index(a)] += n;
  }
  BigRational b = 0;
  BigRational sq = 0;
  const auto& sizes = table.class_sizes();
  for (std::uint32_t c = 0; c < table.distinct(); ++c) {
    const BigRational& r = table.class_value(c);
    b += r * BigRational(class_total[c]);
    sq += r * r * BigRational(BigInt(sizes[c]));
  }
  d.A = a_sum;
  d.C = c_sum;
  d.B = ZetaPoly::monomial(k, 1, b);
  d.sum_eta_sq = ZetaPoly::monomial(k, 2, sq);
  d.kfree_count = counts.total();
  return d;
}

Decomposition decomposition(std::uint64_t x, std::uint64_t q, unsigned k) {
  check_range(x, q, k);
  return decomposition(class_counts(x, q, k), EtaTable(q, k));
}

JTruncation j_truncated(const BigRational& x, std::uint64_t q, unsigned k, std::uint64_t D) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (q < 1 || D < 1) throw std::invalid_argument("q and D must be positive");
  if (x <= 0) throw std::invalid_argument("x must be positive");

  const auto mu = moebius_table(D);
  std::vector<std::uint64_t> sqfree;
  for (std::uint64_t d = 1; d <= D; ++d)
    if (mu[d] != 0) sqfree.push_back(d);

  // L = [q, h^k] depends only on h = (d, d'); cache the inner weighted sum.
  std::vector<BigInt> lcm_q(D + 1);
  std::vector<BigRational> inner(D + 1);
  for (std::uint64_t h = 1; h <= D; ++h) {
    if (mu[h] == 0) continue;
    const BigInt hk = pow_big(h, k);
    lcm_q[h] = BigInt(q) * hk / gcd(BigInt(q), hk);
    inner[h] = BigRational(lcm_q[h]) * weighted_floor_sum(x / BigRational(lcm_q[h]));
  }

  JTruncation out;
  BigRational total = 0;
  for (std::uint64_t d : sqfree) {
    BigRational row = 0;
    for (std::uint64_t d2 : sqfree) {
      const std::uint64_t h = std::gcd(d, d2);
      const BigInt l = BigInt(d / h) * d2;
      BigRational term = inner[h] / BigRational(pow(l, k));
      if (mu[d] * mu[d2] > 0)
        row += term;
      else
        row -= term;
      ++out.pairs;
    }
    total += row;
  }
  out.partial = total;
  out.remainder_bound = static_cast<double>(x * x / BigRational(2 * q)) * lcm_tail_bound(D, k);
  return out;
}

CertifiedReal main_term(std::uint64_t x, std::uint64_t q, unsigned k, unsigned digits, std::uint64_t prime_cutoff) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (q < 1 || q > x) throw std::invalid_argument("main term requires 1 <= q <= x");
  const Real ratio = Real(x) / Real(q);
  const Real root = pow(ratio, Real(1) / k);
  const CertifiedReal scale(Real(q) * root, Real(q) * root * rounding_unit() * 8);
  return scale * f_k_of_q(q, k, digits, prime_cutoff);
}

double error_budget(double x, double q, unsigned k, double eps) {
  if (eps < 0) throw std::invalid_argument("eps must be non-negative");
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  const double kd = k;
  return std::pow(x, eps) * (q * std::pow(x / q, 2.0 / (9.0 - 2.0 / kd)) + std::pow(x, 1.0 + 2.0 / (kd + 1.0)) / q);
}

std::vector<VarianceReport> scan(std::uint64_t x, const std::vector<std::uint64_t>& q_list, unsigned k,
                                 const ScanOptions& options) {
  std::vector<VarianceReport> reports;
  const CertifiedReal zk = zeta_real(Real(k), options.digits);
  for (std::uint64_t q : q_list) {
    const auto start = std::chrono::steady_clock::now();
    VarianceReport r;
    r.x = x;
    r.q = q;
    r.k = k;
    try {
      check_range(x, q, k);
      const ClassCounts counts = class_counts(x, q, k);
      const EtaTable table(q, k);
      const Decomposition dec = decomposition(counts, table);
      r.V_exact = dec.variance(x);
      r.A = dec.A;
      r.B = dec.B;
      r.C = dec.C;
      r.V_eval = r.V_exact.evaluate(zk);

      // Direct numeric sum with eta_a = r_a / zeta(k) per class.
      std::vector<CertifiedReal> eta_num;
      for (std::uint32_t c = 0; c < table.distinct(); ++c)
        eta_num.push_back(CertifiedReal::exact(table.class_value(c)) / zk * CertifiedReal::exact(long(x)));
      Real v = 0;
      Real err = 0;
      for (std::uint64_t a = 1; a <= q; ++a) {
        const CertifiedReal& xe = eta_num[table.class_index(a)];
        const Real e = Real(counts[a]) - xe.value();
        v += e * e;
        err += 2 * abs(e) * xe.err() + xe.err() * xe.err();
      }
      err += abs(v) * rounding_unit() * static_cast<long>(4 * q + 4);
      r.V_num = CertifiedReal(v, err);

      r.main = main_term(x, q, k, options.digits, options.prime_cutoff);
      r.budget = error_budget(double(x), double(q), k, options.eps);
      r.ratio = r.main.value() != 0 ? (r.V_num.value() / r.main.value()).convert_to<double>() : 0.0;
      const double gap = abs(r.V_num.value() - r.main.value()).convert_to<double>();
      r.passed = dec.pairing_holds() && r.V_num.overlaps(r.V_eval) && r.V_num.lower() > 0 &&
                 r.main.lower() > 0 && gap <= kSanityConstant * r.budget;
    } catch (const std::exception& e) {
      r.error = e.what();
      r.passed = false;
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace kfree
