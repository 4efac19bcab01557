#include "kfree/density.hpp"

#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace kfree {

namespace {

// (q, p^k) for a prime p with v_p(q) = v.
BigInt local_gcd(std::uint64_t p, unsigned v, unsigned k) { return pow_big(p, std::min(v, k)); }

void check_args(std::uint64_t q, unsigned k) {
  if (q < 1) throw std::invalid_argument("q must be positive");
  if (k < 2) throw std::invalid_argument("k must be at least 2");
}

}  // namespace

BigRational eta_rational(const Factorization& q_factors, std::uint64_t q, std::uint64_t a, unsigned k) {
  if (a < 1 || a > q) throw std::out_of_range("eta: residue a must lie in 1..q");
  BigRational r(BigInt(1), BigInt(q));
  for (const auto& [p, v] : q_factors) {
    const BigInt pk = pow_big(p, k);
    const BigInt g = local_gcd(p, v, k);
    const bool divides = (BigInt(a) % g) == 0;
    r *= BigRational(divides ? BigInt(pk - g) : pk, pk - 1);
  }
  return r;
}

BigRational eta_rational(std::uint64_t q, std::uint64_t a, unsigned k) {
  check_args(q, k);
  return eta_rational(factorize(q), q, a, k);
}

ZetaPoly eta(std::uint64_t q, std::uint64_t a, unsigned k) {
  return ZetaPoly::monomial(k, 1, eta_rational(q, a, k));
}

EtaTable::EtaTable(std::uint64_t q, unsigned k) : q_(q), k_(k) {
  check_args(q, k);
  const Factorization f = factorize(q);
  std::unordered_map<std::uint64_t, std::uint32_t> slot;
  class_of_.resize(q);
  for (std::uint64_t a = 1; a <= q; ++a) {
    const std::uint64_t g = std::gcd(a, q);
    auto [it, inserted] = slot.try_emplace(g, static_cast<std::uint32_t>(values_.size()));
    if (inserted) {
      values_.push_back(eta_rational(f, q, g, k));
      sizes_.push_back(0);
    }
    class_of_[a - 1] = it->second;
    ++sizes_[it->second];
  }
}

EtaTable eta_table(std::uint64_t q, unsigned k) { return EtaTable(q, k); }

ZetaPoly alpha(std::uint64_t q, unsigned k) {
  check_args(q, k);
  BigRational c = 1;
  for (const auto& [p, v] : factorize(q)) {
    const BigInt pk = pow_big(p, k);
    const BigInt g = local_gcd(p, v, k);
    const BigInt denom = (pk - 1) * (pk - 1);
    c *= BigRational(pk * pk - 2 * pk + g, denom);
  }
  return ZetaPoly::monomial(k, 2, c);
}

ZetaPoly beta(unsigned k) { return ZetaPoly::monomial(k, 1, BigRational(1)); }

IdentityCheck check_sum_eta_sq(std::uint64_t q, unsigned k) {
  const EtaTable table(q, k);
  ZetaPoly sum(k);
  for (std::uint64_t a = 1; a <= q; ++a) {
    const ZetaPoly e = table[a];
    sum += e * e;
  }
  ZetaPoly diff = sum - alpha(q, k) * BigRational(BigInt(1), BigInt(q));
  const bool ok = diff.is_zero();
  return {ok, std::move(diff)};
}

IdentityCheck check_partition(std::uint64_t q, unsigned k) {
  const EtaTable table(q, k);
  ZetaPoly sum(k);
  for (std::uint64_t a = 1; a <= q; ++a) sum += table[a];
  ZetaPoly diff = sum - beta(k);
  const bool ok = diff.is_zero();
  return {ok, std::move(diff)};
}

IdentityCheck check_class_collapse(std::uint64_t q, unsigned k) {
  check_args(q, k);
  const Factorization f = factorize(q);
  for (std::uint64_t a = 1; a <= q; ++a) {
    const BigRational lhs = eta_rational(f, q, a, k);
    const BigRational rhs = eta_rational(f, q, std::gcd(a, q), k);
    if (lhs != rhs) return {false, ZetaPoly::monomial(k, 1, lhs - rhs)};
  }
  return {true, ZetaPoly(k)};
}

double eta_scaled_max(std::uint64_t q, unsigned k) {
  const EtaTable table(q, k);
  BigRational best = 0;
  for (std::uint32_t i = 0; i < table.distinct(); ++i) {
    const BigRational& v = table.class_value(i);
    if (abs(v) > best) best = abs(v);
  }
  return static_cast<double>(best * BigRational(q));
}

}  // namespace kfree
