#include "kfree/euler_product.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "kfree/arith.hpp"

namespace kfree {

namespace {

struct BlockSum {
  long double sum = 0;
  long double magnitude = 0;  // sum of |terms|, drives the rounding bound
};

CertifiedReal evaluate(const EulerProductSpec& spec, bool parallel) {
  if (!(spec.tail_exponent > 1.0)) throw std::invalid_argument("Euler product: tail exponent must exceed 1");
  const std::uint64_t P = spec.prime_cutoff;
  const auto primes = primes_up_to(P);

  Real head = 1;
  std::size_t head_count = 0;
  std::size_t first_bulk = 0;
  for (; first_bulk < primes->size(); ++first_bulk) {
    const std::uint64_t p = (*primes)[first_bulk];
    if (p > P || p > kHeadPrimeLimit) break;
    head *= spec.factor(p);
    ++head_count;
  }
  std::size_t end = first_bulk;
  while (end < primes->size() && (*primes)[end] <= P) ++end;

  const std::size_t n_bulk = end - first_bulk;
  const std::size_t n_blocks = (n_bulk + kPrimeBlock - 1) / kPrimeBlock;
  std::vector<BlockSum> blocks(n_blocks);

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(n_blocks); ++b) {
    const std::size_t lo = first_bulk + static_cast<std::size_t>(b) * kPrimeBlock;
    const std::size_t hi = std::min(lo + kPrimeBlock, end);
    // Kahan summation inside the block.
    long double s = 0, c = 0, mag = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      const long double t = spec.log_factor((*primes)[i]);
      mag += std::fabs(t);
      const long double y = t - c;
      const long double next = s + y;
      c = (next - s) - y;
      s = next;
    }
    blocks[b] = {s, mag};
  }

  Real bulk = 0;
  long double magnitude = 0;
  for (const auto& blk : blocks) {
    bulk += Real(blk.sum);
    magnitude += blk.magnitude;
  }

  Real value = head * exp(bulk);
  // Per-term log accuracy (16 ulp) plus compensated summation (4 ulp).
  const Real bulk_err = Real(20.0L * std::numeric_limits<long double>::epsilon() * magnitude);
  const Real tail = euler_tail_log_bound(spec);
  Real err = abs(value) * (exp(bulk_err + tail) - 1) +
             abs(value) * rounding_unit() * static_cast<long>(head_count + n_blocks + 4);
  return {std::move(value), std::move(err)};
}

}  // namespace

Real euler_tail_log_bound(const EulerProductSpec& spec) {
  // sum_{n > P} n^-theta <= P^{1-theta} / (theta - 1)
  const Real theta = spec.tail_exponent;
  return Real(spec.tail_constant) * pow(Real(spec.prime_cutoff), 1 - theta) / (theta - 1);
}

CertifiedReal euler_product(const EulerProductSpec& spec) { return evaluate(spec, true); }

CertifiedReal euler_product_serial(const EulerProductSpec& spec) { return evaluate(spec, false); }

}  // namespace kfree
