#include <cmath>

#include "doctest.h"
#include "kfree/density.hpp"
#include "kfree/sieve.hpp"
#include "oracles.hpp"

using namespace kfree;

namespace {

BigRational rat(long n, long d = 1) { return BigRational(BigInt(n), BigInt(d)); }

long double zeta_ld(unsigned k) { return oracle::mpfr_zeta(Real(k)).convert_to<long double>(); }

}  // namespace

TEST_CASE("ZetaPoly arithmetic is canonical") {
  const ZetaPoly a = ZetaPoly::monomial(2, 1, rat(3, 2));
  const ZetaPoly b = ZetaPoly::monomial(2, 1, rat(-3, 2));
  CHECK((a + b).is_zero());
  CHECK((a + b).terms().empty());
  const ZetaPoly e = ZetaPoly::constant(2, rat(7)) - ZetaPoly::monomial(2, 1, rat(10));
  const ZetaPoly sq = e * e;
  CHECK(sq.coefficient(0) == 49);
  CHECK(sq.coefficient(1) == -140);
  CHECK(sq.coefficient(2) == 100);
  CHECK(sq.degree() == 2);
  CHECK(sq.to_string() == "49 - 140*Z^-1 + 100*Z^-2");
  CHECK_THROWS(ZetaPoly(2) + ZetaPoly(3));
}

TEST_CASE("ZetaPoly evaluation and CertifiedReal enclosures") {
  const CertifiedReal z2(oracle::mpfr_zeta(Real(2)), Real("1e-80"));
  const ZetaPoly v = ZetaPoly::constant(2, rat(49)) - ZetaPoly::monomial(2, 1, rat(140)) +
                     ZetaPoly::monomial(2, 2, rat(100));
  const CertifiedReal val = v.evaluate(z2);
  const Real zinv = 1 / oracle::mpfr_zeta(Real(2));
  CHECK(val.contains(49 - 140 * zinv + 100 * zinv * zinv));
  CHECK(val.to_double() == doctest::Approx(0.8477).epsilon(1e-3));

  const CertifiedReal third = CertifiedReal::exact(rat(1, 3));
  CHECK((third * CertifiedReal::exact(3)).contains(Real(1)));
  CHECK_THROWS_AS(CertifiedReal::exact(1) / CertifiedReal(Real(0), Real("1e-5")), std::domain_error);
  const CertifiedReal wide(Real(1), Real("0.5"));
  CHECK(wide.overlaps(CertifiedReal(Real(2), Real("0.6"))));
  CHECK_FALSE(wide.overlaps(CertifiedReal(Real(2), Real("0.4"))));
}

TEST_CASE("eta examples") {
  for (unsigned k : {2u, 3u, 5u}) CHECK(eta(1, 1, k) == ZetaPoly::monomial(k, 1, rat(1)));
  CHECK(eta(2, 1, 2) == ZetaPoly::monomial(2, 1, rat(2, 3)));
  CHECK(eta(4, 4, 2).is_zero());
  CHECK_THROWS(eta(4, 5, 2));
  CHECK_THROWS(eta(4, 0, 2));
  CHECK_THROWS(eta(4, 1, 1));
}

TEST_CASE("eta_table examples") {
  const EtaTable t2(2, 2);
  CHECK(t2.rational(1) == rat(2, 3));
  CHECK(t2.rational(2) == rat(1, 3));
  const EtaTable t4(4, 2);
  for (std::uint64_t a = 1; a <= 3; ++a) CHECK(t4.rational(a) == rat(1, 3));
  CHECK(t4.rational(4) == 0);
  for (std::uint64_t p : {3ULL, 5ULL, 101ULL}) {
    const EtaTable t(p, 2);
    for (std::uint64_t a = 2; a < p; ++a) CHECK(t.rational(a) == t.rational(1));
    CHECK(t.rational(p) < t.rational(1));
    CHECK(t.distinct() == 2);
  }
}

TEST_CASE("eta agrees with the truncated defining series within the tail bound") {
  const std::uint64_t D = 10000;
  const auto mu = oracle::mobius_upto(D);
  for (unsigned k : {2u, 3u}) {
    const long double z = zeta_ld(k);
    for (std::uint64_t q = 1; q <= 50; ++q) {
      const auto series = oracle::eta_series(q, k, D, mu);
      const long double bound =
          static_cast<long double>(oracle::max_local_gcd(q, k)) / q * std::pow(static_cast<long double>(D), 1.0L - k) / (k - 1) +
          1e-15L;
      const EtaTable table(q, k);
      for (std::uint64_t a = 1; a <= q; ++a) {
        const long double closed = table.rational(a).convert_to<long double>() / z;
        REQUIRE(std::fabs(series[a - 1] - closed) <= bound);
        REQUIRE(table[a] == eta(q, a, k));
      }
    }
  }
}

TEST_CASE("eta vanishes exactly on classes divisible by some p^k | q") {
  for (unsigned k : {2u, 3u}) {
    for (std::uint64_t q = 1; q <= 300; ++q) {
      const EtaTable table(q, k);
      const auto f = oracle::trial_factor(q);
      for (std::uint64_t a = 1; a <= q; ++a) {
        bool forced = false;
        for (const auto& [p, v] : f) forced = forced || (v >= k && a % oracle::ipow(p, k) == 0);
        REQUIRE((table.rational(a) == 0) == forced);
      }
    }
  }
}

TEST_CASE("alpha and beta examples") {
  for (unsigned k : {2u, 3u}) {
    CHECK(alpha(1, k) == ZetaPoly::monomial(k, 2, rat(1)));
    CHECK(beta(k) == ZetaPoly::monomial(k, 1, rat(1)));
  }
  CHECK(alpha(2, 2) == ZetaPoly::monomial(2, 2, rat(10, 9)));
  CHECK(alpha(4, 2) == ZetaPoly::monomial(2, 2, rat(4, 3)));
}

TEST_CASE("sum of eta squared equals alpha/q") {
  CHECK(check_sum_eta_sq(2, 2).holds);
  CHECK(check_sum_eta_sq(4, 2).holds);
  CHECK(check_sum_eta_sq(4, 2).discrepancy.is_zero());
  for (unsigned k : {2u, 3u})
    for (std::uint64_t q = 1; q <= 200; ++q) {
      const IdentityCheck c = check_sum_eta_sq(q, k);
      REQUIRE(c.holds);
      REQUIRE(c.discrepancy.is_zero());
    }
}

TEST_CASE("brute-force sum of squares for small q") {
  for (unsigned k : {2u, 3u})
    for (std::uint64_t q = 1; q <= 40; ++q) {
      ZetaPoly s(k);
      for (std::uint64_t a = 1; a <= q; ++a) s += eta(q, a, k) * eta(q, a, k);
      REQUIRE(s * BigRational(q) == alpha(q, k));
    }
}

TEST_CASE("partition and class collapse up to q = 500") {
  for (unsigned k : {2u, 3u})
    for (std::uint64_t q = 1; q <= 500; ++q) {
      REQUIRE(check_partition(q, k).holds);
      REQUIRE(check_class_collapse(q, k).holds);
    }
}

TEST_CASE("eta matches empirical class frequencies") {
  const std::uint64_t x = 2'000'000;
  const ClassCounts c = class_counts(x, 12, 2);
  const long double z = zeta_ld(2);
  for (std::uint64_t a = 1; a <= 12; ++a) {
    const long double expected = x * eta_rational(12, a, 2).convert_to<long double>() / z;
    CHECK(std::fabs(c[a] - expected) < 4 * std::sqrt(static_cast<long double>(x)));
  }
}

TEST_CASE("eta_scaled_max is finite and grows slowly") {
  for (std::uint64_t q : {1ULL, 10ULL, 100ULL, 1000ULL}) {
    const double m = eta_scaled_max(q, 2);
    CHECK(m > 0);
    CHECK(m < 10);
  }
}
