#include <cmath>

#include "doctest.h"
#include "kfree/constants.hpp"
#include "kfree/density.hpp"
#include "oracles.hpp"

using namespace kfree;

namespace {

constexpr std::uint64_t kTestCutoff = 1'000'000;

Real pi() { return pi_real(); }

bool within(const CertifiedReal& c, const Real& truth, const Real& slack = Real(0)) {
  return abs(c.value() - truth) <= c.err() + slack;
}

}  // namespace

TEST_CASE("bernoulli numbers") {
  const auto b = bernoulli_even(6);
  REQUIRE(b.size() == 6);
  CHECK(b[0] == BigRational(1, 6));
  CHECK(b[1] == BigRational(-1, 30));
  CHECK(b[2] == BigRational(1, 42));
  CHECK(b[5] == BigRational(-691, 2730));
}

TEST_CASE("zeta_real examples") {
  const CertifiedReal z2 = zeta_real(Real(2));
  CHECK(within(z2, pi() * pi() / 6));
  CHECK(z2.err() < Real("1e-60"));
  CHECK(within(zeta_real(Real(4)), pow(pi(), 4) / 90));
  const CertifiedReal zh = zeta_real(Real(-1) / 2);
  CHECK(zh.to_double() == doctest::Approx(-0.2078862250).epsilon(1e-10));
}

TEST_CASE("zeta_real agrees with MPFR within its own bound") {
  for (const Real& s : {Real(3) / 2, Real(2), Real(3), Real(4), Real(-1) / 2, Real(-2) / 3, Real(-3) / 4, Real(0),
                        Real(1) / 3, Real(17)}) {
    const CertifiedReal z = zeta_real(s, 80);
    CHECK(within(z, oracle::mpfr_zeta(s)));
    CHECK(z.err() < Real("1e-80"));
  }
}

TEST_CASE("zeta_real domain") {
  CHECK_THROWS_AS(zeta_real(Real(1)), std::domain_error);
  CHECK_THROWS_AS(zeta_real(Real(-1)), std::domain_error);
  CHECK_THROWS_AS(zeta_real(Real(2), 95), std::domain_error);
}

TEST_CASE("fstar examples at q = 1") {
  const CertifiedReal f0 = fstar(Real(0), 1, 2, 10'000'000);
  CHECK(within(f0, Real(2) / 5));
  CHECK(f0.err() < Real("1e-6"));
  const CertifiedReal f1 = fstar(Real(1), 1, 2, 10'000'000);
  CHECK(within(f1, Real(12) / 35));
  const CertifiedReal f12 = fstar(Real(0), 12, 2, 10'000'000);
  CHECK(abs(f12.value() - f0.value()) <= f12.err() + f0.err());
}

TEST_CASE("fstar matches an independent long-double product") {
  for (unsigned k : {2u, 3u})
    for (long double s : {-0.5L, 0.0L, 0.75L, 2.0L}) {
      if (s < -1 + 1.0L / (4 * k)) continue;
      const CertifiedReal f = fstar(Real(double(s)), 1, k, kTestCutoff);
      const long double ref = oracle::q1_euler_product(s, k, kTestCutoff);
      CHECK(std::fabs(f.to_double() - double(ref)) <= f.err_double() + 4.0 / kTestCutoff);
    }
}

TEST_CASE("F* identities at s = 0 and s = 1") {
  for (unsigned k : {2u, 3u}) {
    const CertifiedReal zk = zeta_real(Real(k));
    const CertifiedReal z2k = zeta_real(Real(2 * k));
    const CertifiedReal z4k = zeta_real(Real(4 * k));
    for (std::uint64_t q : {1ULL, 4ULL, 6ULL, 30ULL, 72ULL}) {
      const CertifiedReal lhs0 = zk * fstar(Real(0), q, k, kTestCutoff) / z2k;
      CHECK(lhs0.overlaps(beta(k).evaluate(zk)));
      const CertifiedReal lhs1 = z2k * fstar(Real(1), q, k, kTestCutoff) / z4k;
      CHECK(lhs1.overlaps(alpha(q, k).evaluate(zk)));
    }
  }
}

TEST_CASE("fstar is bounded on its domain and converges in P") {
  for (unsigned k : {2u, 3u}) {
    const Real lo = fstar_abscissa(k);
    CHECK(lo == Real(-1) + Real(1) / (4 * k));
    CHECK_THROWS_AS(fstar(lo - Real("0.01"), 1, k, kTestCutoff), std::domain_error);
    for (std::uint64_t q : {1ULL, 12ULL, 210ULL}) {
      for (int i = 0; i <= 8; ++i) {
        const Real s = lo + (1 - lo) * i / 8;
        const CertifiedReal coarse = fstar(s, q, k, 100'000);
        const CertifiedReal fine = fstar(s, q, k, kTestCutoff);
        REQUIRE(abs(fine.value()) < 10);
        REQUIRE(fine.value() > 0);
        REQUIRE(fine.err() < coarse.err());
        REQUIRE(abs(fine.value() - coarse.value()) <= coarse.err());
      }
    }
  }
  CHECK_THROWS(fstar(Real(0), 1, 2, 1000));
}

TEST_CASE("gamma_const examples") {
  const CertifiedReal g1 = gamma_const(1, 2, 60, kTestCutoff);
  CHECK(g1.value() < 0);
  const long double prod = oracle::q1_euler_product(-0.5L, 2, kTestCutoff);
  const Real oracle_value = oracle::mpfr_zeta(Real(-1) / 2) * Real(double(prod));
  CHECK(abs(g1.value() - oracle_value) <= g1.err() + Real("5e-6"));

  for (unsigned k : {2u, 3u}) {
    const CertifiedReal lhs = gamma_const(1, k, 60, kTestCutoff);
    const CertifiedReal rhs = c_k(k, 60, kTestCutoff) * CertifiedReal::exact(BigRational(BigInt(1), BigInt(k)) - 1) *
                              zeta_real(Real(2)) / CertifiedReal::exact(long(2 * k));
    CHECK(lhs.overlaps(rhs));
  }

  const CertifiedReal g4 = gamma_const(4, 2, 60, kTestCutoff);
  const Real local = (1 + pow(Real(4), Real(-1) / 2) / 2 - Real(2) / 4) / (1 + Real(1) / 2 - Real(2) / 4);
  CHECK(abs(g4.value() - g1.value() * local) <= g4.err() + g1.err() * local);
}

TEST_CASE("C_k values") {
  const CertifiedReal c2 = c_k(2, 60, kTestCutoff);
  CHECK(c2.value() > Real("0.1"));
  CHECK(c2.value() < 1);
  CHECK(c2.to_double() == doctest::Approx(0.476886728943).epsilon(1e-5));
  for (unsigned k : {3u, 4u}) {
    MESSAGE("C_" << k << " = " << c_k(k, 60, kTestCutoff).to_string(15));
    CHECK(c_k(k, 60, kTestCutoff).lower() > 0);
  }
}

TEST_CASE("f_k at q = 1 is C_k and the two routes agree") {
  for (unsigned k : {2u, 3u, 4u}) {
    const CertifiedReal ck = c_k(k, 60, kTestCutoff);
    const CertifiedReal f1 = f_k_of_q(1, k, 60, kTestCutoff);
    CHECK(f1.value() == ck.value());
    for (std::uint64_t q : {1ULL, 2ULL, 8ULL, 12ULL, 30ULL, 97ULL, 100ULL}) {
      const CertifiedReal a = f_k_of_q(q, k, 60, kTestCutoff);
      const CertifiedReal b = f_k_via_gamma(q, k, 60, kTestCutoff);
      REQUIRE(abs(a.value() - b.value()) <= Real("1e-9"));
      REQUIRE(a.overlaps(b));
    }
  }
}

TEST_CASE("double sum factorization") {
  const auto mu = oracle::mobius_upto(400);
  SUBCASE("q = 6, D = 200 has residual below 1e-4") {
    const DoubleSumCheck c = dirichlet_double_sum_check(Real(2), 6, 2, 200, kTestCutoff);
    CHECK(c.residual < Real("1e-4"));
    CHECK(c.consistent());
    const long double direct = oracle::double_sum(2, 6, 2, 200, mu);
    CHECK(std::fabs(c.truncated.convert_to<long double>() - direct) < 1e-15L);
  }
  SUBCASE("q = 1, D = 200 residual matches the independent value") {
    const DoubleSumCheck c = dirichlet_double_sum_check(Real(2), 1, 2, 200, kTestCutoff);
    const long double direct = oracle::double_sum(2, 1, 2, 200, mu);
    const Real closed = oracle::mpfr_zeta(Real(6)) / oracle::mpfr_zeta(Real(12)) *
                        Real(double(oracle::q1_euler_product(2.0L, 2, 2'000'000)));
    const double oracle_residual = std::fabs(double(direct) - closed.convert_to<double>());
    MESSAGE("residual " << c.residual.convert_to<double>() << ", oracle " << oracle_residual);
    CHECK(c.residual.convert_to<double>() == doctest::Approx(oracle_residual).epsilon(1e-3));
    CHECK(c.residual.convert_to<double>() == doctest::Approx(2.274e-4).epsilon(1e-2));
    CHECK(c.consistent());
  }
  SUBCASE("doubling D shrinks the residual") {
    for (std::uint64_t q : {1ULL, 6ULL}) {
      const DoubleSumCheck a = dirichlet_double_sum_check(Real(2), q, 2, 200, kTestCutoff);
      const DoubleSumCheck b = dirichlet_double_sum_check(Real(2), q, 2, 400, kTestCutoff);
      CHECK(b.residual * Real("1.5") <= a.residual);
      CHECK(b.consistent());
    }
  }
  SUBCASE("k = 3, s = 3, q = 1") {
    const DoubleSumCheck c50 = dirichlet_double_sum_check(Real(3), 1, 3, 50, kTestCutoff);
    const DoubleSumCheck c100 = dirichlet_double_sum_check(Real(3), 1, 3, 100, kTestCutoff);
    const long double direct = oracle::double_sum(3, 1, 3, 50, mu);
    const Real closed = oracle::mpfr_zeta(Real(12)) / oracle::mpfr_zeta(Real(24)) *
                        Real(double(oracle::q1_euler_product(3.0L, 3, 2'000'000)));
    const double oracle_residual = std::fabs(double(direct) - closed.convert_to<double>());
    CHECK(c50.residual.convert_to<double>() == doctest::Approx(oracle_residual).epsilon(1e-3));
    CHECK(c50.residual.convert_to<double>() == doctest::Approx(1.6543e-5).epsilon(1e-3));
    CHECK(c100.residual < c50.residual);
    CHECK(c50.consistent());
    CHECK(c100.consistent());
  }
  CHECK_THROWS(dirichlet_double_sum_check(Real(1), 1, 2, 10, kTestCutoff));
}
