#include <catch_amalgamated.hpp>

#include "divisum/arith/constants.hpp"
#include "divisum/arith/special.hpp"
#include "divisum/sums/sigma.hpp"
#include "oracles.hpp"

using namespace divisum;

TEST_CASE("rational helpers", "[arith]") {
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(5, 7) == 0);
  CHECK(harmonic(3) == Rational(11, 6));
  CHECK(rpow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(sign_pow(3) == -1);
  CHECK(sign_pow(-2) == 1);
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(12) == make_rational(-691, 2730));
  CHECK(zeta_even(2) == Rational(1, 6));
  CHECK(zeta_even(4) == Rational(1, 90));
  CHECK(zeta_neg_int(1) == Rational(-1, 12));
  CHECK(zeta_neg_int(3) == Rational(1, 120));
}

TEST_CASE("constants enclose MPFR values", "[arith]") {
  for (mpfr_prec_t p : {64, 128, 256, 512}) {
    CHECK(oracle::encloses(const_pi(p), oracle::pi(p + 64)));
    Real g(p + 64);
    mpfr_const_euler(g.get(), MPFR_RNDN);
    CHECK(oracle::encloses(const_euler(p), g));
  }
}

TEST_CASE("odd zeta values against MPFR and Apery's constant", "[arith]") {
  for (long m : {3, 5, 7, 9, 11, 21}) {
    const PrecisionReal z = zeta_odd(m, 256);
    CHECK(oracle::encloses(z, oracle::zeta(m, 400)));
    CHECK(z.rad() < 1e-70L);
  }
  const Real apery = oracle::parse("1.202056903159594285399738161511449990764986292340498881792271555", 256);
  CHECK(oracle::rel_diff(zeta_odd(3, 200), apery) < 1e-60L);
  CHECK_THROWS_AS(zeta_odd(1, 64), pole_error);
  CHECK_THROWS_AS(zeta_odd(4, 64), domain_error);
}

TEST_CASE("zeta'(-2k) from the functional equation", "[arith]") {
  // zeta'(-2) = -zeta(3) / (4 pi^2)
  const mpfr_prec_t p = 256;
  Real ref(p + 64), pi2(p + 64);
  mpfr_const_pi(pi2.get(), MPFR_RNDN);
  mpfr_sqr(pi2.get(), pi2.get(), MPFR_RNDN);
  mpfr_zeta_ui(ref.get(), 3, MPFR_RNDN);
  mpfr_div(ref.get(), ref.get(), pi2.get(), MPFR_RNDN);
  mpfr_div_si(ref.get(), ref.get(), -4, MPFR_RNDN);
  CHECK(oracle::encloses(zeta_prime_neg_even(2, p), ref));
  // numeric derivative of MPFR's zeta at -4
  Real a(400), b(400), h(400);
  mpfr_set_str(h.get(), "1e-40", 10, MPFR_RNDN);
  mpfr_set_si(a.get(), -4, MPFR_RNDN);
  mpfr_add(a.get(), a.get(), h.get(), MPFR_RNDN);
  mpfr_set_si(b.get(), -4, MPFR_RNDN);
  mpfr_sub(b.get(), b.get(), h.get(), MPFR_RNDN);
  mpfr_zeta(a.get(), a.get(), MPFR_RNDN);
  mpfr_zeta(b.get(), b.get(), MPFR_RNDN);
  mpfr_sub(a.get(), a.get(), b.get(), MPFR_RNDN);
  mpfr_div(a.get(), a.get(), h.get(), MPFR_RNDN);
  mpfr_div_2ui(a.get(), a.get(), 1, MPFR_RNDN);
  CHECK(oracle::rel_diff(zeta_prime_neg_even(4, p), a) < 1e-60L);
  CHECK_THROWS_AS(zeta_prime_neg_even(3, p), domain_error);
}

TEST_CASE("gamma, digamma and incomplete gamma", "[arith]") {
  Real ref(300);
  mpfr_const_pi(ref.get(), MPFR_RNDN);
  mpfr_sqrt(ref.get(), ref.get(), MPFR_RNDN);
  CHECK(oracle::encloses(gamma_exact(Rational(1, 2), 200), ref));
  CHECK(gamma_exact(Rational(6), 64).contains(Rational(120)));
  CHECK_THROWS_AS(gamma_exact(Rational(-2), 64), pole_error);
  // psi(3/2) = 2 - gamma - 2 log 2
  Real dg(300), t(300);
  mpfr_set_ui(dg.get(), 3, MPFR_RNDN);
  mpfr_div_2ui(dg.get(), dg.get(), 1, MPFR_RNDN);
  mpfr_digamma(dg.get(), dg.get(), MPFR_RNDN);
  CHECK(oracle::encloses(digamma_half(1, 200), dg));
  // Gamma(3, 2) = 10 e^{-2}
  mpfr_set_si(t.get(), -2, MPFR_RNDN);
  mpfr_exp(t.get(), t.get(), MPFR_RNDN);
  mpfr_mul_ui(t.get(), t.get(), 10, MPFR_RNDN);
  CHECK(oracle::encloses(incomplete_gamma_upper(3, Rational(2), 200), t));
}

TEST_CASE("enclosure arithmetic stays valid", "[arith]") {
  const PrecisionReal third = PrecisionReal(1L, 64) / PrecisionReal(3L, 64);
  CHECK(third.contains(Rational(1, 3)));
  const PrecisionReal x = third * Rational(3) - Rational(1);
  CHECK(x.contains_zero());
  const PrecisionReal s = sqrt(PrecisionReal(2L, 128));
  CHECK((s * s).contains(Rational(2)));
  CHECK(log(exp(PrecisionReal(Rational(5, 4), 128))).contains(Rational(5, 4)));
}

TEST_CASE("sigma against brute force", "[arith]") {
  auto brute = [](long r, long n) {
    Integer s = 0;
    for (long q = 1; q <= n; ++q)
      if (n % q == 0) s += ipow(Integer(q), r);
    return s;
  };
  for (long r : {0, 1, 2, 4, 7, 11})
    for (long n = 1; n <= 300; ++n) REQUIRE(sigma(r, n) == brute(r, n));
  CHECK(sigma(2, -6) == sigma(2, 6));
  for (long r : {0, 2, 6, 22}) {
    const auto table = sigma_table(r, 5000);
    for (std::uint32_t m = 1; m <= 5000; m += 7) REQUIRE(table->at(m) == sigma(r, static_cast<long>(m)));
  }
  CHECK_THROWS_AS(sigma_table(3, 10), domain_error);
}
