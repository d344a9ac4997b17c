#include <catch_amalgamated.hpp>

#include "divisum/whittaker/whittaker.hpp"
#include "oracles.hpp"

using namespace divisum;

namespace {

// z^k e^{-z/2}
Real elementary(long k, const Rational& z, mpfr_prec_t p) {
  Real zz(p), e(p);
  zz.set(z);
  mpfr_div_si(e.get(), zz.get(), -2, MPFR_RNDN);
  mpfr_exp(e.get(), e.get(), MPFR_RNDN);
  mpfr_pow_si(zz.get(), zz.get(), k, MPFR_RNDN);
  mpfr_mul(e.get(), e.get(), zz.get(), MPFR_RNDN);
  return e;
}

}  // namespace

TEST_CASE("elementary cases", "[whittaker]") {
  // W_{mu+1/2, mu}(z) = z^{mu+1/2} e^{-z/2}
  CHECK(oracle::rel_diff(whittaker_w({1, Rational(1, 2)}, Rational(2), 128), elementary(1, Rational(2), 200)) < 1e-30L);
  CHECK(oracle::rel_diff(whittaker_w({3, Rational(5, 2)}, Rational(7, 4), 128), elementary(3, Rational(7, 4), 200)) < 1e-30L);
  CHECK(oracle::rel_diff(whittaker_w({0, Rational(1, 2)}, Rational(3), 128), elementary(0, Rational(3), 200)) < 1e-30L);
}

TEST_CASE("three-term recurrence in kappa", "[whittaker]") {
  // W_{k+1,mu} + (2k - z) W_{k,mu} + ((k - 1/2)^2 - mu^2) W_{k-1,mu} = 0
  for (Rational mu : {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2)})
    for (Rational k : {Rational(1), Rational(2), Rational(5, 2)})
      for (Rational z : {Rational(1, 2), Rational(1), Rational(3), Rational(12)}) {
        const PrecisionReal a = whittaker_w({k + 1, mu}, z, 128), b = whittaker_w({k, mu}, z, 128),
                            c = whittaker_w({k - 1, mu}, z, 128);
        const Rational q = (k - Rational(1, 2)) * (k - Rational(1, 2)) - mu * mu;
        const PrecisionReal res = a + b * Rational(2 * k - z) + c * q;
        const long double scale = a.abs_up() + b.abs_up() * 12 + c.abs_up() * 12;
        INFO("kappa=" << k << " mu=" << mu << " z=" << z);
        CHECK(res.mid().abs_up() < 1e-28L * scale);
      }
}

TEST_CASE("series and asymptotic U agree with the integral route", "[whittaker]") {
  for (Rational a : {Rational(1, 2), Rational(3, 2), Rational(-5, 2), Rational(3)})
    for (Rational b : {Rational(1), Rational(2), Rational(5)})
      for (const char* zs : {"0.001", "1", "7.5", "90", "300"}) {
        const PrecisionReal z = precision_real_from_string(zs, 0, 128);
        const PrecisionReal f = detail::u_function(a, b, z, 96);
        const PrecisionReal g = detail::u_function_integral(a, b, z, 96);
        INFO("a=" << a << " b=" << b << " z=" << zs);
        CHECK(oracle::rel_diff(f, g) < 1e-25L);
      }
}

TEST_CASE("gamma ratio limits", "[whittaker]") {
  CHECK(whittaker_ext_ratio({1, 0}, 64).contains(Rational(-1, 4)));
}

TEST_CASE("Mellin transform checks", "[whittaker]") {
  const CheckResult c1 = mellin_w_check1(2, 1, 2, 96);
  CHECK(c1.residual < 1e-25L);
  const CheckResult c2 = mellin_w_check2(3, 1, 2, 96);
  CHECK(c2.residual < 1e-25L);
  const CheckResult c3 = mellin_w_check1(0, Rational(3, 2), Rational(5, 2), 96);
  CHECK(c3.residual < 1e-25L);
  CHECK_THROWS_AS(mellin_w_check2(2, 1, 2, 64), pole_error);
  CHECK_THROWS(mellin_w_check2(1, 1, 2, 64));
}

TEST_CASE("Whittaker convolution checks, both signs of a", "[whittaker]") {
  for (auto [a, b] : std::vector<std::pair<Rational, Rational>>{{Rational(1, 2), Rational(1, 2)},
                                                               {Rational(-1, 2), Rational(3, 2)}}) {
    const CheckResult c = w_convolution_check({2, 3, 1, 1, a, b}, 96);
    INFO("a=" << a);
    CHECK(c.residual < 1e-25L);
  }
  CHECK_THROWS_AS(w_convolution_check({1, 1, 0, 0, Rational(1, 2), Rational(1, 3)}, 64), domain_error);
  CHECK_THROWS_AS(w_convolution_check({1, 1, 1, 1, Rational(1, 2), Rational(1, 2)}, 64), domain_error);
  CHECK_THROWS_AS(w_convolution_check({1, 1, 0, 0, Rational(0), Rational(1)}, 64), domain_error);
}
