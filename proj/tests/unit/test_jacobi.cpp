#include <catch_amalgamated.hpp>

#include "divisum/jacobi/hypergeometric.hpp"
#include "divisum/jacobi/second_kind.hpp"
#include "divisum/quadrature.hpp"
#include "oracles.hpp"

using namespace divisum;

namespace {

// Jacobi polynomial from the explicit binomial sum.
PolyRational jacobi_poly(long d, long a, long b) {
  PolyRational out = PolyRational::constant(0);
  const PolyRational xm = PolyRational::linear(Rational(-1, 2), Rational(1, 2));  // (x-1)/2
  const PolyRational xp = PolyRational::linear(Rational(1, 2), Rational(1, 2));   // (x+1)/2
  for (long s = 0; s <= d; ++s) {
    PolyRational t = PolyRational::constant(Rational(binomial(d + a, d - s) * binomial(d + b, s)));
    for (long i = 0; i < s; ++i) t = t * xm;
    for (long i = 0; i < d - s; ++i) t = t * xp;
    out = out + t;
  }
  return out;
}

const std::vector<std::tuple<long, long, long>> kParams = {{1, 0, 0}, {1, 2, 2}, {3, 0, 0}, {3, 2, 2},
                                                           {2, 4, 0}, {1, 0, 2}, {8, 2, 4}, {0, 0, 0}};

}  // namespace

TEST_CASE("Legendre special cases", "[jacobi]") {
  const QSecondKind q1 = q_construct(1, 0, 0);
  CHECK(q1.P.coeffs() == std::vector<Rational>{0, Rational(1, 2)});
  CHECK(q1.R.coeffs() == std::vector<Rational>{-1});
  // Q_1(3) = (3/2) log 2 - 1
  Real ref(300);
  mpfr_const_log2(ref.get(), MPFR_RNDN);
  mpfr_mul_d(ref.get(), ref.get(), 1.5, MPFR_RNDN);
  mpfr_sub_ui(ref.get(), ref.get(), 1, MPFR_RNDN);
  CHECK(oracle::encloses(q_eval_real(q1, Rational(3), 200), ref));
  // Q_0(x) = (1/2) log|(x+1)/(x-1)|
  const QSecondKind q0 = q_construct(0, 0, 0);
  Real l(300);
  mpfr_set_ui(l.get(), 3, MPFR_RNDN);
  mpfr_log(l.get(), l.get(), MPFR_RNDN);
  mpfr_div_2ui(l.get(), l.get(), 1, MPFR_RNDN);
  CHECK(oracle::encloses(q_eval_real(q0, Rational(2), 200), l));
}

TEST_CASE("P is half the Jacobi polynomial", "[jacobi]") {
  for (auto [d, a, b] : kParams) {
    const QSecondKind q = q_construct(d, a, b);
    const PolyRational expect = jacobi_poly(d, a, b);
    for (long j = 0; j <= d; ++j) CHECK(q.P.coeff(j) == expect.coeff(j) / 2);
  }
}

TEST_CASE("decay at infinity with the predicted constant", "[jacobi]") {
  for (auto [d, a, b] : kParams) {
    const QSecondKind q = q_construct(d, a, b);
    const long K = q.decay_order();
    const auto L = q_laurent_at_infinity(q, K + 1);
    for (long j = -d; j < K; ++j) CHECK(L[j + d] == 0);
    CHECK(L[K + d] == q_asymptotic_constant(d, a, b));
  }
}

TEST_CASE("Q solves the Jacobi differential equation", "[jacobi]") {
  const mpfr_prec_t p = 480;
  for (auto [d, a, b] : kParams) {
    const QSecondKind q = q_construct(d, a, b);
    for (Rational x0 : {Rational(3), Rational(7, 4), Rational(-5, 2), Rational(1, 3)}) {
      const PrecisionReal h(make_rational(Integer(1), Integer(Integer(1) << 100)), p);
      const PrecisionReal x(x0, p);
      const PrecisionReal y0 = q_eval_real(q, x, p), yp = q_eval_real(q, x + h, p), ym = q_eval_real(q, x - h, p);
      const PrecisionReal y1 = (yp - ym) / (h * Rational(2));
      const PrecisionReal y2 = (yp - y0 * Rational(2) + ym) / (h * h);
      const PrecisionReal lhs = (Rational(1) - x * x) * y2 + (Rational(b - a) - x * Rational(a + b + 2)) * y1 +
                                y0 * Rational(d * (d + a + b + 1));
      const long double scale = y0.abs_up() + y1.abs_up() + y2.abs_up();
      CHECK(lhs.mid().abs_up() / scale < 1e-50L);
    }
  }
}

TEST_CASE("closed form agrees with the hypergeometric representation", "[jacobi]") {
  for (auto [d, a, b] : kParams) {
    if (d == 0) continue;
    const QSecondKind q = q_construct(d, a, b);
    for (Rational x : {Rational(3, 2), Rational(5), Rational(1, 3), Rational(-1, 2), Rational(-3), Rational(9, 10)}) {
      const PrecisionReal h = q_eval_hypergeometric(q, x, 128);
      const PrecisionReal c = q_eval_real(q, x, 128);
      INFO("d=" << d << " a=" << a << " b=" << b << " x=" << x);
      CHECK((h - c).mid().abs_up() <= 1e-30L * c.abs_up() + h.rad() + c.rad());
    }
  }
}

TEST_CASE("exact evaluation matches the real evaluation", "[jacobi]") {
  for (auto [d, a, b] : kParams) {
    const QSecondKind q = q_construct(d, a, b);
    for (auto [n1, n2] : std::vector<std::pair<long, long>>{{-1, 2}, {3, 4}, {7, -2}, {-5, 11}}) {
      const LogLinearValue v = q_eval_exact(q, n1, n2);
      const LogCombination c = v.combination();
      PrecisionReal num(c.rational_part, 200);
      for (const auto& [pr, co] : c.log_coeffs) num += log(PrecisionReal(pr, 200)) * co;
      const PrecisionReal ref = q_eval_real(q, Rational(n2 - n1, n1 + n2), 200);
      CHECK((num - ref).mid().abs_up() <= 1e-50L * (1 + ref.abs_up()));
    }
  }
}

TEST_CASE("reflection x -> -x swaps alpha and beta", "[jacobi]") {
  for (auto [d, a, b] : kParams) {
    const QSecondKind q = q_construct(d, a, b), r = q_construct(d, b, a);
    const Rational sgn = sign_pow(a + b + d + 1);
    // x = (n2 - n1)/(n1 + n2), so -x swaps n1 and n2
    for (auto [n1, n2] : std::vector<std::pair<long, long>>{{-1, 2}, {3, 4}, {7, -2}, {-5, 11}, {1, 1}})
      CHECK(q_eval_exact(q, n1, n2) == q_eval_exact(r, n2, n1).scaled(sgn));
  }
}

TEST_CASE("closed form agrees with the defining integral", "[jacobi]") {
  const mpfr_prec_t p = 160;
  quad::Options opt;
  opt.prec = p;
  opt.tol = 1e-40L;
  for (auto [d, a, b] : kParams) {
    const QSecondKind q = q_construct(d, a, b);
    for (Rational x0 : {Rational(3, 2), Rational(2), Rational(5)}) {
      Real x(p);
      x.set(x0);
      // (1-t)^{d+a} (1+t)^{d+b} / (x-t)^{d+1}; 1-t and 1+t come from the endpoint distances
      auto f = [&](const Real& t, const Real& ta, const Real& bt) {
        Real r(p), u(p);
        mpfr_pow_ui(r.get(), bt.get(), static_cast<unsigned long>(d + a), MPFR_RNDN);
        mpfr_pow_ui(u.get(), ta.get(), static_cast<unsigned long>(d + b), MPFR_RNDN);
        mpfr_mul(r.get(), r.get(), u.get(), MPFR_RNDN);
        mpfr_sub(u.get(), x.get(), t.get(), MPFR_RNDN);
        mpfr_pow_ui(u.get(), u.get(), static_cast<unsigned long>(d + 1), MPFR_RNDN);
        mpfr_div(r.get(), r.get(), u.get(), MPFR_RNDN);
        return r;
      };
      Real lo(p), hi(p);
      mpfr_set_si(lo.get(), -1, MPFR_RNDN);
      mpfr_set_si(hi.get(), 1, MPFR_RNDN);
      const quad::Result res = quad::tanh_sinh(f, lo, hi, opt);
      REQUIRE(res.converged);
      Real ref(p), t(p);
      mpfr_sub_ui(t.get(), x.get(), 1, MPFR_RNDN);
      mpfr_pow_si(t.get(), t.get(), -a, MPFR_RNDN);
      mpfr_mul(ref.get(), res.value.get(), t.get(), MPFR_RNDN);
      mpfr_add_ui(t.get(), x.get(), 1, MPFR_RNDN);
      mpfr_pow_si(t.get(), t.get(), -b, MPFR_RNDN);
      mpfr_mul(ref.get(), ref.get(), t.get(), MPFR_RNDN);
      mpfr_div_2ui(ref.get(), ref.get(), static_cast<unsigned long>(d + 1), MPFR_RNDN);
      INFO("d=" << d << " a=" << a << " b=" << b << " x=" << x0);
      CHECK(oracle::rel_diff(q_eval_real(q, x0, p), ref) < 1e-30L);
    }
  }
}

TEST_CASE("parameter validation", "[jacobi]") {
  CHECK_THROWS_AS(q_construct(-1, 0, 0), domain_error);
  CHECK_THROWS_AS(q_construct(1, 1, 0), domain_error);
  CHECK_THROWS_AS(q_construct(1, 0, -2), domain_error);
}
