#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "divisum/arith/special.hpp"
#include "divisum/jacobi/second_kind.hpp"
#include "divisum/quadrature.hpp"

namespace divisum {

struct WhittakerParams {
  Rational kappa;
  Rational mu;
};

namespace detail {

inline bool is_nonpositive_integer(const Rational& q) { return q.get_den() == 1 && q <= 0; }

inline PrecisionReal pow_rational(const PrecisionReal& x, const Rational& e) {
  if (e.get_den() == 1) return pow(x, e.get_num().get_si());
  return exp(log(x) * e);
}

inline bool is_dyadic(const Rational& q) {
  return mpz_scan1(q.get_den_mpz_t(), 0) + 1 == mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

inline quad::Options whittaker_quad(mpfr_prec_t prec) {
  quad::Options o;
  o.prec = prec;
  o.tol = 0;
  o.rel_tol = std::ldexp(1.0L, -static_cast<int>(prec) + 40);
  o.min_level = 3;
  o.max_level = 12;
  return o;
}

// z^a U(a,b,z) = (1/Gamma(a)) int_0^inf e^{-t} t^{a-1} (1 + t/z)^{b-a-1} dt for a > 0.
inline PrecisionReal u_scaled_integral(const Rational& a, const Rational& b, const PrecisionReal& z, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 32;
  Real am1(wp), c(wp);
  am1.set(Rational(a - 1));
  c.set(Rational(b - a - 1));
  const Real& zr = z.mid();
  auto f = [&](const Real& t, const Real&) {
    Real r(wp), s(wp);
    mpfr_div(s.get(), t.get(), zr.get(), MPFR_RNDN);
    mpfr_log1p(s.get(), s.get(), MPFR_RNDN);
    mpfr_mul(s.get(), s.get(), c.get(), MPFR_RNDN);
    mpfr_log(r.get(), t.get(), MPFR_RNDN);
    mpfr_mul(r.get(), r.get(), am1.get(), MPFR_RNDN);
    mpfr_add(r.get(), r.get(), s.get(), MPFR_RNDN);
    mpfr_sub(r.get(), r.get(), t.get(), MPFR_RNDN);
    mpfr_exp(r.get(), r.get(), MPFR_RNDN);
    return r;
  };
  quad::Result res = quad::exp_sinh(f, Real(0L, wp), whittaker_quad(wp));
  if (!res.converged) throw convergence_error("Whittaker U integral did not converge");
  PrecisionReal I = res.ball();
  return I / gamma_exact(a, wp);
}

// U(-m, b, z) = (-1)^m sum_s binom(m,s) (b+s)_{m-s} (-z)^s.
inline PrecisionReal u_polynomial(long m, const Rational& b, const PrecisionReal& z) {
  PrecisionReal sum(0L, z.prec());
  for (long s = 0; s <= m; ++s) {
    Rational poch = 1;
    for (long j = 0; j < m - s; ++j) poch *= b + s + j;
    Rational c = Rational(binomial(m, s)) * poch * sign_pow(m + s);
    sum += pow(z, s) * c;
  }
  return sum;
}

// U(a,b,z) by the integral representation; downward Kummer recurrence from (0,1] when a <= 0.
// Slow but independent of the series below, so the tests use it as a reference.
inline PrecisionReal u_function_integral(const Rational& a, const Rational& b, const PrecisionReal& z, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 32;
  PrecisionReal zz(Real(z.mid(), wp), z.rad());
  if (is_nonpositive_integer(a)) return u_polynomial(-a.get_num().get_si(), b, zz);
  if (a > 0) return u_scaled_integral(a, b, zz, prec) * pow_rational(zz, Rational(-a));
  long N = 0;
  while (a + N <= 0) ++N;
  Rational a0 = a + N;
  PrecisionReal u1 = u_function_integral(a0 + 1, b, zz, prec);  // U(a0+1)
  PrecisionReal u0 = u_function_integral(a0, b, zz, prec);      // U(a0)
  // U(c-1) = (2c - b + z) U(c) - c (c - b + 1) U(c+1)
  Rational cur = a0;
  for (long i = 0; i < N; ++i) {
    PrecisionReal next = (zz + Rational(2 * cur - b)) * u0 - u1 * Rational(cur * (cur - b + 1));
    u1 = u0;
    u0 = next;
    cur -= 1;
  }
  return u0;
}



// Large-z expansion z^{-a} sum_s (a)_s (a-b+1)_s / s! (-z)^{-s}.  Empty when the
// terms start growing before reaching the target accuracy.
inline std::optional<PrecisionReal> u_asymptotic(const Rational& a, const Rational& b, const PrecisionReal& z,
                                                 mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 24;
  const Real zr(z.mid(), wp);
  Real c(1L, wp), sum(1L, wp), tmp(wp);
  const long double target = std::ldexp(1.0L, -static_cast<int>(wp));
  long double last = 1.0L;
  long double err = 0;
  for (long s = 0;; ++s) {
    const Rational f = (a + s) * (a - b + 1 + s) / Rational(s + 1);
    if (f == 0) break;  // terminates
    tmp.set(f);
    mpfr_mul(c.get(), c.get(), tmp.get(), MPFR_RNDN);
    mpfr_div(c.get(), c.get(), zr.get(), MPFR_RNDN);
    mpfr_neg(c.get(), c.get(), MPFR_RNDN);
    const long double mag = c.abs_up();
    if (mag > last && s > 0) return std::nullopt;
    if (mag < target) {
      err = 2 * mag;
      break;
    }
    mpfr_add(sum.get(), sum.get(), c.get(), MPFR_RNDN);
    last = mag;
    if (s > 4 * static_cast<long>(wp)) return std::nullopt;
  }
  PrecisionReal out(sum, err + std::ldexp(sum.abs_up(), -static_cast<int>(wp) + 8));
  PrecisionReal zz(zr, z.rad());
  return out * pow_rational(zz, Rational(-a));
}

// Convergent expansion for integer b = n + 1 (logarithmic case):
// U = (-1)^{n+1} / (n! Gamma(a-n)) sum_k (a)_k z^k / ((n+1)_k k!) [ln z + psi(a+k) - psi(1+k) - psi(n+k+1)]
//   + 1/Gamma(a) sum_{k=1}^{n} (k-1)! (1-a+k)_{n-k} / (n-k)! z^{-k}.
inline PrecisionReal u_series_integer_b(const Rational& a, long n, const PrecisionReal& z, mpfr_prec_t prec) {
  const double zd = static_cast<double>(z.mid().to_ld());
  // Rounded up to a multiple of 64 so the constants below hit the cache.
  const mpfr_prec_t wp = (prec + static_cast<mpfr_prec_t>(1.45 * zd) + 32 + 63) / 64 * 64;
  const Real zr(z.mid(), wp);
  PrecisionReal total(0L, wp);

  const Rational amn = a - n;
  if (!is_nonpositive_integer(amn)) {
    Real lz(wp), psi_a(wp), psi_1(wp), psi_n(wp), t(1L, wp), bracket(wp), term(wp), sum(0L, wp), tmp(wp);
    mpfr_log(lz.get(), zr.get(), MPFR_RNDN);
    psi_a = digamma_exact(a, wp).mid();
    psi_1 = (-const_euler(wp)).mid();
    psi_n = (PrecisionReal(harmonic(n), wp) - const_euler(wp)).mid();
    long double abs_sum = 0;
    for (long k = 0;; ++k) {
      mpfr_add(bracket.get(), lz.get(), psi_a.get(), MPFR_RNDN);
      mpfr_sub(bracket.get(), bracket.get(), psi_1.get(), MPFR_RNDN);
      mpfr_sub(bracket.get(), bracket.get(), psi_n.get(), MPFR_RNDN);
      mpfr_mul(term.get(), t.get(), bracket.get(), MPFR_RNDN);
      mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
      const long double tm = term.abs_up();
      abs_sum += tm;
      if (k > zd + 2 && tm <= std::ldexp(abs_sum, -static_cast<int>(wp) - 4)) break;
      // t_{k+1} = t_k (a+k) z / ((n+1+k)(k+1))
      tmp.set(Rational(a + k) / Rational((n + 1 + k) * (k + 1)));
      mpfr_mul(t.get(), t.get(), tmp.get(), MPFR_RNDN);
      mpfr_mul(t.get(), t.get(), zr.get(), MPFR_RNDN);
      tmp.set(Rational(1) / (a + k));
      mpfr_add(psi_a.get(), psi_a.get(), tmp.get(), MPFR_RNDN);
      tmp.set(Rational(1, k + 1));
      mpfr_add(psi_1.get(), psi_1.get(), tmp.get(), MPFR_RNDN);
      tmp.set(Rational(1, n + k + 1));
      mpfr_add(psi_n.get(), psi_n.get(), tmp.get(), MPFR_RNDN);
      if (t.is_zero()) break;
    }
    // The k-loop rounds each term; 2^{-wp+8} per unit of the absolute sum covers it.
    PrecisionReal S(sum, std::ldexp(abs_sum, -static_cast<int>(wp) + 8));
    PrecisionReal pref = PrecisionReal(Rational(sign_pow(n + 1), factorial(n)), wp) / gamma_exact(amn, wp);
    total += pref * S;
  }
  if (n > 0) {
    PrecisionReal S2(0L, wp);
    PrecisionReal zinv = PrecisionReal(1L, wp) / PrecisionReal(zr, z.rad());
    PrecisionReal zp = zinv;
    for (long k = 1; k <= n; ++k) {
      Rational poch = 1;
      for (long j = 0; j < n - k; ++j) poch *= 1 - a + k + j;
      S2 += zp * (Rational(factorial(k - 1)) * poch / Rational(factorial(n - k)));
      zp = zp * zinv;
    }
    total += S2 / gamma_exact(a, wp);
  }
  return total;
}

// U(a,b,z) for z > 0 and rational parameters.
inline PrecisionReal u_function(const Rational& a, const Rational& b, const PrecisionReal& z, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 16;
  PrecisionReal zz(Real(z.mid(), wp), z.rad());
  if (is_nonpositive_integer(a)) return u_polynomial(-a.get_num().get_si(), b, zz);
  if (b.get_den() == 1 && b >= 1 && is_dyadic(a)) {
    if (zz.mid().to_ld() > 0.75L * static_cast<long double>(prec)) {
      if (auto r = u_asymptotic(a, b, zz, wp)) return *r;
    }
    return u_series_integer_b(a, b.get_num().get_si() - 1, zz, wp);
  }
  return u_function_integral(a, b, zz, prec);
}

// e^{y/2} W_{kappa,mu}(y) for y > 0, with W = e^{-y/2} y^{mu+1/2} U(mu-kappa+1/2, 1+2mu, y).
inline PrecisionReal whittaker_w_scaled(const WhittakerParams& p, const PrecisionReal& y, mpfr_prec_t prec) {
  if (!y.is_positive()) throw domain_error("whittaker_w: y must be positive");
  if (p.mu < 0) throw domain_error("whittaker_w: mu must be >= 0");
  const Rational a = p.mu - p.kappa + Rational(1, 2);
  const Rational b = 1 + 2 * p.mu;
  const mpfr_prec_t wp = prec + 32;
  PrecisionReal yy(Real(y.mid(), wp), y.rad());
  PrecisionReal r;
  if (a > 0 && b.get_den() != 1) {
    r = u_scaled_integral(a, b, yy, prec) * pow_rational(yy, p.kappa);
  } else {
    r = u_function(a, b, yy, prec) * pow_rational(yy, Rational(p.mu + Rational(1, 2)));
  }
  PrecisionReal out(Real(r.mid(), prec), r.rad());
  out.add_error(detail::rounding_bound(out.mid(), 1));
  return out;
}

}  // namespace detail

inline PrecisionReal whittaker_w(const WhittakerParams& p, const PrecisionReal& y, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 16;
  PrecisionReal yy(Real(y.mid(), wp), y.rad());
  PrecisionReal r = detail::whittaker_w_scaled(p, yy, wp) * exp(-yy.mul_2exp(-1));
  PrecisionReal out(Real(r.mid(), prec), r.rad());
  out.add_error(detail::rounding_bound(out.mid(), 1));
  return out;
}

inline PrecisionReal whittaker_w(const WhittakerParams& p, const Rational& y, mpfr_prec_t prec) {
  return whittaker_w(p, PrecisionReal(y, prec + 64), prec);
}

// Gamma(1/2 + mu + kappa) / Gamma(1/2 + mu - kappa), the factor that extends W to y < 0.
inline PrecisionReal whittaker_ext_ratio(const WhittakerParams& p, mpfr_prec_t prec) {
  const Rational num = Rational(1, 2) + p.mu + p.kappa;
  const Rational den = Rational(1, 2) + p.mu - p.kappa;
  const bool num_pole = detail::is_nonpositive_integer(num);
  const bool den_pole = detail::is_nonpositive_integer(den);
  if (num_pole && den_pole) {
    // Gamma(-P)/Gamma(-Q) -> (-1)^{P-Q} Q!/P!
    const long P = -num.get_num().get_si(), Q = -den.get_num().get_si();
    return PrecisionReal(Rational(factorial(Q) * sign_pow(P - Q), factorial(P)), prec);
  }
  if (num_pole) throw pole_error("whittaker_ext: gamma ratio has a pole");
  if (den_pole) return PrecisionReal(0L, prec);
  return gamma_exact(num, prec + 16) / gamma_exact(den, prec + 16);
}

// e^{|y|/2} times the extended W: W(y) for y > 0, ratio * W_{-kappa,mu}(|y|) for y < 0.
inline PrecisionReal whittaker_ext_scaled(const WhittakerParams& p, const PrecisionReal& y, mpfr_prec_t prec) {
  if (y.contains_zero()) throw domain_error("whittaker_ext: y must be nonzero");
  if (y.is_positive()) return detail::whittaker_w_scaled(p, y, prec);
  PrecisionReal ratio = whittaker_ext_ratio(p, prec);
  if (ratio.mid().is_zero() && ratio.rad() == 0) return ratio;
  return ratio * detail::whittaker_w_scaled({-p.kappa, p.mu}, -y, prec);
}

inline PrecisionReal whittaker_ext(const WhittakerParams& p, const PrecisionReal& y, mpfr_prec_t prec) {
  PrecisionReal s = whittaker_ext_scaled(p, y, prec + 16);
  PrecisionReal r = s * exp(-abs(y).mul_2exp(-1));
  PrecisionReal out(Real(r.mid(), prec), r.rad());
  out.add_error(detail::rounding_bound(out.mid(), 1));
  return out;
}

struct CheckResult {
  PrecisionReal quadrature;
  PrecisionReal closed_form;
  long double residual = 0;      // |quadrature - closed form|
  long double error_bound = 0;   // combined error radii
};

namespace detail {

inline CheckResult make_check(PrecisionReal q, PrecisionReal c) {
  CheckResult r{q, c, 0, 0};
  r.residual = (q - c).mid().abs_up();
  r.error_bound = q.rad() + c.rad();
  return r;
}

inline quad::Options outer_quad(mpfr_prec_t prec) {
  quad::Options o;
  o.prec = prec;
  o.tol = 0;
  o.rel_tol = std::ldexp(1.0L, -static_cast<int>(prec) / 2 - 16);
  o.min_level = 3;
  o.max_level = 9;
  return o;
}

// Nodes outside [2^-E, 2^E] are dropped: the integrands there are below 2^-prec and the
// ball radii would leave the long double range.
inline bool outside_window(const Real& t, mpfr_prec_t prec) {
  const long e = mpfr_get_exp(t.get());
  const long E = std::min<long>(2400, 12 * static_cast<long>(prec));
  return e > E || e < -E;
}

}  // namespace detail

// int_0^inf W_{kappa,mu}(t) e^{-t/2} t^{s-1} dt against Gamma(s-mu+1/2) Gamma(s+mu+1/2) / Gamma(s-kappa+1).
inline CheckResult mellin_w_check1(const Rational& kappa, const Rational& mu, const Rational& s, mpfr_prec_t prec) {
  if (kappa < 0 || mu < 0) throw domain_error("mellin_w_check1: requires kappa, mu >= 0");
  if (s <= mu - Rational(1, 2)) throw domain_error("mellin_w_check1: requires s > mu - 1/2");
  const mpfr_prec_t wp = prec + 16;
  WhittakerParams p{kappa, mu};
  Real sm1(wp);
  sm1.set(Rational(s - 1));
  auto f = [&](const Real& t, const Real&) {
    if (detail::outside_window(t, prec)) return Real(0L, wp);
    PrecisionReal tt(t, 0);
    PrecisionReal w = detail::whittaker_w_scaled(p, tt, wp);
    Real r(wp), l(wp);
    mpfr_log(l.get(), t.get(), MPFR_RNDN);
    mpfr_mul(l.get(), l.get(), sm1.get(), MPFR_RNDN);
    mpfr_sub(l.get(), l.get(), t.get(), MPFR_RNDN);
    mpfr_exp(r.get(), l.get(), MPFR_RNDN);
    mpfr_mul(r.get(), r.get(), w.mid().get(), MPFR_RNDN);
    return r;
  };
  quad::Result q = quad::exp_sinh(f, Real(0L, wp), detail::outer_quad(wp));
  PrecisionReal closed = gamma_exact(s - mu + Rational(1, 2), wp) * gamma_exact(s + mu + Rational(1, 2), wp);
  const Rational g3 = s - kappa + 1;
  if (detail::is_nonpositive_integer(g3))
    closed = PrecisionReal(0L, wp);
  else
    closed = closed / gamma_exact(g3, wp);
  return detail::make_check(q.ball(), closed);
}

// int_0^inf W_{kappa,mu}(-t) e^{t/2} t^{s-1} dt against cos(pi(kappa-mu))/pi Gamma(s-mu+1/2) Gamma(s+mu+1/2) Gamma(kappa-s).
inline CheckResult mellin_w_check2(const Rational& kappa, const Rational& mu, const Rational& s, mpfr_prec_t prec) {
  if (kappa < 0 || mu < 0) throw domain_error("mellin_w_check2: requires kappa, mu >= 0");
  if (!(kappa >= s && s > mu - Rational(1, 2))) throw domain_error("mellin_w_check2: requires kappa >= s > mu - 1/2");
  if (s == kappa) throw pole_error("mellin_w_check2: Gamma(kappa - s) has a pole at s = kappa");
  const mpfr_prec_t wp = prec + 16;
  WhittakerParams p{kappa, mu};
  Real sm1(wp);
  sm1.set(Rational(s - 1));
  auto f = [&](const Real& t, const Real&) {
    if (detail::outside_window(t, prec)) return Real(0L, wp);
    PrecisionReal tt(t, 0);
    PrecisionReal w = whittaker_ext_scaled(p, -tt, wp);
    Real r(wp), l(wp);
    mpfr_log(l.get(), t.get(), MPFR_RNDN);
    mpfr_mul(l.get(), l.get(), sm1.get(), MPFR_RNDN);
    mpfr_exp(r.get(), l.get(), MPFR_RNDN);
    mpfr_mul(r.get(), r.get(), w.mid().get(), MPFR_RNDN);
    return r;
  };
  quad::Result q = quad::exp_sinh(f, Real(0L, wp), detail::outer_quad(wp));
  PrecisionReal cosv = cos(const_pi(wp) * Rational(kappa - mu));
  PrecisionReal closed = cosv / const_pi(wp) * gamma_exact(s - mu + Rational(1, 2), wp) *
                         gamma_exact(s + mu + Rational(1, 2), wp) * gamma_exact(kappa - s, wp);
  return detail::make_check(q.ball(), closed);
}

struct WConvolutionParams {
  long k1, k2, m1, m2;
  Rational a, b;

  long ell() const { return k1 + k2 - m1 - m2 - 1; }
  long qq() const { return k1 + k2 + m1 + m2 - 1; }
  void validate() const {
    if (m1 < 0 || m2 < 0 || m1 > k1 || m2 > k2) throw domain_error("WConvolutionParams: need 0 <= m_i <= k_i");
    if (m1 + m2 >= k1 + k2) throw domain_error("WConvolutionParams: need m1 + m2 < k1 + k2");
    if (a + b != 1) throw domain_error("WConvolutionParams: need a + b = 1");
    if (a == 0 || b == 0) throw domain_error("WConvolutionParams: need ab != 0");
  }
};

// int_0^inf W_{k1,m1}(ay) W_{k2,m2}(by) e^{-y/2} y^{k1+k2-2} dy against
// 2 (-1)^{k1-m1} q! l! / pi |a|^{m1+1/2} |b|^{m2+1/2} Q_l^{(2m1,2m2)}(b - a).
inline CheckResult w_convolution_check(const WConvolutionParams& p, mpfr_prec_t prec) {
  p.validate();
  const mpfr_prec_t wp = prec + 16;
  const WhittakerParams w1{p.k1, p.m1}, w2{p.k2, p.m2};
  const Rational decay = (abs(p.a) + abs(p.b) + 1) / 2;
  Real dr(wp);
  dr.set(decay);
  const long pw = p.k1 + p.k2 - 2;
  auto f = [&](const Real& y, const Real&) {
    if (detail::outside_window(y, prec)) return Real(0L, wp);
    PrecisionReal yy(y, 0);
    PrecisionReal s1 = whittaker_ext_scaled(w1, yy * p.a, wp);
    PrecisionReal s2 = whittaker_ext_scaled(w2, yy * p.b, wp);
    Real r(wp), l(wp);
    mpfr_log(l.get(), y.get(), MPFR_RNDN);
    mpfr_mul_si(l.get(), l.get(), pw, MPFR_RNDN);
    Real e(wp);
    mpfr_mul(e.get(), dr.get(), y.get(), MPFR_RNDN);
    mpfr_sub(l.get(), l.get(), e.get(), MPFR_RNDN);
    mpfr_exp(r.get(), l.get(), MPFR_RNDN);
    mpfr_mul(r.get(), r.get(), s1.mid().get(), MPFR_RNDN);
    mpfr_mul(r.get(), r.get(), s2.mid().get(), MPFR_RNDN);
    return r;
  };
  quad::Result q = quad::exp_sinh(f, Real(0L, wp), detail::outer_quad(wp));
  const QSecondKind Q = q_construct(p.ell(), 2 * p.m1, 2 * p.m2);
  PrecisionReal qv = q_eval_real(Q, Rational(p.b - p.a), wp);
  PrecisionReal abs_a(abs(p.a), wp), abs_b(abs(p.b), wp);
  PrecisionReal closed = qv * Rational(2 * sign_pow(p.k1 - p.m1) * factorial(p.qq()) * factorial(p.ell())) /
                         const_pi(wp) * detail::pow_rational(abs_a, Rational(p.m1) + Rational(1, 2)) *
                         detail::pow_rational(abs_b, Rational(p.m2) + Rational(1, 2));
  return detail::make_check(q.ball(), closed);
}

}  // namespace divisum
