#pragma once

#include <cmath>

#include "divisum/arith/constants.hpp"

namespace divisum {

namespace detail {
inline PrecisionReal from_mpfr_call(mpfr_prec_t prec, int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), const Real& arg) {
  Real m(prec);
  int t = fn(m.get(), arg.get(), MPFR_RNDN);
  if (!m.is_finite()) throw pole_error("special function evaluated at a pole");
  long double r = detail::rounding_bound(m, t);
  return {std::move(m), r};
}

inline Real exact_real(const Rational& q, mpfr_prec_t prec) {
  Real r(prec + 64);
  if (r.set(q) != 0) throw domain_error("argument " + q.get_str() + " is not exactly representable in binary");
  return r;
}
}  // namespace detail

// zeta(m) for odd m >= 3 by Euler-Maclaurin summation; truncation below 2^-prec.
inline PrecisionReal zeta_odd(long m, mpfr_prec_t prec) {
  if (m == 1) throw pole_error("zeta has a pole at 1");
  if (m < 3 || m % 2 == 0) throw domain_error("zeta_odd: argument must be odd and >= 3");
  const mpfr_prec_t wp = prec + 32;
  const long N = static_cast<long>(0.12 * static_cast<double>(prec)) + 16;
  PrecisionReal sum(0L, wp);
  for (long j = 1; j < N; ++j) sum += pow(PrecisionReal(j, wp), -m);
  PrecisionReal Nr(N, wp);
  PrecisionReal Nm = pow(Nr, -m);
  sum += Nm * Nr / Rational(m - 1);
  sum += Nm / Rational(2);
  // Correction terms B_{2i}/(2i)! * m(m+1)...(m+2i-2) * N^{-m-2i+1}.
  PrecisionReal Ninv2 = PrecisionReal(1L, wp) / (Nr * Nr);
  PrecisionReal pw = Nm * Nr;  // N^{1-m}
  Rational rising = m;
  const long double target = std::ldexp(1.0L, -static_cast<int>(prec) - 8);
  bool converged = false;
  for (long i = 1; i < 4 * N; ++i) {
    if (i > 1) rising *= Rational((m + 2 * i - 3) * (m + 2 * i - 2));
    pw *= Ninv2;
    Rational c = bernoulli(static_cast<unsigned>(2 * i)) / Rational(factorial(static_cast<unsigned long>(2 * i))) * rising;
    PrecisionReal term = pw * c;
    if (term.abs_up() < target) {
      // For real s > 1 the remainder is bounded by the first omitted term; use twice that.
      sum.add_error(2 * term.abs_up());
      converged = true;
      break;
    }
    sum += term;
  }
  if (!converged) throw convergence_error("zeta_odd: Euler-Maclaurin did not converge");
  PrecisionReal out(Real(sum.mid(), prec), 0);
  out.set_rad(detail::up(sum.rad() + detail::rounding_bound(out.mid(), 1)));
  return out;
}

// zeta(m) as a real enclosure for any integer m >= 2.
inline PrecisionReal zeta_value(long m, mpfr_prec_t prec) {
  if (m % 2 == 0) return pow(const_pi(prec), m) * zeta_even(m);
  return zeta_odd(m, prec);
}

// zeta'(-m) for even m >= 2 via zeta'(-2k) = (-1)^k (2k)! zeta(2k+1) / (2 (2 pi)^{2k}).
inline PrecisionReal zeta_prime_neg_even(long m, mpfr_prec_t prec) {
  if (m < 2 || m % 2 != 0) throw domain_error("zeta_prime_neg_even: argument must be even and >= 2");
  Rational c(factorial(static_cast<unsigned long>(m)), 2);
  if ((m / 2) % 2 != 0) c = -c;
  PrecisionReal twopi = const_pi(prec).mul_2exp(1);
  return zeta_odd(m + 1, prec) * c / pow(twopi, m);
}

// psi(k + 1/2) = -gamma - 2 log 2 + 2 sum_{j=1..k} 1/(2j-1).
inline PrecisionReal digamma_half(long k, mpfr_prec_t prec) {
  if (k < 0) throw domain_error("digamma_half: k must be >= 0");
  Rational s = 0;
  for (long j = 1; j <= k; ++j) s += Rational(2, 2 * j - 1);
  return PrecisionReal(s, prec) - const_euler(prec) - const_log2(prec).mul_2exp(1);
}

// Gamma(m, x) = (m-1)! e^{-x} sum_{j<m} x^j / j! for integer m >= 1.
inline PrecisionReal incomplete_gamma_upper(long m, const PrecisionReal& x) {
  if (m < 1) throw domain_error("incomplete_gamma_upper: m must be >= 1");
  if (x.is_negative()) throw domain_error("incomplete_gamma_upper: x must be >= 0");
  PrecisionReal term(1L, x.prec());
  PrecisionReal sum(1L, x.prec());
  for (long j = 1; j < m; ++j) {
    term = term * x / Rational(j);
    sum += term;
  }
  return exp(-x) * sum * Rational(factorial(static_cast<unsigned long>(m - 1)));
}

inline PrecisionReal incomplete_gamma_upper(long m, const Rational& x, mpfr_prec_t prec) {
  return incomplete_gamma_upper(m, PrecisionReal(x, prec));
}

// Gamma at an exactly representable (dyadic) rational argument.
inline PrecisionReal gamma_exact(const Rational& s, mpfr_prec_t prec) {
  if (s.get_den() == 1 && s <= 0) throw pole_error("gamma has a pole at " + s.get_str());
  if (s.get_den() == 1 && s <= 170) return PrecisionReal(Rational(factorial(s.get_num().get_ui() - 1)), prec);
  return detail::from_mpfr_call(prec, mpfr_gamma, detail::exact_real(s, prec));
}

// zeta at an exactly representable real argument other than 1.
inline PrecisionReal zeta_exact(const Rational& s, mpfr_prec_t prec) {
  if (s == 1) throw pole_error("zeta has a pole at 1");
  if (s.get_den() == 1) {
    long m = s.get_num().get_si();
    if (m <= 0) return PrecisionReal(zeta_neg_int(-m), prec);
    return zeta_value(m, prec);
  }
  return detail::from_mpfr_call(prec, mpfr_zeta, detail::exact_real(s, prec));
}

// digamma at an exactly representable argument that is not a pole.
inline PrecisionReal digamma_exact(const Rational& s, mpfr_prec_t prec) {
  if (s.get_den() == 1 && s <= 0) throw pole_error("digamma has a pole at " + s.get_str());
  return detail::from_mpfr_call(prec, mpfr_digamma, detail::exact_real(s, prec));
}

// log Gamma(x) for exactly representable x > 0.
inline PrecisionReal lngamma_exact(const Rational& s, mpfr_prec_t prec) {
  if (s <= 0) throw domain_error("lngamma_exact: argument must be positive");
  return detail::from_mpfr_call(prec, mpfr_lngamma, detail::exact_real(s, prec));
}

}  // namespace divisum
