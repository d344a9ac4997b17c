#pragma once

#include <cmath>
#include <vector>

#include "divisum/jacobi/second_kind.hpp"

namespace divisum {

namespace detail {

// Minimal complex number over MPFR, enough for analytic continuation of 2F1.
struct Cx {
  Real re, im;
  explicit Cx(mpfr_prec_t p) : re(p), im(p) {}
  Cx(const Real& r, const Real& i) : re(r), im(i) {}
  mpfr_prec_t prec() const { return re.prec(); }
};

inline Cx cx_add(const Cx& a, const Cx& b) {
  Cx r(a.prec());
  mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return r;
}

inline Cx cx_mul(const Cx& a, const Cx& b) {
  const mpfr_prec_t p = a.prec();
  Cx r(p);
  Real t(p);
  mpfr_mul(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(r.re.get(), r.re.get(), t.get(), MPFR_RNDN);
  mpfr_mul(r.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), r.im.get(), t.get(), MPFR_RNDN);
  return r;
}

inline Cx cx_scale(const Cx& a, const Real& s) {
  Cx r(a.prec());
  mpfr_mul(r.re.get(), a.re.get(), s.get(), MPFR_RNDN);
  mpfr_mul(r.im.get(), a.im.get(), s.get(), MPFR_RNDN);
  return r;
}

inline Cx cx_div(const Cx& a, const Cx& b) {
  const mpfr_prec_t p = a.prec();
  Real den(p), t(p);
  mpfr_sqr(den.get(), b.re.get(), MPFR_RNDN);
  mpfr_sqr(t.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(den.get(), den.get(), t.get(), MPFR_RNDN);
  Cx conj(b.re, b.im);
  mpfr_neg(conj.im.get(), conj.im.get(), MPFR_RNDN);
  Cx r = cx_mul(a, conj);
  mpfr_div(r.re.get(), r.re.get(), den.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), r.im.get(), den.get(), MPFR_RNDN);
  return r;
}

inline Cx cx_real(const Real& x) {
  Cx r(x.prec());
  mpfr_set(r.re.get(), x.get(), MPFR_RNDN);
  return r;
}

inline Cx cx_long(long x, mpfr_prec_t p) {
  Cx r(p);
  mpfr_set_si(r.re.get(), x, MPFR_RNDN);
  return r;
}

inline long double cx_abs(const Cx& a) { return std::hypot(a.re.to_ld(), a.im.to_ld()); }

struct F2State {
  Cx z, f, df;
};

// Direct series at |z| <= 1/2, returning F and F'.
inline F2State hyp2f1_series(long a, long b, long c, const Cx& z) {
  const mpfr_prec_t p = z.prec();
  Cx term = cx_long(1, p), f = cx_long(1, p), df(p);
  const long double eps = std::ldexp(1.0L, -static_cast<int>(p) - 4);
  for (long n = 0; n < 100000; ++n) {
    // term_{n+1} = term_n (a+n)(b+n)/((c+n)(n+1)) z
    Real ratio(p);
    mpfr_set_si(ratio.get(), (a + n) * (b + n), MPFR_RNDN);
    mpfr_div_si(ratio.get(), ratio.get(), (c + n) * (n + 1), MPFR_RNDN);
    Cx next = cx_mul(cx_scale(term, ratio), z);
    // derivative term: (n+1) t_{n+1} z^{-1} = t_n (a+n)(b+n)/(c+n)
    Real dr(p);
    mpfr_set_si(dr.get(), (a + n) * (b + n), MPFR_RNDN);
    mpfr_div_si(dr.get(), dr.get(), c + n, MPFR_RNDN);
    df = cx_add(df, cx_scale(term, dr));
    f = cx_add(f, next);
    term = next;
    if (n > 8 && cx_abs(term) * (n + 2) < eps * std::max(1.0L, cx_abs(f))) break;
  }
  return {z, f, df};
}

// One Taylor step of the hypergeometric ODE from s.z to z1.
inline F2State hyp2f1_step(long a, long b, long c, const F2State& s, const Cx& z1) {
  const mpfr_prec_t p = s.z.prec();
  const Cx& z0 = s.z;
  Cx one = cx_long(1, p);
  Cx h(p);
  mpfr_sub(h.re.get(), z1.re.get(), z0.re.get(), MPFR_RNDN);
  mpfr_sub(h.im.get(), z1.im.get(), z0.im.get(), MPFR_RNDN);
  Cx omz(p);
  mpfr_sub(omz.re.get(), one.re.get(), z0.re.get(), MPFR_RNDN);
  mpfr_neg(omz.im.get(), z0.im.get(), MPFR_RNDN);
  Cx A0 = cx_mul(z0, omz);
  Cx A1(p);  // 1 - 2 z0
  mpfr_mul_si(A1.re.get(), z0.re.get(), -2, MPFR_RNDN);
  mpfr_add_si(A1.re.get(), A1.re.get(), 1, MPFR_RNDN);
  mpfr_mul_si(A1.im.get(), z0.im.get(), -2, MPFR_RNDN);
  Cx B0(p);  // c - (a+b+1) z0
  mpfr_mul_si(B0.re.get(), z0.re.get(), -(a + b + 1), MPFR_RNDN);
  mpfr_add_si(B0.re.get(), B0.re.get(), c, MPFR_RNDN);
  mpfr_mul_si(B0.im.get(), z0.im.get(), -(a + b + 1), MPFR_RNDN);
  const long B1 = -(a + b + 1);
  const long ab = a * b;

  Cx fn = s.f, fn1 = s.df;  // f_0, f_1
  Cx hp = h;                // h^1
  Cx val = cx_add(fn, cx_mul(fn1, h));
  Cx dval = fn1;
  const long double eps = std::ldexp(1.0L, -static_cast<int>(p) - 4);
  int quiet = 0;
  for (long n = 0; n < 200000; ++n) {
    // f_{n+2} = -[(A1 n + B0)(n+1) f_{n+1} + (-n(n-1) + B1 n - ab) f_n] / (A0 (n+1)(n+2))
    Cx t1 = cx_add(cx_mul(A1, cx_long(n, p)), B0);
    t1 = cx_mul(t1, cx_mul(cx_long(n + 1, p), fn1));
    Cx t2 = cx_mul(cx_long(-n * (n - 1) + B1 * n - ab, p), fn);
    Cx num = cx_add(t1, t2);
    mpfr_neg(num.re.get(), num.re.get(), MPFR_RNDN);
    mpfr_neg(num.im.get(), num.im.get(), MPFR_RNDN);
    Cx fn2 = cx_div(num, cx_mul(A0, cx_long((n + 1) * (n + 2), p)));
    Cx dterm = cx_mul(cx_mul(fn2, hp), cx_long(n + 2, p));
    hp = cx_mul(hp, h);
    Cx term = cx_mul(fn2, hp);
    val = cx_add(val, term);
    dval = cx_add(dval, dterm);
    const long double scale = std::max(cx_abs(val), cx_abs(dval) * cx_abs(h));
    if (cx_abs(term) < eps * scale && cx_abs(dterm) * cx_abs(h) < eps * scale) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
    fn = fn1;
    fn1 = fn2;
  }
  return {z1, val, dval};
}

inline Cx cx_point(long double re, long double im, mpfr_prec_t p) {
  Cx r(p);
  mpfr_set_ld(r.re.get(), re, MPFR_RNDN);
  mpfr_set_ld(r.im.get(), im, MPFR_RNDN);
  return r;
}

// Real part of 2F1(a,b;c;t + i0) for real t (the principal value when t > 1).
inline Real hyp2f1_real(long a, long b, long c, const Real& t, mpfr_prec_t p) {
  const long double tv = t.to_ld();
  Cx target = cx_real(Real(t, p));
  if (std::fabs(tv) <= 0.5L) return hyp2f1_series(a, b, c, target).f.re;
  if (tv < 0) {
    F2State s = hyp2f1_series(a, b, c, cx_point(-0.5L, 0, p));
    long double z = -0.5L;
    while (z > tv) {
      z = std::max(tv, z * 1.5L);
      s = hyp2f1_step(a, b, c, s, z == tv ? target : cx_point(z, 0, p));
    }
    return s.f.re;
  }
  F2State s = hyp2f1_series(a, b, c, cx_point(0.5L, 0, p));
  if (tv < 1) {
    long double z = 0.5L;
    while (z < tv) {
      z = std::min(tv, z + 0.5L * (1 - z));
      if (tv - z < 1e-3L * (1 - tv)) z = tv;
      s = hyp2f1_step(a, b, c, s, z == tv ? target : cx_point(z, 0, p));
    }
    return s.f.re;
  }
  if (tv == 1) throw singular_argument_error("hyp2f1_real: t = 1 is a branch point");
  // Upper semicircle around 1, then outward along the real axis.
  const long double pi = std::acos(-1.0L);
  for (int k = 1; k <= 8; ++k) {
    long double th = pi - k * pi / 8;
    Cx z(p);
    if (k == 8) {
      z = cx_point(1.5L, 0, p);
    } else {
      Real ang(p);
      mpfr_set_ld(ang.get(), th, MPFR_RNDN);
      mpfr_cos(z.re.get(), ang.get(), MPFR_RNDN);
      mpfr_sin(z.im.get(), ang.get(), MPFR_RNDN);
      mpfr_mul_2si(z.re.get(), z.re.get(), -1, MPFR_RNDN);
      mpfr_mul_2si(z.im.get(), z.im.get(), -1, MPFR_RNDN);
      mpfr_add_si(z.re.get(), z.re.get(), 1, MPFR_RNDN);
    }
    s = hyp2f1_step(a, b, c, s, z);
  }
  long double z = 1.5L;
  if (tv < z) {
    while (z > tv) {
      z = std::max(tv, z - 0.5L * (z - 1));
      if (z - tv < 1e-3L * (tv - 1)) z = tv;
      s = hyp2f1_step(a, b, c, s, z == tv ? target : cx_point(z, 0, p));
    }
  } else {
    while (z < tv) {
      z = std::min(tv, z + 0.5L * (z - 1));
      s = hyp2f1_step(a, b, c, s, z == tv ? target : cx_point(z, 0, p));
    }
  }
  return s.f.re;
}

inline Real q_hyp_at(const QSecondKind& q, const Rational& x, mpfr_prec_t p) {
  const long a = q.d + q.beta + 1, b = q.d + 1, c = 2 * q.d + q.alpha + q.beta + 2;
  Real z(p);
  z.set(Rational(Rational(2) / (x + 1)));
  Real F = hyp2f1_real(a, b, c, z, p);
  Rational pre = q_asymptotic_constant(q.d, q.alpha, q.beta) * rpow(Rational(x - 1), -q.alpha) *
                 rpow(Rational(x + 1), -(q.d + q.beta + 1));
  Real pr(p);
  pr.set(pre);
  mpfr_mul(F.get(), F.get(), pr.get(), MPFR_RNDN);
  return F;
}

}  // namespace detail

// Q evaluated through its hypergeometric representation
//   C (x-1)^{-alpha} (x+1)^{-(d+beta+1)} 2F1(d+beta+1, d+1; 2d+alpha+beta+2; 2/(1+x)),
// taking the average of both boundary values of 2F1 on its cut when -1 < x < 1.
// Independent of the closed form; the error is estimated by repeating at higher precision.
inline PrecisionReal q_eval_hypergeometric(const QSecondKind& q, const Rational& x, mpfr_prec_t prec) {
  if (x == 1 || x == -1) throw singular_argument_error("q_eval_hypergeometric: x = +-1 is singular");
  Real v1 = detail::q_hyp_at(q, x, prec + 32);
  Real v2 = detail::q_hyp_at(q, x, prec + 96);
  Real diff(prec + 96);
  mpfr_sub(diff.get(), v1.get(), v2.get(), MPFR_RNDN);
  PrecisionReal out(Real(v2, prec), 0);
  out.set_rad(detail::up(4 * diff.abs_up() + std::ldexp(out.mid().abs_up(), 2 - static_cast<int>(prec))));
  return out;
}

}  // namespace divisum
