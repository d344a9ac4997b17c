#pragma once

#include <map>
#include <string>
#include <vector>

#include "divisum/arith/special.hpp"
#include "divisum/boundary/symbolic.hpp"
#include "divisum/quadrature.hpp"
#include "divisum/sums/params.hpp"
#include "divisum/sums/sigma.hpp"
#include "divisum/whittaker/whittaker.hpp"

namespace divisum {

// Z_d^{(alpha,beta)}(n).  For beta > 0 it is A zeta(beta) |n|^beta + B zeta'(-beta);
// for beta = 0 it is c0 + c_log log(4 pi^2 |n|).
struct ZTerm {
  long d = 1, alpha = 0, beta = 0;
  long n = 1;
  Rational A = 0, B = 0;          // beta > 0
  Rational c0 = 0, c_log = 0;     // beta = 0

  PrecisionReal value(mpfr_prec_t prec) const {
    const mpfr_prec_t wp = prec + 16;
    const Integer an = Integer(n < 0 ? -n : n);
    if (beta > 0) {
      PrecisionReal v = zeta_value(beta, wp) * Rational(A * Rational(ipow(an, static_cast<unsigned long>(beta))));
      return v + zeta_prime_neg_even(beta, wp) * B;
    }
    PrecisionReal pi = const_pi(wp);
    PrecisionReal arg = pi * pi * Rational(4 * an);
    return PrecisionReal(c0, wp) + log(arg) * c_log;
  }

  // Normal form over zeta(odd), powers of pi, n and log(4 pi^2 |n|); n stays symbolic.
  SymbolicSum symbolic() const {
    SymbolicSum s;
    if (beta > 0) {
      SymKey k;
      k.n_pow = beta;
      s.add_zeta(beta, A, k);
      s.add_zeta_prime_neg_even(beta, B);
    } else {
      s.add({}, c0);
      SymKey k;
      k.log = true;
      s.add(k, c_log);
    }
    return s;
  }

  // Printed form, e.g. "1/40*zeta(2)*n^2 + 3/2*zeta'(-2)".
  std::string str() const {
    auto term = [](const Rational& c, const std::string& sym, bool first) {
      std::string out;
      if (!first) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      const Rational a = abs(c);
      out += (a == 1 && !sym.empty()) ? sym : a.get_str() + (sym.empty() ? "" : "*" + sym);
      return out;
    };
    if (beta > 0)
      return term(A, "zeta(" + std::to_string(beta) + ")*n^" + std::to_string(beta), true) +
             term(B, "zeta'(-" + std::to_string(beta) + ")", false);
    return term(c0, "", true) + term(c_log, "log(4pi^2|n|)", false);
  }
};

inline ZTerm z_term(long d, long alpha, long beta, long n) {
  if (d < 1) throw domain_error("z_term: d must be >= 1");
  if (alpha < 0 || beta < 0 || alpha % 2 || beta % 2) throw domain_error("z_term: alpha, beta must be even and >= 0");
  if (n == 0) throw domain_error("z_term: n must be nonzero");
  ZTerm z;
  z.d = d;
  z.alpha = alpha;
  z.beta = beta;
  z.n = n;
  if (beta > 0) {
    z.A = Rational(factorial(beta - 1) * factorial(alpha + d)) / Rational(2 * factorial(alpha + beta + d));
    z.B = make_rational(binomial(d + beta, d), 2);
  } else {
    z.c0 = (harmonic(d + alpha) + harmonic(d)) / 4;
    z.c_log = Rational(-1, 4);
  }
  return z;
}

// Real-analytic Eisenstein series of weight 2*kk at spectral parameter s.
struct EisensteinParams {
  long kk = 0;
  Rational s = Rational(1, 2);
};

// theta_k(s) = pi^{-s} Gamma(s+k) zeta(2s).
inline PrecisionReal eisenstein_theta(long kk, const Rational& s, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 16;
  const Rational g = s + kk;
  const Rational z2 = 2 * s;
  PrecisionReal zeta = zeta_exact(z2, wp);
  if (detail::is_nonpositive_integer(g)) {
    if (zeta.mid().is_zero() && zeta.rad() == 0) throw unsupported_error("eisenstein_theta: 0 * pole at s = " + s.get_str());
    throw pole_error("eisenstein_theta: Gamma pole at s = " + s.get_str());
  }
  PrecisionReal pi = const_pi(wp);
  PrecisionReal pis = detail::pow_rational(pi, Rational(-s));
  return pis * gamma_exact(g, wp) * zeta;
}

// c_{k,s}(y): theta_k(s) y^s + theta_k(1-s) y^{1-s} for s > 1/2, and the digamma form at s = 1/2.
inline PrecisionReal constant_term(const EisensteinParams& e, const PrecisionReal& y, mpfr_prec_t prec) {
  if (e.s < Rational(1, 2)) throw domain_error("constant_term: s must be >= 1/2");
  if (!y.is_positive()) throw domain_error("constant_term: y must be positive");
  const mpfr_prec_t wp = prec + 16;
  if (e.s == Rational(1, 2)) {
    PrecisionReal pi = const_pi(wp);
    PrecisionReal g = gamma_exact(Rational(e.kk) + Rational(1, 2), wp) / sqrt(pi);
    PrecisionReal br = digamma_half(e.kk, wp) + const_euler(wp).mul_2exp(1) + log(y / pi);
    return g * br * sqrt(y);
  }
  const Rational s1 = 1 - e.s;
  return eisenstein_theta(e.kk, e.s, wp) * detail::pow_rational(y, e.s) +
         eisenstein_theta(e.kk, s1, wp) * detail::pow_rational(y, s1);
}

// n-th Fourier coefficient (-1)^k sigma_{2s-1}(n) |n|^{-s} W_{k,s-1/2}(4 pi n y); s must be a half-integer.
inline PrecisionReal eis_fourier_coeff(const EisensteinParams& e, long n, const PrecisionReal& y, mpfr_prec_t prec) {
  if (n == 0) throw domain_error("eis_fourier_coeff: n must be nonzero");
  if (!y.is_positive()) throw domain_error("eis_fourier_coeff: y must be positive");
  const Rational r = 2 * e.s - 1;
  if (r.get_den() != 1 || r < 0) throw unsupported_error("eis_fourier_coeff: 2s - 1 must be a nonnegative integer");
  const mpfr_prec_t wp = prec + 16;
  const long an = n < 0 ? -n : n;
  PrecisionReal arg = const_pi(wp) * y * Rational(4 * n);
  WhittakerParams w{Rational(e.kk), e.s - Rational(1, 2)};
  PrecisionReal W = whittaker_ext(w, arg, wp);
  PrecisionReal mag = detail::pow_rational(PrecisionReal(an, wp), Rational(-e.s));
  return W * mag * Rational(sigma(r.get_num().get_si(), an) * sign_pow(e.kk));
}

// Eisenstein weights 2*k1, 2*k2 with k1 + k2 = k/2 and k_i >= m_i = r_i/2.
struct Split {
  long k1 = 0, k2 = 0, m1 = 0, m2 = 0;
  std::string str() const {
    return "k1=" + std::to_string(k1) + " k2=" + std::to_string(k2) + " m1=" + std::to_string(m1) + " m2=" + std::to_string(m2);
  }
};

inline void validate_split(const ConvolutionParams& p, const Split& s) {
  if (s.m1 * 2 != p.r1 || s.m2 * 2 != p.r2) throw domain_error("split: m_i must equal r_i/2");
  if (2 * s.k1 + 2 * s.k2 != p.k()) throw domain_error("split: 2k1 + 2k2 must equal k");
  if (s.k1 < s.m1 || s.k2 < s.m2) throw domain_error("split: need k_i >= m_i");
}

inline std::vector<Split> admissible_splits(const ConvolutionParams& p) {
  p.validate();
  std::vector<Split> out;
  const long m1 = p.r1 / 2, m2 = p.r2 / 2, half = p.k() / 2;
  for (long k1 = m1; half - k1 >= m2; ++k1) out.push_back({k1, half - k1, m1, m2});
  return out;
}

inline Split default_split(const ConvolutionParams& p) {
  p.validate();
  const long m1 = p.r1 / 2, m2 = p.r2 / 2;
  const long k1 = m1 + (p.d + 1) / 2;
  return {k1, p.k() / 2 - k1, m1, m2};
}

// Prefactor of the a_{n1,n2} terms: 2 (-1)^{k2+m1} (4 pi)^{k/2} n^d d! (d+r1+r2)! / (pi (k-2)!).
// Dividing the boundary terms by it and flipping sign gives the Z-terms of the identity.
inline PrecisionReal normalization_prefactor(const ConvolutionParams& p, const Split& s, mpfr_prec_t prec) {
  validate_split(p, s);
  const mpfr_prec_t wp = prec + 16;
  const long k = p.k();
  Rational c = Rational(2 * sign_pow(s.k2 + s.m1) * ipow(4, k / 2) * ipow(Integer(p.n), p.d) * factorial(p.d) *
                        factorial(p.d + p.r1 + p.r2)) /
               Rational(factorial(k - 2));
  PrecisionReal pi = const_pi(wp);
  return pow(pi, k / 2 - 1) * c;
}

namespace detail {

// (-1)^{k1+m2} 2^{k+1} pi^{k/2-1} n^d d! (d+r1+r2)! / (k-2)!, shared by both boundary terms.
inline PrecisionReal boundary_scale(const ConvolutionParams& p, long sign_exp, mpfr_prec_t wp) {
  const long k = p.k();
  Rational c = Rational(sign_pow(sign_exp) * ipow(2, k + 1) * ipow(Integer(p.n), p.d) * factorial(p.d) *
                        factorial(p.d + p.r1 + p.r2)) /
               Rational(factorial(k - 2));
  return pow(const_pi(wp), k / 2 - 1) * c;
}

// Bracket of the boundary term for the pair (r, r_other): with r_other = 0 the limit form is used.
// Returns 2 d! (d + r + r_other)! Z_d^{(r, r_other)}(n) in the shape of the closed form.
inline PrecisionReal boundary_bracket(long d, long r, long r_other, long n, mpfr_prec_t wp) {
  if (r_other > 0) {
    PrecisionReal t1 = zeta_value(r_other, wp) *
                       Rational(ipow(Integer(n), r_other) * factorial(r_other - 1) * factorial(d) * factorial(d + r));
    PrecisionReal t2 = zeta_prime_neg_even(r_other, wp) *
                       Rational(factorial(d + r_other) * factorial(r + r_other + d), factorial(r_other));
    return t1 + t2;
  }
  // r_other -> 0 limit: d! (d+r)! (H_d + H_{d+r} - log 4 pi^2 n) / 2.
  PrecisionReal pi = const_pi(wp);
  PrecisionReal lg = log(pi * pi * Rational(4 * n));
  PrecisionReal h(harmonic(d) + harmonic(d + r), wp);
  return (h - lg) * Rational(factorial(d) * factorial(d + r), 2);
}

}  // namespace detail

// a_{n,0}: generic case and its r2 -> 0 limit.
inline PrecisionReal boundary_an0(const ConvolutionParams& p, const Split& s, mpfr_prec_t prec) {
  validate_split(p, s);
  if (p.n <= 0) throw domain_error("boundary_an0: n must be positive");
  const mpfr_prec_t wp = prec + 32;
  PrecisionReal br = detail::boundary_bracket(p.d, p.r1, p.r2, p.n, wp);
  // bracket = 2 d! (d+r1+r2)! Z, while boundary_scale already carries d! (d+r1+r2)! and a factor 2.
  Rational norm = Rational(1) / Rational(2 * factorial(p.d) * factorial(p.d + p.r1 + p.r2));
  return detail::boundary_scale(p, s.k1 + s.m2, wp) * br * norm * Rational(sigma(p.r1, p.n));
}

// a_{0,n}: generic case and its r1 -> 0 limit.
inline PrecisionReal boundary_a0n(const ConvolutionParams& p, const Split& s, mpfr_prec_t prec) {
  validate_split(p, s);
  if (p.n <= 0) throw domain_error("boundary_a0n: n must be positive");
  const mpfr_prec_t wp = prec + 32;
  PrecisionReal br = detail::boundary_bracket(p.d, p.r2, p.r1, p.n, wp);
  Rational norm = Rational(1) / Rational(2 * factorial(p.d) * factorial(p.d + p.r1 + p.r2));
  return detail::boundary_scale(p, s.k2 + s.m1, wp) * br * norm * Rational(sigma(p.r2, p.n));
}

struct BoundaryTerms {
  PrecisionReal an0;
  PrecisionReal a0n;
  ConvolutionParams params;
  Split split;

  // -(a_{n,0} + a_{0,n}) / prefactor: the Z-part of the identity's right-hand side.
  PrecisionReal normalized(mpfr_prec_t prec) const {
    return -(an0 + a0n) / normalization_prefactor(params, split, prec);
  }
};

inline BoundaryTerms boundary_terms(const ConvolutionParams& p, const Split& s, mpfr_prec_t prec) {
  return {boundary_an0(p, s, prec), boundary_a0n(p, s, prec), p, s};
}

// Generic a_{n,0} formula evaluated at a small real r2 = eps (exactly 2^-eps_bits), with
// Gamma and zeta at real arguments.  Used to confirm the r2 -> 0 limit numerically.
inline PrecisionReal boundary_an0_probe(const ConvolutionParams& p, const Split& s, int eps_bits, mpfr_prec_t prec) {
  validate_split(p, s);
  if (p.r2 != 0) throw domain_error("boundary_an0_probe: r2 must be 0");
  if (p.n <= 0) throw domain_error("boundary_an0_probe: n must be positive");
  const mpfr_prec_t wp = prec + 3 * eps_bits + 64;
  Rational eps(1);
  eps /= Rational(ipow(2, static_cast<unsigned long>(eps_bits)));
  const long d = p.d, r1 = p.r1;
  const Rational k = Rational(2 * d + r1 + 2) + eps;
  PrecisionReal pi = const_pi(wp);
  // (-1)^{k1} 2^k pi^{k/2-1} cos(pi m2) / Gamma(k-1) n^d sigma_{r1}(n)
  PrecisionReal pref = detail::pow_rational(PrecisionReal(2L, wp), k) * detail::pow_rational(pi, k / 2 - 1) *
                       cos(pi * Rational(eps / 2)) / gamma_exact(k - 1, wp) *
                       Rational(sign_pow(s.k1) * ipow(Integer(p.n), d) * sigma(r1, p.n));
  PrecisionReal npow = detail::pow_rational(PrecisionReal(p.n, wp), eps);
  PrecisionReal t1 = npow * zeta_exact(eps, wp) * gamma_exact(eps, wp) * gamma_exact(Rational(d + 1), wp) *
                     gamma_exact(Rational(d + r1 + 1), wp);
  PrecisionReal t2 = zeta_exact(-eps, wp) * gamma_exact(-eps, wp) * gamma_exact(Rational(d + 1) + eps, wp) *
                     gamma_exact(Rational(r1 + d + 1) + eps, wp);
  return pref * (t1 + t2);
}

// a_{n,0} from its defining integral
// (-1)^{k1} (4 pi n)^{k-1} / (k-2)! sigma_{r1}(n) n^{-m1-1/2}
//   * int_0^inf W_{k1,m1}(4 pi n y) c_{k2,m2+1/2}(y) e^{-2 pi n y} y^{k/2-2} dy.
inline PrecisionReal boundary_an0_integral(const ConvolutionParams& p, const Split& s, mpfr_prec_t prec) {
  validate_split(p, s);
  if (p.n <= 0) throw domain_error("boundary_an0_integral: n must be positive");
  const mpfr_prec_t wp = prec + 32;
  const long k = p.k();
  const WhittakerParams w{Rational(s.k1), Rational(s.m1)};
  const EisensteinParams e{s.k2, Rational(s.m2) + Rational(1, 2)};
  PrecisionReal fourpin = const_pi(wp) * Rational(4 * p.n);
  const Real c4(fourpin.mid(), wp);
  auto f = [&](const Real& y, const Real&) {
    if (detail::outside_window(y, prec)) return Real(0L, wp);
    PrecisionReal yy(y, 0);
    PrecisionReal arg = yy * fourpin;
    PrecisionReal S = detail::whittaker_w_scaled(w, arg, wp);
    PrecisionReal c = constant_term(e, yy, wp);
    Real r(wp), l(wp);
    // e^{-4 pi n y} y^{k/2-2} times the scaled W and the constant term.
    mpfr_log(l.get(), y.get(), MPFR_RNDN);
    mpfr_mul_si(l.get(), l.get(), k / 2 - 2, MPFR_RNDN);
    Real t(wp);
    mpfr_mul(t.get(), c4.get(), y.get(), MPFR_RNDN);
    mpfr_sub(l.get(), l.get(), t.get(), MPFR_RNDN);
    mpfr_exp(r.get(), l.get(), MPFR_RNDN);
    mpfr_mul(r.get(), r.get(), S.mid().get(), MPFR_RNDN);
    mpfr_mul(r.get(), r.get(), c.mid().get(), MPFR_RNDN);
    return r;
  };
  quad::Options o;
  o.prec = wp;
  o.tol = 0;
  o.rel_tol = std::ldexp(1.0L, -static_cast<int>(prec) / 2 - 16);
  o.max_level = 9;
  quad::Result q = quad::exp_sinh(f, Real(0L, wp), o);
  PrecisionReal pref = pow(fourpin, k - 1) / Rational(factorial(k - 2)) * Rational(sign_pow(s.k1) * sigma(p.r1, p.n)) /
                       detail::pow_rational(PrecisionReal(p.n, wp), Rational(s.m1) + Rational(1, 2));
  return pref * q.ball();
}

}  // namespace divisum
