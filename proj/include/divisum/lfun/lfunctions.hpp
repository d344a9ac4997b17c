#pragma once

#include <cmath>
#include <vector>

#include "divisum/arith/special.hpp"
#include "divisum/modforms/eigenforms.hpp"
#include "divisum/quadrature.hpp"
#include "divisum/sums/params.hpp"

namespace divisum {

struct CompletedLValue {
  long s = 0;
  PrecisionReal value;
};

struct PeterssonNorm {
  PrecisionReal value;
  int nodes = 0;  // Gauss-Legendre nodes of the finer rule
};

namespace detail {

// Deligne: |a_m| <= d(m) m^{(k-1)/2} <= 2 m^{k/2}.
inline long double coeff_bound(long k, long m) { return 2 * std::pow(static_cast<long double>(m), k / 2.0L); }

inline mpfr_prec_t guard(mpfr_prec_t prec, long k) { return prec + 32 + 2 * k; }

}  // namespace detail

// L*(f,s) = (2 pi)^{-s} Gamma(s) L(f,s) by the rapidly convergent symmetric series.
inline CompletedLValue completed_L(const Eigenform& f, long s, mpfr_prec_t prec) {
  const long k = f.weight;
  if (s < 1 || s > k - 1) throw domain_error("completed_L: s must satisfy 1 <= s <= k-1");
  const mpfr_prec_t wp = detail::guard(prec, k);
  const long M = f.length();
  const PrecisionReal twopi = const_pi(wp).mul_2exp(1);
  const int eps = (k / 2) % 2 == 0 ? 1 : -1;
  PrecisionReal sum(0L, wp);
  for (long m = 1; m < M; ++m) {
    PrecisionReal x = twopi * Rational(m);
    PrecisionReal t1 = incomplete_gamma_upper(s, x) * pow(x, -s);
    PrecisionReal t2 = incomplete_gamma_upper(k - s, x) * pow(x, s - k);
    PrecisionReal am(Real(f[m].mid(), wp), f[m].rad());
    sum += am * (eps > 0 ? t1 + t2 : t1 - t2);
  }
  // Omitted m >= M: Gamma(a, x) <= 2 x^{a-1} e^{-x} once x >= 2(a-1).
  long double tail = 0;
  for (long m = M; m < M + 400; ++m) {
    const long double x = 2 * M_PIl * m;
    tail += detail::coeff_bound(k, m) * 4 * std::exp(-x) / x;
  }
  if (2 * M_PIl * M < 2 * (k - 1)) throw precision_error("completed_L: too few coefficients");
  sum.add_error(tail * 2);
  PrecisionReal out(Real(sum.mid(), prec), sum.rad());
  out.add_error(detail::rounding_bound(out.mid(), 1));
  return {s, out};
}

namespace detail {

// Integral over the fundamental domain by exact integration in y and Gauss-Legendre in x.
inline Real petersson_rule(const Eigenform& f, int nodes, mpfr_prec_t wp) {
  const long k = f.weight;
  const long M = f.length();
  const quad::GLRule& rule = quad::gauss_legendre_rule(nodes, wp);
  const PrecisionReal pi = const_pi(wp);
  std::vector<Real> a(M, Real(wp));
  for (long m = 1; m < M; ++m) mpfr_set(a[m].get(), f[m].mid().get(), MPFR_RNDN);
  Real total(wp);
  for (int i = 0; i < nodes; ++i) {
    // x in [0, 1/2]
    Real x(wp);
    mpfr_add_ui(x.get(), rule.x[i].get(), 1, MPFR_RNDN);
    mpfr_mul_2si(x.get(), x.get(), -2, MPFR_RNDN);
    Real y0(wp);
    mpfr_sqr(y0.get(), x.get(), MPFR_RNDN);
    mpfr_ui_sub(y0.get(), 1, y0.get(), MPFR_RNDN);
    mpfr_sqrt(y0.get(), y0.get(), MPFR_RNDN);
    std::vector<Real> G(2 * M, Real(wp));
    for (long sidx = 2; sidx < 2 * M; ++sidx) {
      PrecisionReal c = pi.mul_2exp(1) * Rational(sidx);
      PrecisionReal g = incomplete_gamma_upper(k - 1, c * PrecisionReal(y0, 0)) / pow(c, k - 1);
      G[sidx] = g.mid();
    }
    std::vector<Real> cs(M, Real(wp));
    for (long j = 0; j < M; ++j) {
      Real arg(wp);
      mpfr_mul(arg.get(), pi.mid().get(), x.get(), MPFR_RNDN);
      mpfr_mul_si(arg.get(), arg.get(), 2 * j, MPFR_RNDN);
      mpfr_cos(cs[j].get(), arg.get(), MPFR_RNDN);
    }
    Real inner(wp), t(wp);
    for (long m = 1; m < M; ++m)
      for (long mp = 1; mp < M; ++mp) {
        mpfr_mul(t.get(), a[m].get(), a[mp].get(), MPFR_RNDN);
        mpfr_mul(t.get(), t.get(), G[m + mp].get(), MPFR_RNDN);
        mpfr_mul(t.get(), t.get(), cs[std::labs(m - mp)].get(), MPFR_RNDN);
        mpfr_add(inner.get(), inner.get(), t.get(), MPFR_RNDN);
      }
    mpfr_mul(t.get(), inner.get(), rule.w[i].get(), MPFR_RNDN);
    mpfr_add(total.get(), total.get(), t.get(), MPFR_RNDN);
  }
  // Map [-1,1] -> [0,1/2] (factor 1/4), then double for x in [-1/2, 0].
  mpfr_mul_2si(total.get(), total.get(), -1, MPFR_RNDN);
  return total;
}

}  // namespace detail

// <f,f> = int_{|x|<=1/2, |z|>=1} |f|^2 y^{k-2} dx dy.
inline PeterssonNorm petersson_norm(const Eigenform& f, mpfr_prec_t prec, int nodes = 0) {
  const long k = f.weight;
  const mpfr_prec_t wp = detail::guard(prec, k);
  if (nodes <= 0) nodes = std::max(48, static_cast<int>(prec / 4));
  Real coarse = detail::petersson_rule(f, nodes, wp);
  Real fine = detail::petersson_rule(f, 2 * nodes, wp);
  Real diff(wp);
  mpfr_sub(diff.get(), fine.get(), coarse.get(), MPFR_RNDN);
  PrecisionReal v(Real(fine, prec), 0);
  v.add_error(diff.abs_up());
  v.add_error(detail::rounding_bound(v.mid(), 1) * 4);
  // Coefficients beyond the truncation: |terms| <= |a_m a_m'| Gamma(k-1, c y)/c^{k-1} at y = sqrt(3)/2.
  const long M = f.length();
  long double tail = 0;
  const long double y = std::sqrt(3.0L) / 2;
  for (long m = 1; m < M + 200; ++m)
    for (long mp = std::max(m, M); mp < M + 200; ++mp) {
      const long double c = 2 * M_PIl * (m + mp);
      const long double gam = 2 * std::pow(c * y, static_cast<long double>(k - 2)) * std::exp(-c * y);
      tail += 2 * detail::coeff_bound(k, m) * detail::coeff_bound(k, mp) * gam / std::pow(c, static_cast<long double>(k - 1));
    }
  // the coefficient radii also propagate
  long double crad = 0;
  for (long m = 1; m < M; ++m) crad = std::max(crad, f[m].rad() / std::max(1.0L, f[m].mid().abs_down()));
  v.add_error(tail + 4 * crad * v.abs_up());
  if (!v.is_positive()) throw precision_error("petersson_norm: value not resolved");
  return {v, 2 * nodes};
}

// lambda_f = pi (-1)^{d + r2/2 + 1} 2^{-k} binom(k-2, d) L*(f,d+1) L*(f,r1+d+1) / <f,f>.
inline PrecisionReal lambda_coeff(const ConvolutionParams& p, const Eigenform& f, const PeterssonNorm& norm,
                                  mpfr_prec_t prec) {
  p.validate();
  if (f.weight != p.k()) throw domain_error("lambda_coeff: eigenform weight does not match k");
  const long k = p.k();
  const mpfr_prec_t wp = prec + 32;
  PrecisionReal L1 = completed_L(f, p.d + 1, wp).value;
  PrecisionReal L2 = completed_L(f, p.r1 + p.d + 1, wp).value;
  Rational c = Rational(binomial(k - 2, p.d)) / Rational(ipow(2, static_cast<unsigned long>(k)));
  if (sign_pow(p.d + p.r2 / 2 + 1) < 0) c = -c;
  PrecisionReal nv(Real(norm.value.mid(), wp), norm.value.rad());
  PrecisionReal lam = const_pi(wp) * c * L1 * L2 / nv;
  PrecisionReal out(Real(lam.mid(), prec), lam.rad());
  out.add_error(detail::rounding_bound(out.mid(), 1));
  return out;
}

inline PrecisionReal lambda_coeff(const ConvolutionParams& p, const Eigenform& f, mpfr_prec_t prec) {
  return lambda_coeff(p, f, petersson_norm(f, prec), prec);
}

struct InnerProductCheck {
  PrecisionReal value;      // 2 (-1)^{k2} pi^k L*(f,d+1) L*(f,r2+d+1)
  PrecisionReal alternate;  // 2 (-1)^{k2+m2-m1-d-1} pi^k L*(f,d+1) L*(f,r1+d+1)
  bool consistent = false;
};

// Inner product of f with the product of two weight-2k_i real-analytic Eisenstein
// series whose holomorphic projection feeds the identity; r_i = 2 m_i.
inline InnerProductCheck inner_product_eisenstein_product(const Eigenform& f, long k1, long k2, long m1, long m2,
                                                          mpfr_prec_t prec) {
  const long k = 2 * k1 + 2 * k2;
  if (k1 < m1 || k2 < m2 || m1 < 0 || m2 < 0) throw domain_error("inner product: need k_i >= m_i >= 0");
  if (f.weight != k) throw domain_error("inner product: weight mismatch");
  const long r1 = 2 * m1, r2 = 2 * m2;
  const long d = (k - r1 - r2 - 2) / 2;
  if (d < 1) throw domain_error("inner product: requires d >= 1");
  const mpfr_prec_t wp = prec + 32;
  PrecisionReal pik = pow(const_pi(wp), k);
  PrecisionReal Ld = completed_L(f, d + 1, wp).value;
  PrecisionReal a = pik * Ld * completed_L(f, r2 + d + 1, wp).value * Rational(2 * sign_pow(k2));
  PrecisionReal b = pik * Ld * completed_L(f, r1 + d + 1, wp).value * Rational(2 * sign_pow(k2 + m2 - m1 - d - 1));
  InnerProductCheck res{a, b, a.overlaps(b)};
  return res;
}

}  // namespace divisum
