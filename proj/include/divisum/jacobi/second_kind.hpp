#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "divisum/jacobi/loglinear.hpp"
#include "divisum/jacobi/poly.hpp"

namespace divisum {

// Closed form Q_d^{(alpha,beta)}(x) = P(x) log|(x+1)/(x-1)| + R(x) / ((x-1)^alpha (x+1)^beta)
// with P = P_d^{(alpha,beta)} / 2 (alpha even).
struct QSecondKind {
  long d = 0;
  long alpha = 0;
  long beta = 0;
  PolyRational P;
  PolyRational R;

  long decay_order() const { return d + alpha + beta + 1; }
};

namespace detail {
inline void check_q_params(long d, long alpha, long beta) {
  if (d < 0) throw domain_error("Jacobi function: d must be >= 0");
  if (alpha < 0 || beta < 0) throw domain_error("Jacobi function: alpha and beta must be >= 0");
  if (alpha % 2 != 0 || beta % 2 != 0) throw domain_error("Jacobi function: alpha and beta must be even");
}

// Power series coefficients of log((1+y)/(1-y)) = 2 sum_{m odd} y^m / m, up to y^order.
inline std::vector<Rational> log_ratio_series(long order) {
  std::vector<Rational> s(order + 1, Rational(0));
  for (long m = 1; m <= order; m += 2) s[m] = Rational(2, m);
  return s;
}
}  // namespace detail

// Builds (P, R).  With G(x) = P(x) (x-1)^alpha (x+1)^beta, the product G(x) log((x+1)/(x-1))
// expands at infinity as a polynomial plus O(1/x); R is minus that polynomial part.
inline QSecondKind q_construct(long d, long alpha, long beta) {
  detail::check_q_params(d, alpha, beta);
  static std::mutex mu;
  static std::map<std::tuple<long, long, long>, QSecondKind> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({d, alpha, beta});
    if (it != cache.end()) return it->second;
  }
  QSecondKind q;
  q.d = d;
  q.alpha = alpha;
  q.beta = beta;
  q.P = jacobi_polynomial(d, alpha, beta) * Rational(1, 2);
  PolyRational W = PolyRational::linear(-1, 1).pow(static_cast<unsigned>(alpha)) *
                   PolyRational::linear(1, 1).pow(static_cast<unsigned>(beta));
  PolyRational G = q.P * W;
  const long degG = G.degree();
  std::vector<Rational> r(std::max<long>(degG, 1), Rational(0));
  for (long j = 0; j < degG; ++j) {
    Rational s = 0;
    for (long m = 1; j + m <= degG; m += 2) s += Rational(2, m) * G.coeff(j + m);
    r[j] = -s;
  }
  q.R = PolyRational(std::move(r));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_tuple(d, alpha, beta), q);
  return q;
}

// C = 2^{d+alpha+beta} (d+alpha)! (d+beta)! / (2d+alpha+beta+1)!, the constant in Q(x) ~ C x^{-(d+alpha+beta+1)}.
inline Rational q_asymptotic_constant(long d, long alpha, long beta) {
  detail::check_q_params(d, alpha, beta);
  Rational c(ipow(2, static_cast<unsigned long>(d + alpha + beta)) * factorial(d + alpha) * factorial(d + beta),
             factorial(2 * d + alpha + beta + 1));
  c.canonicalize();
  return c;
}

// Coefficients of the expansion of Q at infinity: entry j + d holds the coefficient of x^{-j},
// for j = -d .. order.
inline std::vector<Rational> q_laurent_at_infinity(const QSecondKind& q, long order) {
  const long off = q.d;
  const long len = order + off + 1;
  std::vector<Rational> out(len, Rational(0));
  // P(x) log: sum_i p_i y^{-i} * 2 sum_{m odd} y^m/m
  for (long i = 0; i <= q.P.degree(); ++i)
    for (long m = 1; m - i <= order; m += 2)
      if (m - i + off >= 0) out[m - i + off] += q.P.coeff(i) * Rational(2, m);
  // R(x) x^{-alpha-beta} (1-y)^{-alpha} (1+y)^{-beta}
  const long ab = q.alpha + q.beta;
  std::vector<Rational> series(len + ab + 1, Rational(0));
  for (std::size_t k = 0; k < series.size(); ++k) {
    Rational s = 0;
    for (std::size_t i = 0; i <= k; ++i) {
      Rational a = q.alpha == 0 ? Rational(i == 0 ? 1 : 0) : Rational(binomial(q.alpha + i - 1, i));
      long j = static_cast<long>(k - i);
      Rational b = q.beta == 0 ? Rational(j == 0 ? 1 : 0) : Rational(binomial(q.beta + j - 1, j));
      if (j % 2) b = -b;
      s += a * b;
    }
    series[k] = s;
  }
  for (long i = 0; i <= q.R.degree(); ++i) {
    long e0 = ab - i;
    for (std::size_t k = 0; k < series.size(); ++k) {
      long e = e0 + static_cast<long>(k);
      if (e > order) break;
      if (e + off >= 0) out[e + off] += q.R.coeff(i) * series[k];
    }
  }
  for (auto& x : out) x.canonicalize();
  return out;
}

// Exact value at x = (n2 - n1)/(n1 + n2); log|(x+1)/(x-1)| becomes log|n2/n1|.
inline LogLinearValue q_eval_exact(const QSecondKind& q, const Integer& n1, const Integer& n2) {
  if (n1 == 0 || n2 == 0) throw domain_error("q_eval_exact: n1 and n2 must be nonzero");
  const Integer n = n1 + n2;
  if (n == 0) throw singular_argument_error("q_eval_exact: n1 + n2 = 0 puts the argument at infinity");
  Rational x(n2 - n1, n);
  x.canonicalize();
  Rational w = rpow(Rational(x - 1), q.alpha) * rpow(Rational(x + 1), q.beta);
  Rational a = q.R(x) / w;
  Rational b = q.P(x);
  Rational u(abs(Rational(n2)) / abs(Rational(n1)));
  return {a, b, u};
}

inline LogLinearValue q_eval_exact(const QSecondKind& q, long n1, long n2) {
  return q_eval_exact(q, Integer(n1), Integer(n2));
}

// Numerical value at real x off {-1, 1}; guard bits absorb the cancellation for large |x|.
inline PrecisionReal q_eval_real(const QSecondKind& q, const PrecisionReal& x, mpfr_prec_t prec) {
  PrecisionReal xm1 = x - Rational(1);
  PrecisionReal xp1 = x + Rational(1);
  if (xm1.contains_zero() || xp1.contains_zero()) throw singular_argument_error("q_eval_real: x = +-1 is singular");
  long lg = static_cast<long>(std::max(0.0L, std::log2(x.abs_up() + 2)));
  mpfr_prec_t wp = prec + (2 * q.d + q.alpha + q.beta + 1) * lg + 32;
  PrecisionReal xw(Real(x.mid(), wp), x.rad());
  PrecisionReal a = xw - Rational(1), b = xw + Rational(1);
  PrecisionReal ratio = abs(b / a);
  PrecisionReal val = q.P(xw) * log(ratio) + q.R(xw) / (pow(a, q.alpha) * pow(b, q.beta));
  PrecisionReal out(Real(val.mid(), prec), val.rad());
  out.add_error(std::ldexp(out.mid().abs_up(), 1 - static_cast<int>(prec)));
  return out;
}

inline PrecisionReal q_eval_real(const QSecondKind& q, const Rational& x, mpfr_prec_t prec) {
  if (x == 1 || x == -1) throw singular_argument_error("q_eval_real: x = +-1 is singular");
  long lg = static_cast<long>(std::max(0.0, std::log2(std::fabs(x.get_d()) + 2)));
  mpfr_prec_t wp = prec + (2 * q.d + q.alpha + q.beta + 1) * lg + 32;
  return q_eval_real(q, PrecisionReal(x, wp), prec);
}

}  // namespace divisum
