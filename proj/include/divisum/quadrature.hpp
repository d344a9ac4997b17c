#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "divisum/arith/constants.hpp"

namespace divisum::quad {

struct Result {
  Real value;
  long double error = 0;  // estimated absolute error (level-to-level difference)
  int levels = 0;
  bool converged = false;

  PrecisionReal ball() const {
    long double r = detail::up(error + std::ldexp(value.abs_up(), 2 - static_cast<int>(value.prec())));
    return {value, r};
  }
};

namespace detail {

struct TSNode {
  Real s_lo;  // (x - a)/(b - a)
  Real s_hi;  // (b - x)/(b - a)
  Real w;     // dx/dt / (b - a)
};

struct ESNode {
  Real t;
  Real e;  // x - a = exp(pi/2 sinh t)
  Real w;  // dx/dt
};

inline long double tmax_for(mpfr_prec_t prec, double factor) {
  double umax = factor * (static_cast<double>(prec) + 32.0) * std::log(2.0);
  return std::asinh(2.0 * umax / M_PI);
}

// Nodes for one refinement level: level 0 has step 1, level L > 0 the odd multiples of 2^-L.
inline std::vector<TSNode> make_ts_level(int level, mpfr_prec_t prec) {
  const long double tmax = tmax_for(prec, 1.0);
  const mpfr_prec_t wp = prec + 16;
  Real pi(wp);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  std::vector<TSNode> out;
  const long step = level == 0 ? 1 : 2;
  const long start = level == 0 ? 0 : 1;
  const long double h = std::ldexp(1.0L, -level);
  for (long k = start;; k += step) {
    long double tl = h * static_cast<long double>(k);
    if (tl > tmax) break;
    for (int sgn : {1, -1}) {
      if (k == 0 && sgn < 0) continue;
      Real t(wp), u(wp), ch(wp), e2(wp), tmp(wp);
      mpfr_set_si(t.get(), sgn * k, MPFR_RNDN);
      mpfr_mul_2si(t.get(), t.get(), -level, MPFR_RNDN);
      mpfr_sinh(u.get(), t.get(), MPFR_RNDN);
      mpfr_mul(u.get(), u.get(), pi.get(), MPFR_RNDN);
      mpfr_div_2ui(u.get(), u.get(), 1, MPFR_RNDN);  // u = pi/2 sinh t
      TSNode n{Real(prec), Real(prec), Real(prec)};
      // s_lo = 1/(1+e^{-2u}), s_hi = 1/(1+e^{2u})
      mpfr_mul_2ui(e2.get(), u.get(), 1, MPFR_RNDN);
      mpfr_neg(tmp.get(), e2.get(), MPFR_RNDN);
      mpfr_exp(tmp.get(), tmp.get(), MPFR_RNDN);
      mpfr_add_ui(tmp.get(), tmp.get(), 1, MPFR_RNDN);
      mpfr_ui_div(n.s_lo.get(), 1, tmp.get(), MPFR_RNDN);
      mpfr_exp(tmp.get(), e2.get(), MPFR_RNDN);
      mpfr_add_ui(tmp.get(), tmp.get(), 1, MPFR_RNDN);
      mpfr_ui_div(n.s_hi.get(), 1, tmp.get(), MPFR_RNDN);
      // w = (pi/4) cosh t / cosh^2 u
      mpfr_cosh(ch.get(), t.get(), MPFR_RNDN);
      mpfr_cosh(tmp.get(), u.get(), MPFR_RNDN);
      mpfr_sqr(tmp.get(), tmp.get(), MPFR_RNDN);
      mpfr_div(ch.get(), ch.get(), tmp.get(), MPFR_RNDN);
      mpfr_mul(ch.get(), ch.get(), pi.get(), MPFR_RNDN);
      mpfr_div_2ui(n.w.get(), ch.get(), 2, MPFR_RNDN);
      if (mpfr_zero_p(n.w.get())) continue;
      out.push_back(std::move(n));
    }
  }
  return out;
}

inline std::vector<ESNode> make_es_level(int level, mpfr_prec_t prec) {
  const long double tmax = tmax_for(prec, 8.0);
  const mpfr_prec_t wp = prec + 16;
  Real pi(wp);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  std::vector<ESNode> out;
  const long step = level == 0 ? 1 : 2;
  const long start = level == 0 ? 0 : 1;
  const long double h = std::ldexp(1.0L, -level);
  // Order: increasing |t|, positive side first, so callers can stop early.
  for (long k = start;; k += step) {
    long double tl = h * static_cast<long double>(k);
    if (tl > tmax) break;
    for (int sgn : {1, -1}) {
      if (k == 0 && sgn < 0) continue;
      Real t(wp), u(wp), tmp(wp);
      mpfr_set_si(t.get(), sgn * k, MPFR_RNDN);
      mpfr_mul_2si(t.get(), t.get(), -level, MPFR_RNDN);
      mpfr_sinh(u.get(), t.get(), MPFR_RNDN);
      mpfr_mul(u.get(), u.get(), pi.get(), MPFR_RNDN);
      mpfr_div_2ui(u.get(), u.get(), 1, MPFR_RNDN);
      ESNode n{Real(t, prec), Real(prec), Real(prec)};
      mpfr_exp(n.e.get(), u.get(), MPFR_RNDN);
      mpfr_cosh(tmp.get(), t.get(), MPFR_RNDN);
      mpfr_mul(tmp.get(), tmp.get(), pi.get(), MPFR_RNDN);
      mpfr_div_2ui(tmp.get(), tmp.get(), 1, MPFR_RNDN);
      mpfr_mul(n.w.get(), tmp.get(), n.e.get(), MPFR_RNDN);
      if (!mpfr_number_p(n.e.get()) || mpfr_zero_p(n.e.get())) continue;
      out.push_back(std::move(n));
    }
  }
  return out;
}

template <class Node>
class NodeCache {
 public:
  using Maker = std::vector<Node> (*)(int, mpfr_prec_t);
  explicit NodeCache(Maker m) : maker_(m) {}
  const std::vector<Node>& get(int level, mpfr_prec_t prec) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(level, prec);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, std::make_shared<std::vector<Node>>(maker_(level, prec))).first;
    return *it->second;
  }

 private:
  Maker maker_;
  std::mutex mu_;
  std::map<std::pair<int, mpfr_prec_t>, std::shared_ptr<std::vector<Node>>> cache_;
};

inline NodeCache<TSNode>& ts_cache() {
  static NodeCache<TSNode> c(&make_ts_level);
  return c;
}
inline NodeCache<ESNode>& es_cache() {
  static NodeCache<ESNode> c(&make_es_level);
  return c;
}

}  // namespace detail

struct Options {
  mpfr_prec_t prec = 128;
  long double tol = 1e-30L;  // absolute tolerance on the level-to-level change
  long double rel_tol = 0;   // alternatively, tolerance relative to the estimate
  int min_level = 3;
  int max_level = 10;
};

// Tanh-sinh quadrature on [a, b].  The integrand receives (x, x - a, b - x),
// the last two computed without cancellation so endpoint singularities are safe.
template <class F>
Result tanh_sinh(F&& f, const Real& a, const Real& b, const Options& opt) {
  const mpfr_prec_t p = opt.prec;
  Real len(p), x(p), xa(p), bx(p), fx(p), term(p);
  mpfr_sub(len.get(), b.get(), a.get(), MPFR_RNDN);
  Real sum(p), prev(p);
  Result res{Real(p)};
  for (int level = 0; level <= opt.max_level; ++level) {
    const auto& nodes = detail::ts_cache().get(level, p);
    Real part(p);
    for (const auto& n : nodes) {
      mpfr_mul(xa.get(), len.get(), n.s_lo.get(), MPFR_RNDN);
      mpfr_mul(bx.get(), len.get(), n.s_hi.get(), MPFR_RNDN);
      if (mpfr_cmp(n.s_lo.get(), n.s_hi.get()) <= 0)
        mpfr_add(x.get(), a.get(), xa.get(), MPFR_RNDN);
      else
        mpfr_sub(x.get(), b.get(), bx.get(), MPFR_RNDN);
      if (mpfr_zero_p(xa.get()) || mpfr_zero_p(bx.get())) continue;
      fx = f(static_cast<const Real&>(x), static_cast<const Real&>(xa), static_cast<const Real&>(bx));
      mpfr_mul(term.get(), fx.get(), n.w.get(), MPFR_RNDN);
      mpfr_add(part.get(), part.get(), term.get(), MPFR_RNDN);
    }
    mpfr_add(sum.get(), sum.get(), part.get(), MPFR_RNDN);
    Real est(p);
    mpfr_mul(est.get(), sum.get(), len.get(), MPFR_RNDN);
    mpfr_mul_2si(est.get(), est.get(), -level, MPFR_RNDN);
    if (level > 0) {
      Real diff(p);
      mpfr_sub(diff.get(), est.get(), prev.get(), MPFR_RNDN);
      res.error = diff.abs_up();
      res.levels = level;
      if (level >= opt.min_level && (res.error <= opt.tol || res.error <= opt.rel_tol * est.abs_down())) {
        res.value = est;
        res.converged = true;
        return res;
      }
    }
    prev = est;
  }
  res.value = prev;
  return res;
}

// Exp-sinh quadrature on [a, inf).  The integrand receives (x, x - a).
template <class F>
Result exp_sinh(F&& f, const Real& a, const Options& opt) {
  const mpfr_prec_t p = opt.prec;
  Real x(p), fx(p), term(p), sum(p), prev(p);
  Result res{Real(p)};
  const long double negligible = std::ldexp(1.0L, -static_cast<int>(p) - 40);
  for (int level = 0; level <= opt.max_level; ++level) {
    const auto& nodes = detail::es_cache().get(level, p);
    Real part(p);
    int quiet_pos = 0, quiet_neg = 0;
    bool stop_pos = false, stop_neg = false;
    long double scale = std::max(sum.abs_up(), std::numeric_limits<long double>::denorm_min());
    for (const auto& n : nodes) {
      const bool pos = n.t.sign() > 0;
      if ((pos && stop_pos) || (!pos && stop_neg)) continue;
      mpfr_add(x.get(), a.get(), n.e.get(), MPFR_RNDN);
      fx = f(static_cast<const Real&>(x), static_cast<const Real&>(n.e));
      mpfr_mul(term.get(), fx.get(), n.w.get(), MPFR_RNDN);
      if (!mpfr_number_p(term.get())) {
        if (pos) stop_pos = true; else stop_neg = true;
        continue;
      }
      mpfr_add(part.get(), part.get(), term.get(), MPFR_RNDN);
      scale = std::max(scale, part.abs_up() * std::ldexp(1.0L, -level));
      const bool small = term.abs_up() < negligible * scale;
      long double tval = std::fabs(n.t.to_ld());
      if (pos) {
        quiet_pos = small ? quiet_pos + 1 : 0;
        if (quiet_pos >= 4 && tval > 2) stop_pos = true;
      } else {
        quiet_neg = small ? quiet_neg + 1 : 0;
        if (quiet_neg >= 4 && tval > 2) stop_neg = true;
      }
    }
    mpfr_add(sum.get(), sum.get(), part.get(), MPFR_RNDN);
    Real est(p);
    mpfr_mul_2si(est.get(), sum.get(), -level, MPFR_RNDN);
    if (level > 0) {
      Real diff(p);
      mpfr_sub(diff.get(), est.get(), prev.get(), MPFR_RNDN);
      res.error = diff.abs_up();
      res.levels = level;
      if (level >= opt.min_level && (res.error <= opt.tol || res.error <= opt.rel_tol * est.abs_down())) {
        res.value = est;
        res.converged = true;
        return res;
      }
    }
    prev = est;
  }
  res.value = prev;
  return res;
}

// Gauss-Legendre nodes and weights on [-1, 1].
struct GLRule {
  std::vector<Real> x;
  std::vector<Real> w;
};

inline const GLRule& gauss_legendre_rule(int n, mpfr_prec_t prec) {
  static std::mutex mu;
  static std::map<std::pair<int, mpfr_prec_t>, std::shared_ptr<GLRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, prec);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  const mpfr_prec_t wp = prec + 32;
  auto rule = std::make_shared<GLRule>();
  Real x(wp), p0(wp), p1(wp), p2(wp), dp(wp), dx(wp), tmp(wp);
  for (int i = 1; i <= n; ++i) {
    mpfr_set_d(x.get(), std::cos(M_PI * (i - 0.25) / (n + 0.5)), MPFR_RNDN);
    for (int iter = 0; iter < 200; ++iter) {
      mpfr_set_ui(p0.get(), 1, MPFR_RNDN);
      mpfr_set(p1.get(), x.get(), MPFR_RNDN);
      for (int k = 2; k <= n; ++k) {
        // k P_k = (2k-1) x P_{k-1} - (k-1) P_{k-2}
        mpfr_mul(p2.get(), x.get(), p1.get(), MPFR_RNDN);
        mpfr_mul_ui(p2.get(), p2.get(), 2 * k - 1, MPFR_RNDN);
        mpfr_mul_ui(tmp.get(), p0.get(), k - 1, MPFR_RNDN);
        mpfr_sub(p2.get(), p2.get(), tmp.get(), MPFR_RNDN);
        mpfr_div_ui(p2.get(), p2.get(), k, MPFR_RNDN);
        mpfr_swap(p0.get(), p1.get());
        mpfr_swap(p1.get(), p2.get());
      }
      if (n == 1) mpfr_set_ui(p0.get(), 1, MPFR_RNDN);
      // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1)
      mpfr_mul(dp.get(), x.get(), p1.get(), MPFR_RNDN);
      mpfr_sub(dp.get(), dp.get(), p0.get(), MPFR_RNDN);
      mpfr_mul_ui(dp.get(), dp.get(), n, MPFR_RNDN);
      mpfr_sqr(tmp.get(), x.get(), MPFR_RNDN);
      mpfr_sub_ui(tmp.get(), tmp.get(), 1, MPFR_RNDN);
      mpfr_div(dp.get(), dp.get(), tmp.get(), MPFR_RNDN);
      mpfr_div(dx.get(), p1.get(), dp.get(), MPFR_RNDN);
      mpfr_sub(x.get(), x.get(), dx.get(), MPFR_RNDN);
      if (mpfr_zero_p(dx.get()) || mpfr_get_exp(dx.get()) < mpfr_get_exp(x.get()) - static_cast<long>(wp) + 4) {
        if (iter > 2) break;
      }
    }
    // w = 2 / ((1 - x^2) P'_n(x)^2)
    Real w(wp);
    mpfr_sqr(tmp.get(), x.get(), MPFR_RNDN);
    mpfr_ui_sub(tmp.get(), 1, tmp.get(), MPFR_RNDN);
    mpfr_sqr(w.get(), dp.get(), MPFR_RNDN);
    mpfr_mul(w.get(), w.get(), tmp.get(), MPFR_RNDN);
    mpfr_ui_div(w.get(), 2, w.get(), MPFR_RNDN);
    rule->x.emplace_back(x, prec);
    rule->w.emplace_back(w, prec);
  }
  cache.emplace(key, rule);
  return *rule;
}

// n-point Gauss-Legendre on [a, b]; f receives x.
template <class F>
Real gauss_legendre(F&& f, const Real& a, const Real& b, int n, mpfr_prec_t prec) {
  const GLRule& rule = gauss_legendre_rule(n, prec);
  Real half(prec), mid(prec), x(prec), sum(prec), term(prec);
  mpfr_sub(half.get(), b.get(), a.get(), MPFR_RNDN);
  mpfr_div_2ui(half.get(), half.get(), 1, MPFR_RNDN);
  mpfr_add(mid.get(), a.get(), b.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  for (int i = 0; i < n; ++i) {
    mpfr_fma(x.get(), half.get(), rule.x[i].get(), mid.get(), MPFR_RNDN);
    Real fx = f(static_cast<const Real&>(x));
    mpfr_mul(term.get(), fx.get(), rule.w[i].get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
  }
  mpfr_mul(sum.get(), sum.get(), half.get(), MPFR_RNDN);
  return sum;
}

}  // namespace divisum::quad
