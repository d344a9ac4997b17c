#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "divisum/arith/real.hpp"

namespace divisum {

inline constexpr mpfr_prec_t kDefaultPrecision = 256;

namespace detail {
// Inflation applied after every long double radius operation; each such
// operation commits at most one rounding of relative size 2^-64.
inline long double up(long double x) { return x * (1.0L + 0x1p-60L) + LDBL_TRUE_MIN; }
inline long double rounding_bound(const Real& r, int ternary) {
  if (ternary == 0) return 0.0L;
  return std::ldexp(r.abs_up(), 1 - static_cast<int>(r.prec()));
}
}  // namespace detail

// Midpoint-radius real: the true value lies in [mid - rad, mid + rad].
class PrecisionReal {
 public:
  explicit PrecisionReal(mpfr_prec_t prec = kDefaultPrecision) : mid_(prec), rad_(0) {}
  PrecisionReal(Real mid, long double rad) : mid_(std::move(mid)), rad_(rad) {}
  PrecisionReal(long x, mpfr_prec_t prec) : mid_(prec), rad_(0) {
    rad_ = detail::rounding_bound(mid_, mid_.set(x));
  }
  PrecisionReal(const Integer& z, mpfr_prec_t prec) : mid_(prec), rad_(0) {
    rad_ = detail::rounding_bound(mid_, mid_.set(z));
  }
  PrecisionReal(const Rational& q, mpfr_prec_t prec) : mid_(prec), rad_(0) {
    rad_ = detail::rounding_bound(mid_, mid_.set(q));
  }

  const Real& mid() const { return mid_; }
  Real& mid() { return mid_; }
  long double rad() const { return rad_; }
  void set_rad(long double r) { rad_ = r; }
  void add_error(long double e) { rad_ = detail::up(rad_ + std::fabs(e)); }
  mpfr_prec_t prec() const { return mid_.prec(); }
  int sign() const { return mid_.sign(); }
  double to_double() const { return mid_.to_double(); }

  long double abs_up() const { return detail::up(mid_.abs_up() + rad_); }
  long double abs_down() const {
    long double a = mid_.abs_down() - rad_;
    return a > 0 ? a * (1.0L - 0x1p-60L) : 0.0L;
  }
  bool is_positive() const { return mid_.sign() > 0 && mid_.abs_down() > rad_; }
  bool is_negative() const { return mid_.sign() < 0 && mid_.abs_down() > rad_; }
  bool contains_zero() const { return !is_positive() && !is_negative(); }
  bool is_finite() const { return mid_.is_finite() && std::isfinite(rad_); }

  // Exact containment test for a rational number.
  bool contains(const Rational& q) const {
    Rational m = mid_.to_rational();
    Rational diff = abs(Rational(m - q));
    Real r(64);
    mpfr_set_ld(r.get(), rad_, MPFR_RNDU);
    return diff <= r.to_rational();
  }
  // True if the two enclosures intersect.
  bool overlaps(const PrecisionReal& o) const {
    mpfr_prec_t p = std::max(prec(), o.prec()) + 8;
    Real d(p);
    mpfr_sub(d.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
    return d.abs_down() <= detail::up(rad_ + o.rad_) + detail::rounding_bound(d, 1);
  }

  std::string str(int digits = 0) const { return mid_.str(digits); }
  std::string rad_str() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3Le", rad_);
    return buf;
  }

  PrecisionReal operator-() const {
    Real m(mid_);
    mpfr_neg(m.get(), m.get(), MPFR_RNDN);
    return {std::move(m), rad_};
  }

  friend PrecisionReal operator+(const PrecisionReal& a, const PrecisionReal& b) {
    Real m(std::max(a.prec(), b.prec()));
    int t = mpfr_add(m.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    long double r = detail::up(a.rad_ + b.rad_ + detail::rounding_bound(m, t));
    return {std::move(m), r};
  }
  friend PrecisionReal operator-(const PrecisionReal& a, const PrecisionReal& b) {
    Real m(std::max(a.prec(), b.prec()));
    int t = mpfr_sub(m.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    long double r = detail::up(a.rad_ + b.rad_ + detail::rounding_bound(m, t));
    return {std::move(m), r};
  }
  friend PrecisionReal operator*(const PrecisionReal& a, const PrecisionReal& b) {
    Real m(std::max(a.prec(), b.prec()));
    int t = mpfr_mul(m.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    long double r = detail::up(a.mid_.abs_up() * b.rad_ + b.mid_.abs_up() * a.rad_ + a.rad_ * b.rad_);
    r = detail::up(r + detail::rounding_bound(m, t));
    return {std::move(m), r};
  }
  friend PrecisionReal operator/(const PrecisionReal& a, const PrecisionReal& b) {
    long double bl = b.mid_.abs_down();
    if (!(bl > b.rad_)) throw domain_error("PrecisionReal: division by an enclosure containing zero");
    Real m(std::max(a.prec(), b.prec()));
    int t = mpfr_div(m.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
    long double num = detail::up(a.mid_.abs_up() * b.rad_ + b.mid_.abs_up() * a.rad_);
    long double den = bl * (bl - b.rad_) * (1.0L - 0x1p-60L);
    long double r = detail::up(num / den);
    r = detail::up(r + detail::rounding_bound(m, t));
    return {std::move(m), r};
  }

  PrecisionReal& operator+=(const PrecisionReal& o) { return *this = *this + o; }
  PrecisionReal& operator-=(const PrecisionReal& o) { return *this = *this - o; }
  PrecisionReal& operator*=(const PrecisionReal& o) { return *this = *this * o; }
  PrecisionReal& operator/=(const PrecisionReal& o) { return *this = *this / o; }

  friend PrecisionReal operator+(const PrecisionReal& a, const Rational& q) { return a + PrecisionReal(q, a.prec()); }
  friend PrecisionReal operator-(const PrecisionReal& a, const Rational& q) { return a - PrecisionReal(q, a.prec()); }
  friend PrecisionReal operator*(const PrecisionReal& a, const Rational& q) { return a * PrecisionReal(q, a.prec()); }
  friend PrecisionReal operator/(const PrecisionReal& a, const Rational& q) { return a / PrecisionReal(q, a.prec()); }
  friend PrecisionReal operator+(const Rational& q, const PrecisionReal& a) { return PrecisionReal(q, a.prec()) + a; }
  friend PrecisionReal operator-(const Rational& q, const PrecisionReal& a) { return PrecisionReal(q, a.prec()) - a; }
  friend PrecisionReal operator*(const Rational& q, const PrecisionReal& a) { return PrecisionReal(q, a.prec()) * a; }
  friend PrecisionReal operator/(const Rational& q, const PrecisionReal& a) { return PrecisionReal(q, a.prec()) / a; }

  // Multiplication by 2^e is exact.
  PrecisionReal mul_2exp(long e) const {
    Real m(mid_);
    mpfr_mul_2si(m.get(), m.get(), e, MPFR_RNDN);
    return {std::move(m), std::ldexp(rad_, static_cast<int>(e))};
  }

  friend std::ostream& operator<<(std::ostream& os, const PrecisionReal& x) {
    return os << x.str(25) << " +/- " << x.rad_str();
  }

 private:
  Real mid_;
  long double rad_;
};

inline PrecisionReal abs(const PrecisionReal& x) { return x.sign() < 0 ? -x : x; }

inline PrecisionReal sqrt(const PrecisionReal& x) {
  if (x.mid().sign() < 0 || x.mid().abs_down() < x.rad()) {
    if (x.mid().sign() >= 0 && x.rad() == 0) return x;
    throw domain_error("sqrt of an enclosure reaching below zero");
  }
  Real m(x.prec());
  int t = mpfr_sqrt(m.get(), x.mid().get(), MPFR_RNDN);
  long double r = 0;
  if (x.rad() > 0) r = detail::up(x.rad() / std::sqrt(x.mid().abs_down() * (1.0L - 0x1p-60L)));
  r = detail::up(r + detail::rounding_bound(m, t));
  return {std::move(m), r};
}

inline PrecisionReal exp(const PrecisionReal& x) {
  Real m(x.prec());
  int t = mpfr_exp(m.get(), x.mid().get(), MPFR_RNDN);
  long double r = detail::up(m.abs_up() * detail::up(std::expm1(x.rad())));
  r = detail::up(r + detail::rounding_bound(m, t));
  return {std::move(m), r};
}

inline PrecisionReal log(const PrecisionReal& x) {
  if (!x.is_positive()) throw domain_error("log of an enclosure not strictly positive");
  Real m(x.prec());
  int t = mpfr_log(m.get(), x.mid().get(), MPFR_RNDN);
  long double r = 0;
  if (x.rad() > 0) r = detail::up(-std::log1p(-(x.rad() / x.mid().abs_down())));
  r = detail::up(r + detail::rounding_bound(m, t));
  return {std::move(m), r};
}

inline PrecisionReal sin(const PrecisionReal& x) {
  Real m(x.prec());
  int t = mpfr_sin(m.get(), x.mid().get(), MPFR_RNDN);
  long double r = detail::up(x.rad() + detail::rounding_bound(m, t));
  return {std::move(m), r};
}

inline PrecisionReal cos(const PrecisionReal& x) {
  Real m(x.prec());
  int t = mpfr_cos(m.get(), x.mid().get(), MPFR_RNDN);
  long double r = detail::up(x.rad() + detail::rounding_bound(m, t));
  return {std::move(m), r};
}

// Integer power by repeated squaring; errors propagate through the products.
inline PrecisionReal pow(const PrecisionReal& x, long e) {
  if (e < 0) return PrecisionReal(1, x.prec()) / pow(x, -e);
  PrecisionReal result(1, x.prec());
  PrecisionReal base = x;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

// Real power for a positive base.
inline PrecisionReal pow(const PrecisionReal& x, const PrecisionReal& y) { return exp(y * log(x)); }

inline PrecisionReal hull(const PrecisionReal& a, const PrecisionReal& b) {
  PrecisionReal d = a - b;
  PrecisionReal m = a;
  m.set_rad(detail::up(std::max(a.rad(), d.abs_up() + b.rad())));
  return m;
}

// Enclosure with midpoint given by a decimal string and an explicit radius.
inline PrecisionReal precision_real_from_string(const std::string& s, long double rad, mpfr_prec_t prec) {
  Real m = real_from_string(s, prec);
  long double r = detail::up(rad + std::ldexp(m.abs_up(), 1 - static_cast<int>(prec)));
  return {std::move(m), r};
}

}  // namespace divisum
