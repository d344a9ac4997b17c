#pragma once

#include <map>
#include <string>

#include "divisum/arith/constants.hpp"

namespace divisum {

namespace detail {
// Factorization of a positive integer by trial division.
inline std::map<Integer, long> factor_integer(Integer m) {
  std::map<Integer, long> f;
  if (m < 0) m = -m;
  if (m == 0) throw domain_error("cannot factor zero");
  for (Integer p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      ++f[p];
      m /= p;
    }
  }
  if (m > 1) ++f[m];
  return f;
}
}  // namespace detail

// Exact value a + sum_p c_p log p.  Logarithms of distinct primes are linearly
// independent over Q, so equality of these objects is decidable.
class LogCombination {
 public:
  Rational rational_part = 0;
  std::map<Integer, Rational> log_coeffs;  // prime -> coefficient

  void add_log(const Rational& coeff, const Rational& u) {
    if (u <= 0) throw domain_error("logarithm of a nonpositive rational");
    if (coeff == 0) return;
    for (auto& [p, e] : detail::factor_integer(u.get_num())) add_prime(p, coeff * e);
    for (auto& [p, e] : detail::factor_integer(u.get_den())) add_prime(p, -coeff * e);
  }
  LogCombination& operator+=(const LogCombination& o) {
    rational_part += o.rational_part;
    for (auto& [p, c] : o.log_coeffs) add_prime(p, c);
    return *this;
  }
  LogCombination scaled(const Rational& s) const {
    LogCombination r;
    r.rational_part = rational_part * s;
    if (s != 0)
      for (auto& [p, c] : log_coeffs) r.log_coeffs[p] = c * s;
    return r;
  }
  bool is_zero() const { return rational_part == 0 && log_coeffs.empty(); }
  friend bool operator==(const LogCombination& a, const LogCombination& b) {
    LogCombination d = a;
    d += b.scaled(-1);
    return d.is_zero();
  }

 private:
  void add_prime(const Integer& p, const Rational& c) {
    Rational& slot = log_coeffs[p];
    slot += c;
    slot.canonicalize();
    if (slot == 0) log_coeffs.erase(p);
  }
};

// Exact value a + b log u with a, b rational and u a positive rational.
class LogLinearValue {
 public:
  LogLinearValue() : a_(0), b_(0), u_(1) {}
  LogLinearValue(Rational a, Rational b, Rational u) : a_(std::move(a)), b_(std::move(b)), u_(std::move(u)) {
    if (u_ <= 0) throw domain_error("LogLinearValue: u must be positive");
    a_.canonicalize();
    b_.canonicalize();
    u_.canonicalize();
    if (u_ == 1) b_ = 0;
    if (b_ == 0) u_ = 1;
  }
  static LogLinearValue rational(const Rational& a) { return {a, 0, 1}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& u() const { return u_; }

  LogCombination combination() const {
    LogCombination c;
    c.rational_part = a_;
    c.add_log(b_, u_);
    return c;
  }
  friend bool operator==(const LogLinearValue& x, const LogLinearValue& y) { return x.combination() == y.combination(); }

  LogLinearValue scaled(const Rational& s) const { return {a_ * s, b_ * s, u_}; }

  PrecisionReal value(mpfr_prec_t prec) const {
    PrecisionReal r(a_, prec);
    if (b_ != 0) r += log(PrecisionReal(u_, prec)) * b_;
    return r;
  }

  std::string str() const {
    if (b_ == 0) return a_.get_str();
    return a_.get_str() + " + (" + b_.get_str() + ")*log(" + u_.get_str() + ")";
  }

 private:
  Rational a_, b_, u_;
};

}  // namespace divisum
