#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "divisum/arith/precision_real.hpp"

namespace divisum {

// Dense polynomial with rational coefficients; c[j] is the coefficient of x^j.
class PolyRational {
 public:
  PolyRational() = default;
  explicit PolyRational(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  static PolyRational constant(const Rational& a) { return PolyRational(std::vector<Rational>{a}); }
  static PolyRational monomial(const Rational& a, std::size_t j) {
    std::vector<Rational> c(j + 1, Rational(0));
    c[j] = a;
    return PolyRational(std::move(c));
  }
  // a + b x
  static PolyRational linear(const Rational& a, const Rational& b) { return PolyRational({a, b}); }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // Degree, with -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Rational coeff(long j) const { return (j >= 0 && j < static_cast<long>(c_.size())) ? c_[j] : Rational(0); }

  Rational operator()(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }
  PrecisionReal operator()(const PrecisionReal& x) const {
    PrecisionReal r(0L, x.prec());
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  friend PolyRational operator+(const PolyRational& a, const PolyRational& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return PolyRational(std::move(c));
  }
  friend PolyRational operator-(const PolyRational& a, const PolyRational& b) { return a + b * Rational(-1); }
  friend PolyRational operator*(const PolyRational& a, const PolyRational& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return PolyRational(std::move(c));
  }
  friend PolyRational operator*(const PolyRational& a, const Rational& s) {
    std::vector<Rational> c = a.c_;
    for (auto& x : c) x *= s;
    return PolyRational(std::move(c));
  }
  friend bool operator==(const PolyRational& a, const PolyRational& b) { return a.c_ == b.c_; }

  PolyRational pow(unsigned e) const {
    PolyRational r = constant(1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }
  // p(q(x))
  PolyRational compose(const PolyRational& q) const {
    PolyRational r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * q + constant(*it);
    return r;
  }
  // Least common multiple of the coefficient denominators.
  Integer denominator_lcm() const {
    Integer l = 1;
    for (const auto& x : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (long j = degree(); j >= 0; --j) {
      if (c_[j] == 0) continue;
      if (!first) os << (c_[j] < 0 ? " - " : " + ");
      else if (c_[j] < 0) os << "-";
      first = false;
      Rational a = abs(c_[j]);
      if (a != 1 || j == 0) os << a.get_str();
      if (j >= 1) os << (a != 1 ? "*x" : "x");
      if (j >= 2) os << "^" << j;
    }
    return os.str();
  }

 private:
  void trim() {
    for (auto& x : c_) x.canonicalize();
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// P_n^{(alpha,beta)}(x) = sum_s C(n+alpha, n-s) C(n+beta, s) ((x-1)/2)^s ((x+1)/2)^{n-s}.
inline PolyRational jacobi_polynomial(long n, long alpha, long beta) {
  if (n < 0 || alpha < 0 || beta < 0) throw domain_error("jacobi_polynomial: parameters must be >= 0");
  const PolyRational xm = PolyRational::linear(Rational(-1, 2), Rational(1, 2));
  const PolyRational xp = PolyRational::linear(Rational(1, 2), Rational(1, 2));
  PolyRational p;
  for (long s = 0; s <= n; ++s) {
    Rational c(binomial(n + alpha, n - s) * binomial(n + beta, s));
    p = p + xm.pow(static_cast<unsigned>(s)) * xp.pow(static_cast<unsigned>(n - s)) * c;
  }
  return p;
}

}  // namespace divisum
