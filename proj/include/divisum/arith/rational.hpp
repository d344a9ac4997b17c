#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "divisum/arith/errors.hpp"

namespace divisum {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) { return make_rational(Integer(num), Integer(den)); }

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline Integer ipow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// Integer power with a signed exponent.
inline Rational rpow(const Rational& b, long e) {
  if (e >= 0) {
    Rational r(ipow(b.get_num(), static_cast<unsigned long>(e)), ipow(b.get_den(), static_cast<unsigned long>(e)));
    r.canonicalize();
    return r;
  }
  if (b == 0) throw domain_error("zero raised to a negative power");
  Rational r(ipow(b.get_den(), static_cast<unsigned long>(-e)), ipow(b.get_num(), static_cast<unsigned long>(-e)));
  r.canonicalize();
  return r;
}

inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// H_d = 1 + 1/2 + ... + 1/d, with H_0 = 0.
inline Rational harmonic(long d) {
  if (d < 0) throw domain_error("harmonic: negative index");
  Rational h = 0;
  for (long j = 1; j <= d; ++j) h += Rational(1, j);
  h.canonicalize();
  return h;
}

// Bernoulli numbers with B_1 = -1/2, from the standard recurrence.
inline Rational bernoulli(unsigned n) {
  static std::mutex mu;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= n) {
    const unsigned m = static_cast<unsigned>(cache.size());
    Rational s = 0;
    for (unsigned k = 0; k < m; ++k) s += Rational(binomial(m + 1, k)) * cache[k];
    Rational b = -s / Rational(m + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[n];
}

// zeta(m) = r * pi^m for even m >= 2; returns r.
inline Rational zeta_even(long m) {
  if (m < 2 || m % 2 != 0) throw domain_error("zeta_even: argument must be even and >= 2");
  Rational r = bernoulli(static_cast<unsigned>(m)) * Rational(ipow(2, static_cast<unsigned long>(m))) /
               Rational(2 * factorial(static_cast<unsigned long>(m)));
  if ((m / 2 + 1) % 2 != 0) r = -r;
  r.canonicalize();
  return r;
}

// zeta(1 - m) = -B_m / m for m >= 2 (zero for odd m >= 3).
inline Rational zeta_neg_int(long k) {
  if (k < 0) throw domain_error("zeta_neg_int: k must be >= 0");
  if (k == 0) return Rational(-1, 2);
  Rational r = -bernoulli(static_cast<unsigned>(k + 1)) / Rational(k + 1);
  r.canonicalize();
  return r;
}

}  // namespace divisum
