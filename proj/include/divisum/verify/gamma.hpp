#pragma once

#include <map>
#include <string>
#include <vector>

#include "divisum/jacobi/loglinear.hpp"
#include "divisum/jacobi/second_kind.hpp"
#include "divisum/sums/params.hpp"

namespace divisum {

enum class LogOf { none, n1, n2 };

// c * n1^i * n2^j * n^e, optionally times log|n1| or log|n2|, with n = n1 + n2.
struct PhiMonomial {
  Rational c;
  long i = 0, j = 0, e = 0;
  LogOf log = LogOf::none;
};

// A weighting in the raw shape it is usually written in.
struct RawWeighting {
  std::vector<PhiMonomial> terms;

  RawWeighting& add(const Rational& c, long i, long j, long e = 0, LogOf log = LogOf::none) {
    terms.push_back({c, i, j, e, log});
    return *this;
  }
  // c n1^i n2^j n^e log|n1/n2|
  RawWeighting& add_log_ratio(const Rational& c, long i, long j, long e = 0) {
    add(c, i, j, e, LogOf::n1);
    return add(-c, i, j, e, LogOf::n2);
  }
  // (phi(n1,n2) + phi(n2,n1)) / 2
  RawWeighting symmetrized() const {
    RawWeighting r;
    for (const auto& t : terms) {
      r.add(t.c / 2, t.i, t.j, t.e, t.log);
      const LogOf sw = t.log == LogOf::n1 ? LogOf::n2 : (t.log == LogOf::n2 ? LogOf::n1 : LogOf::none);
      r.add(t.c / 2, t.j, t.i, t.e, sw);
    }
    return r;
  }

  LogCombination evaluate(const Integer& n1, const Integer& n2) const {
    if (n1 == 0 || n2 == 0 || n1 + n2 == 0) throw domain_error("RawWeighting: need n1, n2, n1 + n2 nonzero");
    const Rational a(n1), b(n2), n(n1 + n2);
    LogCombination out;
    for (const auto& t : terms) {
      const Rational v = t.c * rpow(a, t.i) * rpow(b, t.j) * rpow(n, t.e);
      if (t.log == LogOf::none) out.rational_part += v;
      else out.add_log(v, abs(t.log == LogOf::n1 ? a : b));
    }
    out.rational_part.canonicalize();
    return out;
  }
};

// Canonical form sum A_j n1^j + sum B_j n2^j + sum (C_j n1^j log|n1| + D_j n2^j log|n2|)
// at a fixed n.  Nonnegative powers of the rational part are carried by A.
struct PhiWeighting {
  long d = 1, r1 = 0, r2 = 0, n = 1;
  std::map<long, Rational> A, B, C, D;

  LogCombination evaluate(const Integer& n1) const {
    const Integer n2 = Integer(n) - n1;
    if (n1 == 0 || n2 == 0) throw domain_error("PhiWeighting: need n1, n2 nonzero");
    const Rational a(n1), b(n2);
    LogCombination out;
    for (const auto& [j, c] : A) out.rational_part += c * rpow(a, j);
    for (const auto& [j, c] : B) out.rational_part += c * rpow(b, j);
    for (const auto& [j, c] : C) out.add_log(c * rpow(a, j), abs(a));
    for (const auto& [j, c] : D) out.add_log(c * rpow(b, j), abs(b));
    out.rational_part.canonicalize();
    return out;
  }

  std::string str() const {
    std::string s;
    auto dump = [&](const char* name, const std::map<long, Rational>& m) {
      for (const auto& [j, c] : m) s += std::string(name) + "_" + std::to_string(j) + " = " + c.get_str() + "\n";
    };
    dump("A", A);
    dump("B", B);
    dump("C", C);
    dump("D", D);
    return s;
  }
};

namespace detail {

inline void add_to(std::map<long, Rational>& m, long j, const Rational& c) {
  if (c == 0) return;
  Rational& s = m[j];
  s += c;
  s.canonicalize();
  if (s == 0) m.erase(j);
}

// (N - x)^j = sum_m binom(j,m) N^{j-m} (-x)^m for j >= 0.
inline void add_shifted_power(std::map<long, Rational>& m, const Rational& c, const Rational& N, long j, long shift) {
  for (long t = 0; t <= j; ++t)
    add_to(m, t + shift, c * Rational(binomial(j, t)) * rpow(N, j - t) * Rational(sign_pow(t)));
}

// c / (n1^a n2^b) with n1 + n2 = N, split into pure powers of n1 and n2.
inline void partial_fraction(std::map<long, Rational>& A, std::map<long, Rational>& B, const Rational& c,
                             const Rational& N, long a, long b) {
  if (a == 0) return add_to(B, -b, c);
  if (b == 0) return add_to(A, -a, c);
  // 1/(n1 n2) = (1/N)(1/n1 + 1/n2)
  partial_fraction(A, B, c / N, N, a - 1, b);
  partial_fraction(A, B, c / N, N, a, b - 1);
}

}  // namespace detail

// Rewrites a raw weighting at the fixed n of p into canonical form and checks the
// growth condition phi(n1, n - n1) = O(n1^{-d-r1-r2-1}).
inline PhiWeighting canonicalize_phi(const RawWeighting& raw, const ConvolutionParams& p) {
  p.validate();
  PhiWeighting w{p.d, p.r1, p.r2, p.n, {}, {}, {}, {}};
  const Rational N(p.n);
  using detail::add_to;
  using detail::add_shifted_power;
  std::map<long, Rational> Bpos;  // nonnegative n2 powers, folded into A below
  for (const auto& t : raw.terms) {
    const Rational c = t.c * rpow(N, t.e);
    if (t.log == LogOf::n1) {
      if (t.i < 0 || t.j < 0) throw domain_error("canonicalize_phi: log terms must have polynomial coefficients");
      // n1^i (N - n1)^j
      add_shifted_power(w.C, c, N, t.j, t.i);
      continue;
    }
    if (t.log == LogOf::n2) {
      if (t.i < 0 || t.j < 0) throw domain_error("canonicalize_phi: log terms must have polynomial coefficients");
      add_shifted_power(w.D, c, N, t.i, t.j);
      continue;
    }
    if (t.j >= 0) {
      add_shifted_power(w.A, c, N, t.j, t.i);
    } else if (t.i >= 0) {
      std::map<long, Rational> tmp;
      add_shifted_power(tmp, c, N, t.i, t.j);
      for (const auto& [k, v] : tmp) add_to(k < 0 ? w.B : Bpos, k, v);
    } else {
      detail::partial_fraction(w.A, w.B, c, N, -t.i, -t.j);
    }
  }
  for (const auto& [k, v] : Bpos) add_shifted_power(w.A, v, N, k, 0);
  for (const auto& [j, c] : w.A)
    if (j < -p.r1) throw domain_error("canonicalize_phi: pole at n1 = 0 of order " + std::to_string(-j) + " exceeds r1");
  for (const auto& [j, c] : w.B)
    if (j < -p.r2) throw domain_error("canonicalize_phi: pole at n2 = 0 of order " + std::to_string(-j) + " exceeds r2");

  // Growth: expand at n1 -> infinity with log|n2| = log|n1| + log|1 - N/n1|.
  const long lowest = -(p.d + p.r1 + p.r2);
  std::map<long, Rational> logpart, plain;
  for (const auto& [j, c] : w.C) add_to(logpart, j, c);
  for (const auto& [j, c] : w.D) add_shifted_power(logpart, c, N, j, 0);
  for (const auto& [j, c] : w.A) add_to(plain, j, c);
  for (const auto& [j, c] : w.B) {
    // (N - n1)^j = (-1)^j n1^j sum_m binom(m-j-1, m) (N/n1)^m for j < 0
    for (long m = 0; j - m >= lowest; ++m)
      add_to(plain, j - m, c * Rational(sign_pow(j) * binomial(m - j - 1, m)) * rpow(N, m));
  }
  for (const auto& [j, c] : w.D) {
    // (N - n1)^j * (-sum_{t>=1} N^t n1^{-t} / t)
    std::map<long, Rational> poly;
    add_shifted_power(poly, c, N, j, 0);
    for (const auto& [q, v] : poly)
      for (long t = 1; q - t >= lowest; ++t) add_to(plain, q - t, -v * rpow(N, t) / Rational(t));
  }
  if (!logpart.empty())
    throw domain_error("canonicalize_phi: growth condition violated (log|n1| term survives at infinity)");
  for (const auto& [j, c] : plain)
    if (j >= lowest)
      throw domain_error("canonicalize_phi: growth condition violated (coefficient of n1^" + std::to_string(j) +
                         " is " + c.get_str() + ")");
  return w;
}

// (-1)^{d+1} n^d C_d 2 d! (r1+r2+d)! / (r1+r2+2d)!
inline Rational gamma_factor(const PhiWeighting& w) {
  auto it = w.C.find(w.d);
  const Rational Cd = it == w.C.end() ? Rational(0) : it->second;
  Rational g = Rational(sign_pow(w.d + 1)) * rpow(Rational(w.n), w.d) * Cd * Rational(2 * factorial(w.d) * factorial(w.r1 + w.r2 + w.d)) /
               Rational(factorial(w.r1 + w.r2 + 2 * w.d));
  g.canonicalize();
  return g;
}

struct GammaCertificate {
  Rational gamma;
  std::vector<std::pair<long, long>> points;  // (n1, n2)
  bool certified = false;
};

// phi(n1,n2) - Gamma Q((n2-n1)/n) must vanish exactly at d + r1 + r2 + 3 points with
// distinct |n1/n2|, evaluated from both the raw and the canonical form.
inline GammaCertificate certify_gamma(const RawWeighting& raw, const PhiWeighting& w) {
  GammaCertificate cert;
  cert.gamma = gamma_factor(w);
  const QSecondKind q = q_construct(w.d, w.r1, w.r2);
  const long count = w.d + w.r1 + w.r2 + 3;
  const long an = std::labs(w.n);
  // n1 = -1, -2, ... keeps n1, n2 and n1 + n2 nonzero and the ratios distinct.
  for (long t = 1; static_cast<long>(cert.points.size()) < count; ++t) {
    const long n1 = w.n > 0 ? -t : t;
    const long n2 = w.n - n1;
    (void)an;
    cert.points.push_back({n1, n2});
  }
  cert.certified = true;
  for (const auto& [n1, n2] : cert.points) {
    LogCombination lhs = raw.evaluate(Integer(n1), Integer(n2));
    LogCombination can = w.evaluate(Integer(n1));
    LogCombination rhs = q_eval_exact(q, n1, n2).combination().scaled(cert.gamma);
    if (!(lhs == rhs) || !(can == rhs)) {
      cert.certified = false;
      break;
    }
  }
  return cert;
}

inline GammaCertificate gamma_factor_certified(const RawWeighting& raw, const ConvolutionParams& p) {
  PhiWeighting w = canonicalize_phi(raw, p);
  GammaCertificate c = certify_gamma(raw, w);
  if (!c.certified) throw verification_error("weighting is not a multiple of Q_d^{(r1,r2)}");
  return c;
}

}  // namespace divisum
