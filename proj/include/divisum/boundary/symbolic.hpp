#pragma once

#include <compare>
#include <map>
#include <string>

#include "divisum/arith/rational.hpp"

namespace divisum {

// A product of the transcendental building blocks that occur on the right-hand side:
// zeta(odd) * pi^p * n^e * log(4 pi^2 |n|) * sigma_r(n) * (a_n / n^c).
// Even zeta values and zeta'(-2k) are always rewritten into this basis.
struct SymKey {
  long zeta_odd = 0;  // 0: absent
  long pi_pow = 0;
  long n_pow = 0;
  bool log = false;
  long sigma = -1;    // -1: absent
  long cusp_pow = -1; // -1: absent, else a_n / n^cusp_pow

  auto operator<=>(const SymKey&) const = default;

  std::string str() const {
    std::string s;
    auto put = [&](const std::string& f) { s += (s.empty() ? "" : "*") + f; };
    if (zeta_odd) put("zeta(" + std::to_string(zeta_odd) + ")");
    if (pi_pow) put("pi^" + std::to_string(pi_pow));
    if (n_pow) put("n^" + std::to_string(n_pow));
    if (log) put("log(4pi^2|n|)");
    if (sigma >= 0) put("sigma_" + std::to_string(sigma) + "(n)");
    if (cusp_pow >= 0) put("a_n/n^" + std::to_string(cusp_pow));
    return s.empty() ? "1" : s;
  }
};

struct SymbolicSum {
  std::map<SymKey, Rational> terms;

  void add(const SymKey& key, const Rational& c) {
    if (c == 0) return;
    Rational& slot = terms[key];
    slot += c;
    slot.canonicalize();
    if (slot == 0) terms.erase(key);
  }
  // c * zeta(m) * n^e for integer m >= 2.
  void add_zeta(long m, const Rational& c, SymKey key = {}) {
    if (m % 2 == 0) {
      key.pi_pow += m;
      add(key, c * zeta_even(m));
    } else {
      key.zeta_odd = m;
      add(key, c);
    }
  }
  // c * zeta'(-2k) = c (-1)^k (2k)! zeta(2k+1) / (2 (2 pi)^{2k}).
  void add_zeta_prime_neg_even(long m, const Rational& c, SymKey key = {}) {
    if (m < 2 || m % 2) throw domain_error("add_zeta_prime_neg_even: argument must be even and >= 2");
    key.zeta_odd = m + 1;
    key.pi_pow -= m;
    add(key, c * Rational(sign_pow(m / 2) * factorial(m), 2 * ipow(2, m)));
  }

  SymbolicSum& operator+=(const SymbolicSum& o) {
    for (const auto& [k, c] : o.terms) add(k, c);
    return *this;
  }
  SymbolicSum scaled(const Rational& c) const {
    SymbolicSum r;
    for (const auto& [k, v] : terms) r.add(k, v * c);
    return r;
  }
  SymbolicSum with_sigma(long r) const {
    SymbolicSum out;
    for (const auto& [k, v] : terms) {
      SymKey key = k;
      key.sigma = r;
      out.add(key, v);
    }
    return out;
  }
  bool is_zero() const { return terms.empty(); }
  bool operator==(const SymbolicSum& o) const { return terms == o.terms; }

  std::string str() const {
    if (terms.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : terms) {
      const Rational a = abs(c);
      if (!first) s += (c < 0) ? " - " : " + ";
      else if (c < 0) s += "-";
      first = false;
      const std::string ks = k.str();
      if (ks == "1") s += a.get_str();
      else if (a == 1) s += ks;
      else s += a.get_str() + "*" + ks;
    }
    return s;
  }
};

inline SymbolicSum operator+(SymbolicSum a, const SymbolicSum& b) { return a += b; }
inline SymbolicSum operator-(SymbolicSum a, const SymbolicSum& b) { return a += b.scaled(-1); }

}  // namespace divisum
