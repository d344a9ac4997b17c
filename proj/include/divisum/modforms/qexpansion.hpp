#pragma once

#include <vector>

#include "divisum/arith/precision_real.hpp"
#include "divisum/sums/sigma.hpp"

namespace divisum {

// Truncated q-series sum_{m < M} c_m q^m of a given weight, exact coefficients.
struct QExpansion {
  long weight = 0;
  std::vector<Rational> coeffs;

  long length() const { return static_cast<long>(coeffs.size()); }
  const Rational& operator[](long m) const { return coeffs.at(m); }
  bool is_cusp() const { return !coeffs.empty() && coeffs[0] == 0; }
};

inline QExpansion q_multiply(const QExpansion& a, const QExpansion& b) {
  const long M = std::min(a.length(), b.length());
  QExpansion r{a.weight + b.weight, std::vector<Rational>(M, Rational(0))};
  for (long i = 0; i < M; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (long j = 0; i + j < M; ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return r;
}

inline QExpansion q_pow(const QExpansion& a, long e, long M) {
  QExpansion r{0, std::vector<Rational>(M, Rational(0))};
  r.coeffs[0] = 1;
  for (long i = 0; i < e; ++i) r = q_multiply(r, a);
  return r;
}

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(m) q^m, with M coefficients.
inline QExpansion eisenstein_q(long k, long M) {
  if (k < 4 || k % 2 != 0) throw domain_error("eisenstein_q: weight must be even and >= 4");
  if (M < 1) throw domain_error("eisenstein_q: M must be >= 1");
  QExpansion e{k, std::vector<Rational>(M, Rational(0))};
  e.coeffs[0] = 1;
  Rational c = Rational(-2 * k) / bernoulli(static_cast<unsigned>(k));
  for (long m = 1; m < M; ++m) e.coeffs[m] = c * Rational(sigma(k - 1, m));
  return e;
}

inline QExpansion delta_q(long M) {
  if (M < 1) throw domain_error("delta_q: M must be >= 1");
  QExpansion e4 = eisenstein_q(4, M), e6 = eisenstein_q(6, M);
  QExpansion a = q_multiply(q_multiply(e4, e4), e4), b = q_multiply(e6, e6);
  QExpansion d{12, std::vector<Rational>(M)};
  for (long m = 0; m < M; ++m) d.coeffs[m] = (a.coeffs[m] - b.coeffs[m]) / 1728;
  return d;
}

inline long dim_cusp(long k) {
  if (k < 0) throw domain_error("dim_cusp: weight must be >= 0");
  if (k % 2 != 0 || k < 12 || k == 14) return 0;
  return (k % 12 == 2) ? k / 12 - 1 : k / 12;
}

// Echelonized integral basis f_1..f_dim of S_k with a_i(f_j) = delta_ij for i, j <= dim.
inline std::vector<QExpansion> victor_miller_basis(long k, long M) {
  const long dim = dim_cusp(k);
  if (dim == 0) return {};
  if (M <= dim) throw domain_error("victor_miller_basis: M must exceed the dimension");
  QExpansion e4 = eisenstein_q(4, M), e6 = eisenstein_q(6, M), D = delta_q(M);
  std::vector<QExpansion> g;
  for (long j = 1; j <= dim; ++j) {
    const long rest = k - 12 * j;
    long a = 0, b = 0;
    for (b = 0; b <= 1; ++b)
      if ((rest - 6 * b) >= 0 && (rest - 6 * b) % 4 == 0) {
        a = (rest - 6 * b) / 4;
        break;
      }
    QExpansion f = q_multiply(q_multiply(q_pow(D, j, M), q_pow(e4, a, M)), q_pow(e6, b, M));
    f.weight = k;
    g.push_back(std::move(f));
  }
  // g_j = q^j + O(q^{j+1}); clear the entries above the diagonal.
  for (long j = dim - 1; j >= 0; --j)
    for (long i = j + 1; i < dim; ++i) {
      Rational c = g[j].coeffs[i + 1];
      if (c == 0) continue;
      for (long m = 0; m < M; ++m) g[j].coeffs[m] -= c * g[i].coeffs[m];
    }
  return g;
}

}  // namespace divisum
