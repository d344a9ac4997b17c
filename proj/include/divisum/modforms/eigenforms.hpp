#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "divisum/jacobi/poly.hpp"
#include "divisum/modforms/qexpansion.hpp"

namespace divisum {

struct Eigenform {
  long weight = 0;
  std::vector<PrecisionReal> coeffs;  // coeffs[m] = a_m, coeffs[0] = 0, coeffs[1] = 1
  int conjugacy_tag = 0;
  mpfr_prec_t precision_bits = 0;

  long length() const { return static_cast<long>(coeffs.size()); }
  const PrecisionReal& operator[](long m) const { return coeffs.at(m); }
};

namespace detail {

using Matrix = std::vector<std::vector<Rational>>;

// T_2 on the echelon basis: (T_2 f)_m = a_{2m} + 2^{k-1} a_{m/2}.
inline Matrix hecke_t2_matrix(const std::vector<QExpansion>& basis, long k) {
  const long dim = static_cast<long>(basis.size());
  Matrix T(dim, std::vector<Rational>(dim, Rational(0)));
  const Integer p = ipow(2, static_cast<unsigned long>(k - 1));
  for (long j = 0; j < dim; ++j)
    for (long i = 1; i <= dim; ++i) {
      Rational v = basis[j].coeffs.at(2 * i);
      if (i % 2 == 0) v += Rational(p) * basis[j].coeffs[i / 2];
      T[i - 1][j] = v;
    }
  return T;
}

// Characteristic polynomial det(xI - T) by Faddeev-LeVerrier.
inline PolyRational char_poly(const Matrix& T) {
  const long n = static_cast<long>(T.size());
  std::vector<Rational> c(n + 1, Rational(0));
  c[n] = 1;
  Matrix Mk(n, std::vector<Rational>(n, Rational(0)));
  for (long k = 1; k <= n; ++k) {
    Matrix next(n, std::vector<Rational>(n, Rational(0)));
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        Rational s = 0;
        for (long l = 0; l < n; ++l) s += T[i][l] * Mk[l][j];
        next[i][j] = s + (i == j ? c[n - k + 1] : Rational(0));
      }
    Mk = next;
    Rational tr = 0;
    for (long i = 0; i < n; ++i)
      for (long l = 0; l < n; ++l) tr += T[i][l] * Mk[l][i];
    c[n - k] = -tr / k;
  }
  return PolyRational(c);
}

inline PolyRational poly_rem(PolyRational a, const PolyRational& b) {
  while (!a.is_zero() && a.degree() >= b.degree()) {
    Rational f = a.coeff(a.degree()) / b.coeff(b.degree());
    a = a - b * PolyRational::monomial(f, static_cast<std::size_t>(a.degree() - b.degree()));
  }
  return a;
}

inline PolyRational poly_derivative(const PolyRational& p) {
  std::vector<Rational> c;
  for (long i = 1; i <= p.degree(); ++i) c.push_back(p.coeff(i) * i);
  return PolyRational(c);
}

inline int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

inline int sturm_changes(const std::vector<PolyRational>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& p : chain) {
    int s = sign_of(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Real roots of a squarefree polynomial, isolated by Sturm sequences and refined by bisection.
inline std::vector<Real> real_roots(const PolyRational& p, mpfr_prec_t wp) {
  std::vector<PolyRational> chain{p, poly_derivative(p)};
  while (chain.back().degree() > 0) {
    PolyRational r = poly_rem(chain[chain.size() - 2], chain.back()) * Rational(-1);
    if (r.is_zero()) throw precision_error("characteristic polynomial has a repeated root");
    chain.push_back(r);
  }
  Rational B = 1;
  for (long i = 0; i < p.degree(); ++i) B = std::max(B, Rational(1 + abs(p.coeff(i) / p.coeff(p.degree()))));
  struct Iv { Rational a, b; };
  std::vector<Iv> todo{{-B, B}}, isolated;
  while (!todo.empty()) {
    Iv iv = todo.back();
    todo.pop_back();
    int cnt = sturm_changes(chain, iv.a) - sturm_changes(chain, iv.b);
    if (cnt == 0) continue;
    if (cnt == 1) {
      isolated.push_back(iv);
      continue;
    }
    Rational mid = (iv.a + iv.b) / 2;
    if (p(mid) == 0) mid += (iv.b - iv.a) / 7;
    todo.push_back({iv.a, mid});
    todo.push_back({mid, iv.b});
  }
  std::sort(isolated.begin(), isolated.end(), [](const Iv& x, const Iv& y) { return x.a < y.a; });
  std::vector<Real> roots;
  for (const auto& iv : isolated) {
    PrecisionReal lo(iv.a, wp), hi(iv.b, wp);
    const int slo = sign_of(p(iv.a));
    for (int it = 0; it < wp + 64; ++it) {
      PrecisionReal mid = (lo + hi) * Rational(1, 2);
      PrecisionReal v = p(mid);
      if (v.mid().sign() == 0) {
        lo = hi = mid;
        break;
      }
      if (v.mid().sign() == slo) lo = mid; else hi = mid;
    }
    roots.push_back(((lo + hi) * Rational(1, 2)).mid());
  }
  return roots;
}

inline std::vector<std::vector<Real>> eigen_coefficients(const std::vector<QExpansion>& basis, long k, long M,
                                                         mpfr_prec_t wp) {
  const long dim = static_cast<long>(basis.size());
  Matrix T = hecke_t2_matrix(basis, k);
  std::vector<Real> lams = real_roots(char_poly(T), wp);
  if (static_cast<long>(lams.size()) != dim) throw precision_error("T_2 eigenvalue count mismatch");
  std::vector<std::vector<Real>> forms;
  for (const Real& lam : lams) {
    // Null vector of (T - lam I) with v_1 = 1, by Gaussian elimination with partial pivoting.
    std::vector<std::vector<Real>> A(dim, std::vector<Real>(dim, Real(wp)));
    for (long i = 0; i < dim; ++i)
      for (long j = 0; j < dim; ++j) {
        A[i][j].set(T[i][j]);
        if (i == j) mpfr_sub(A[i][j].get(), A[i][j].get(), lam.get(), MPFR_RNDN);
      }
    // Unknowns v_2..v_dim; equations: sum_{j>=2} A[i][j] v_j = -A[i][1].  Use rows with largest pivots.
    const long u = dim - 1;
    std::vector<Real> v(dim, Real(wp));
    mpfr_set_si(v[0].get(), 1, MPFR_RNDN);
    if (u > 0) {
      std::vector<std::vector<Real>> S(dim, std::vector<Real>(u + 1, Real(wp)));
      for (long i = 0; i < dim; ++i) {
        for (long j = 0; j < u; ++j) S[i][j] = A[i][j + 1];
        mpfr_neg(S[i][u].get(), A[i][0].get(), MPFR_RNDN);
      }
      std::vector<long> rows(dim);
      for (long i = 0; i < dim; ++i) rows[i] = i;
      for (long c = 0; c < u; ++c) {
        long piv = c;
        for (long r = c + 1; r < dim; ++r)
          if (mpfr_cmpabs(S[rows[r]][c].get(), S[rows[piv]][c].get()) > 0) piv = r;
        std::swap(rows[c], rows[piv]);
        for (long r = c + 1; r < dim; ++r) {
          Real f(wp), t(wp);
          mpfr_div(f.get(), S[rows[r]][c].get(), S[rows[c]][c].get(), MPFR_RNDN);
          for (long j = c; j <= u; ++j) {
            mpfr_mul(t.get(), f.get(), S[rows[c]][j].get(), MPFR_RNDN);
            mpfr_sub(S[rows[r]][j].get(), S[rows[r]][j].get(), t.get(), MPFR_RNDN);
          }
        }
      }
      for (long c = u - 1; c >= 0; --c) {
        Real s(S[rows[c]][u]), t(wp);
        for (long j = c + 1; j < u; ++j) {
          mpfr_mul(t.get(), S[rows[c]][j].get(), v[j + 1].get(), MPFR_RNDN);
          mpfr_sub(s.get(), s.get(), t.get(), MPFR_RNDN);
        }
        mpfr_div(v[c + 1].get(), s.get(), S[rows[c]][c].get(), MPFR_RNDN);
      }
    }
    std::vector<Real> a(M, Real(wp));
    for (long m = 0; m < M; ++m) {
      Real t(wp), c(wp);
      for (long j = 0; j < dim; ++j) {
        if (basis[j].coeffs[m] == 0) continue;
        c.set(basis[j].coeffs[m]);
        mpfr_mul(t.get(), c.get(), v[j].get(), MPFR_RNDN);
        mpfr_add(a[m].get(), a[m].get(), t.get(), MPFR_RNDN);
      }
    }
    forms.push_back(std::move(a));
  }
  return forms;
}

}  // namespace detail

// Truncation order adequate for L-values and Petersson norms at the given precision.
inline long default_truncation(long k, mpfr_prec_t prec) {
  const double bits = static_cast<double>(prec) + static_cast<double>(k) * std::log2(static_cast<double>(prec)) + 20;
  return std::max(32L, static_cast<long>(std::ceil(bits * std::log(2.0) / (M_PI * std::sqrt(3.0)))) + 12);
}

inline std::string cache_directory() {
  const char* env = std::getenv("DIVISUM_CACHE_DIR");
  return (env && *env) ? std::string(env) : std::string("./.divisum-cache");
}

namespace detail {

inline std::string cache_file(long k) { return cache_directory() + "/eigenforms_" + std::to_string(k) + ".json"; }

inline nlohmann::json to_cache_json(long k, long M, mpfr_prec_t prec, const std::vector<Eigenform>& forms) {
  nlohmann::json j;
  j["weight"] = k;
  j["M"] = M;
  j["precision_bits"] = prec;
  j["forms"] = nlohmann::json::array();
  j["radii"] = nlohmann::json::array();
  const int digits = static_cast<int>(std::ceil(static_cast<double>(prec) * 0.30103)) + 5;
  for (const auto& f : forms) {
    nlohmann::json vals = nlohmann::json::array(), rads = nlohmann::json::array();
    for (const auto& c : f.coeffs) {
      vals.push_back(c.str(digits));
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6Le", detail::up(c.rad() + std::ldexp(c.mid().abs_up(), -static_cast<int>(prec) - 4)));
      rads.push_back(std::string(buf));
    }
    j["forms"].push_back(vals);
    j["radii"].push_back(rads);
  }
  return j;
}

inline std::vector<Eigenform> from_cache_json(const nlohmann::json& j, long k, long M, mpfr_prec_t prec) {
  const auto& forms = j.at("forms");
  const auto& radii = j.at("radii");
  std::vector<Eigenform> res;
  for (std::size_t f = 0; f < forms.size(); ++f) {
    Eigenform e{k, {}, static_cast<int>(f), prec};
    for (long m = 0; m < M; ++m) {
      const std::string rs = radii.at(f).at(m).get<std::string>();
      e.coeffs.push_back(precision_real_from_string(forms.at(f).at(m).get<std::string>(), std::strtold(rs.c_str(), nullptr), prec));
    }
    res.push_back(std::move(e));
  }
  return res;
}

inline bool load_cached(long k, long M, mpfr_prec_t prec, std::vector<Eigenform>& out) {
  std::ifstream in(cache_file(k));
  if (!in) return false;
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("weight").get<long>() != k || j.at("M").get<long>() < M || j.at("precision_bits").get<long>() < prec)
      return false;
    auto res = from_cache_json(j, k, M, prec);
    if (static_cast<long>(res.size()) != dim_cusp(k)) return false;
    out = std::move(res);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

inline void store_cached(long k, const nlohmann::json& j) {
  std::error_code ec;
  std::filesystem::create_directories(cache_directory(), ec);
  if (ec) return;
  const std::string final_path = cache_file(k);
  const std::string tmp = final_path + ".tmp." + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << j.dump();
    if (!out) return;
  }
  std::filesystem::rename(tmp, final_path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace detail

struct EigenformOptions {
  bool use_cache = true;
};

// Normalized Hecke eigenforms of level 1 and weight k, sorted by a_2 ascending.
inline std::vector<Eigenform> hecke_eigenforms(long k, long M, mpfr_prec_t prec, const EigenformOptions& opt = {}) {
  if (k % 2 != 0 || k < 0) throw domain_error("hecke_eigenforms: weight must be even and nonnegative");
  const long dim = dim_cusp(k);
  if (dim == 0) return {};
  if (M < 2 * dim + 1) throw domain_error("hecke_eigenforms: M too small for the Hecke matrix");
  static std::mutex mu;
  static std::map<long, std::vector<Eigenform>> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(k);
    if (it != memo.end() && it->second.front().length() >= M && it->second.front().precision_bits >= prec) {
      std::vector<Eigenform> out = it->second;
      for (auto& f : out) f.coeffs.resize(M);
      return out;
    }
  }
  std::vector<Eigenform> out;
  if (!(opt.use_cache && detail::load_cached(k, M, prec, out))) {
    auto basis = victor_miller_basis(k, M);
    auto lo = detail::eigen_coefficients(basis, k, M, 2 * prec);
    auto hi = detail::eigen_coefficients(basis, k, M, 2 * prec + 64);
    for (long f = 0; f < dim; ++f) {
      Eigenform e{k, {}, static_cast<int>(f), prec};
      for (long m = 0; m < M; ++m) {
        Real diff(2 * prec + 64);
        mpfr_sub(diff.get(), lo[f][m].get(), hi[f][m].get(), MPFR_RNDN);
        PrecisionReal c(Real(hi[f][m], prec), 0);
        c.set_rad(detail::up(4 * diff.abs_up() + detail::rounding_bound(c.mid(), 1)));
        e.coeffs.push_back(std::move(c));
      }
      out.push_back(std::move(e));
    }
    // Always pass through the serialized form so cached and fresh runs agree bit for bit.
    const nlohmann::json j = detail::to_cache_json(k, M, prec, out);
    out = detail::from_cache_json(j, k, M, prec);
    if (opt.use_cache) detail::store_cached(k, j);
  }
  std::lock_guard<std::mutex> lock(mu);
  memo[k] = out;
  return out;
}

inline std::vector<Eigenform> hecke_eigenforms(long k, mpfr_prec_t prec) {
  return hecke_eigenforms(k, default_truncation(k, prec), prec);
}

}  // namespace divisum
