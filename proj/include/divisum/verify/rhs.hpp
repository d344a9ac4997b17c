#pragma once

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "divisum/boundary/boundary.hpp"
#include "divisum/lfun/lfunctions.hpp"
#include "divisum/modforms/eigenforms.hpp"
#include "divisum/sums/params.hpp"
#include "divisum/sums/sigma.hpp"

namespace divisum {

// h = sum_f lambda_f f, the cusp form whose coefficients enter the identity.
struct CuspData {
  long weight = 0;
  long dim = 0;
  std::vector<Eigenform> forms;
  std::vector<PrecisionReal> lambdas;

  // a_m(h) for 1 <= m < truncation.
  PrecisionReal coeff(long m, mpfr_prec_t prec) const {
    PrecisionReal s(0L, prec);
    for (std::size_t i = 0; i < forms.size(); ++i) s += lambdas[i] * forms[i][m];
    return s;
  }
};

// Eigenforms of weight k with at least `min_terms` coefficients and their lambda_f; memoized.
inline CuspData cusp_data(const ConvolutionParams& p, mpfr_prec_t prec, long min_terms = 0) {
  p.validate();
  static std::mutex mu;
  static std::map<std::tuple<long, long, long, mpfr_prec_t>, CuspData> memo;
  const auto key = std::make_tuple(p.d, p.r1, p.r2, prec);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end() && (it->second.dim == 0 || it->second.forms.front().length() >= min_terms)) return it->second;
  }
  CuspData cd;
  cd.weight = p.k();
  cd.dim = dim_cusp(cd.weight);
  if (cd.dim > 0) {
    const long M = std::max(default_truncation(cd.weight, prec), min_terms);
    cd.forms = hecke_eigenforms(cd.weight, M, prec);
    for (const auto& f : cd.forms) cd.lambdas.push_back(lambda_coeff(p, f, prec));
  }
  std::lock_guard<std::mutex> lock(mu);
  memo[key] = cd;
  return cd;
}

struct RhsPrediction {
  PrecisionReal value;
  PrecisionReal z_part;      // (-1)^d Z^{(r1,r2)} sigma_{r1} - Z^{(r2,r1)} sigma_{r2}
  PrecisionReal cusp_part;   // a_|n| / |n|^d
  ZTerm z12, z21;
  long weight = 0;
  long dim = 0;
  std::vector<PrecisionReal> a_n;  // a_1 .. a_|n| of h
  SymbolicSum symbolic;            // n symbolic; the cusp term is a single a_n/n^d symbol
};

inline SymbolicSum rhs_symbolic(const ConvolutionParams& p) {
  const ZTerm z12 = z_term(p.d, p.r1, p.r2, p.n), z21 = z_term(p.d, p.r2, p.r1, p.n);
  SymbolicSum s = z12.symbolic().with_sigma(p.r1).scaled(sign_pow(p.d));
  s += z21.symbolic().with_sigma(p.r2).scaled(-1);
  if (dim_cusp(p.k()) > 0) {
    SymKey c;
    c.cusp_pow = p.d;
    s.add(c, 1);
  }
  return s;
}

// Z-part of the identity at n (negative n uses |n|).
inline PrecisionReal rhs_z_part(const ConvolutionParams& p, mpfr_prec_t prec) {
  p.validate();
  const long an = std::labs(p.n);
  const ZTerm z12 = z_term(p.d, p.r1, p.r2, p.n), z21 = z_term(p.d, p.r2, p.r1, p.n);
  return z12.value(prec) * Rational(sign_pow(p.d) * sigma(p.r1, an)) - z21.value(prec) * Rational(sigma(p.r2, an));
}

inline RhsPrediction rhs_predict(const ConvolutionParams& p, mpfr_prec_t prec) {
  p.validate();
  const long an = std::labs(p.n);
  const mpfr_prec_t wp = prec + 16;
  RhsPrediction r;
  r.z12 = z_term(p.d, p.r1, p.r2, p.n);
  r.z21 = z_term(p.d, p.r2, p.r1, p.n);
  r.z_part = rhs_z_part(p, wp);
  r.weight = p.k();
  r.dim = dim_cusp(r.weight);
  r.cusp_part = PrecisionReal(0L, wp);
  if (r.dim > 0) {
    const CuspData cd = cusp_data(p, prec, an + 1);
    for (long m = 1; m <= an; ++m) r.a_n.push_back(cd.coeff(m, wp));
    r.cusp_part = r.a_n.back() / pow(PrecisionReal(an, wp), p.d);
  }
  r.value = r.z_part + r.cusp_part;
  r.symbolic = rhs_symbolic(p);
  return r;
}

}  // namespace divisum
