#pragma once

#include <vector>

#include "divisum/modforms/qexpansion.hpp"
#include "divisum/verify/identity.hpp"

namespace divisum {

struct ExtractionResult {
  long weight = 0;
  long dim = 0;
  std::vector<PrecisionReal> a;      // a[m-1] = extracted a_m
  std::vector<long double> err;      // extrapolation error carried to a_m
  std::vector<PrecisionReal> coords; // least-squares coordinates in the Victor Miller basis
  std::vector<PrecisionReal> predicted;
  long double max_deviation = 0;     // max_m |a_m - predicted_m| / err_m
  bool consistent = false;
};

// a_m = m^d (LHS(m) - Z-part(m)) for m = 1..n_max, then a weighted least-squares fit
// to the Victor Miller basis of S_k (trivial when S_k = 0).
inline ExtractionResult extract_cusp_coeffs(long d, long r1, long r2, long n_max, const Schedule& sch, mpfr_prec_t prec,
                                            const VerifyOptions& opt = {}) {
  ConvolutionParams p{d, r1, r2, 1};
  p.validate();
  ExtractionResult res;
  res.weight = p.k();
  res.dim = dim_cusp(res.weight);
  if (n_max < res.dim + 2) throw domain_error("extract_cusp_coeffs: need n_max >= dim + 2");
  const mpfr_prec_t wp = prec + 16;
  for (long m = 1; m <= n_max; ++m) {
    const ConvolutionParams pm = p.with_n(m);
    TailEstimate lhs = lhs_extrapolated(pm, sch, prec, opt.sum);
    if (!lhs.fit_ok) throw convergence_error("extract_cusp_coeffs: " + lhs.message);
    PrecisionReal zp = rhs_z_part(pm, wp);
    PrecisionReal md = pow(PrecisionReal(m, wp), d);
    PrecisionReal am = (PrecisionReal(lhs.extrapolated.mid(), 0) - zp) * md;
    res.err.push_back(detail::up((lhs.error_estimate + lhs.extrapolated.rad() + zp.rad()) * md.abs_up()));
    res.a.push_back(am);
  }
  std::vector<std::vector<Rational>> basis;  // basis[i][m]
  if (res.dim > 0)
    for (const auto& q : victor_miller_basis(res.weight, n_max + 1)) basis.push_back(q.coeffs);
  // Normal equations sum_m w_m b_i(m) b_j(m) c_j = sum_m w_m b_i(m) a_m with w_m = 1/err_m^2.
  const std::size_t D = static_cast<std::size_t>(res.dim);
  std::vector<std::vector<PrecisionReal>> G(D, std::vector<PrecisionReal>(D + 1, PrecisionReal(0L, wp)));
  for (long m = 1; m <= n_max; ++m) {
    const long double e = std::max(res.err[m - 1], std::numeric_limits<long double>::min());
    const PrecisionReal w(Rational(1) / Rational(static_cast<double>(e * e)), wp);
    for (std::size_t i = 0; i < D; ++i) {
      for (std::size_t j = 0; j < D; ++j) G[i][j] += w * (basis[i][m] * basis[j][m]);
      G[i][D] += w * PrecisionReal(res.a[m - 1].mid(), 0) * basis[i][m];
    }
  }
  for (std::size_t c = 0; c < D; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < D; ++r)
      if (G[r][c].abs_down() > G[piv][c].abs_down()) piv = r;
    std::swap(G[c], G[piv]);
    for (std::size_t r = 0; r < D; ++r) {
      if (r == c) continue;
      PrecisionReal f = G[r][c] / G[c][c];
      for (std::size_t j = c; j <= D; ++j) G[r][j] -= f * G[c][j];
    }
  }
  for (std::size_t i = 0; i < D; ++i) res.coords.push_back(G[i][D] / G[i][i]);
  res.consistent = true;
  for (long m = 1; m <= n_max; ++m) {
    PrecisionReal pred(0L, wp);
    for (std::size_t i = 0; i < D; ++i) pred += res.coords[i] * basis[i][m];
    res.predicted.push_back(pred);
    const long double dev = (res.a[m - 1] - pred).mid().abs_up();
    const long double e = std::max(res.err[m - 1], std::numeric_limits<long double>::min());
    res.max_deviation = std::max(res.max_deviation, dev / e);
    if (dev > 3 * e) res.consistent = false;
  }
  return res;
}

}  // namespace divisum
