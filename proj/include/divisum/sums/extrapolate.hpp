#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "divisum/sums/lhs.hpp"

namespace divisum {

struct TailEstimate {
  std::vector<PartialSum> partial_sums;
  PrecisionReal extrapolated;
  long double error_estimate = 0;
  bool rigorous = false;
  bool fit_ok = true;
  int terms = 0;
  int log_power = 0;
  std::string message;
};

struct FitResult {
  PrecisionReal limit;
  std::vector<Real> weights;  // limit = sum_i weights[i] * S_i
};

namespace detail {

// Least-squares fit of S(N) = S_inf - sum_{j=j0}^{j0+terms-1} sum_{e<=L} c_{j,e} (log N)^e N^{-j};
// normal equations solved at high precision.
inline FitResult fit_limit(const std::vector<long>& Ns, const std::vector<Real>& S, long j0, int terms, int L,
                           mpfr_prec_t prec) {
  const std::size_t m = Ns.size();
  const std::size_t k = 1 + static_cast<std::size_t>(terms) * (L + 1);
  if (m < k) throw convergence_error("extrapolation: not enough levels for the requested fit");
  const mpfr_prec_t wp = prec + 192;
  // Columns scaled by N0: u = N0 / N.
  std::vector<std::vector<Real>> A(m, std::vector<Real>(k, Real(wp)));
  const Real N0(Ns.front(), wp);
  for (std::size_t i = 0; i < m; ++i) {
    Real u(wp), lg(wp);
    mpfr_set_si(u.get(), Ns[i], MPFR_RNDN);
    mpfr_log(lg.get(), u.get(), MPFR_RNDN);
    mpfr_div(u.get(), N0.get(), u.get(), MPFR_RNDN);
    mpfr_set_si(A[i][0].get(), 1, MPFR_RNDN);
    std::size_t col = 1;
    for (int t = 0; t < terms; ++t) {
      Real base(wp);
      mpfr_pow_si(base.get(), u.get(), j0 + t, MPFR_RNDN);
      for (int e = 0; e <= L; ++e) {
        Real v(wp), le(wp);
        mpfr_pow_si(le.get(), lg.get(), e, MPFR_RNDN);
        mpfr_mul(v.get(), base.get(), le.get(), MPFR_RNDN);
        A[i][col++] = v;
      }
    }
  }
  // G = A^T A, inverted by Gauss-Jordan with partial pivoting.
  std::vector<std::vector<Real>> G(k, std::vector<Real>(2 * k, Real(wp)));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      Real s(wp), t(wp);
      for (std::size_t i = 0; i < m; ++i) {
        mpfr_mul(t.get(), A[i][a].get(), A[i][b].get(), MPFR_RNDN);
        mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDN);
      }
      G[a][b] = s;
    }
    mpfr_set_si(G[a][k + a].get(), 1, MPFR_RNDN);
  }
  long double scale = 0;
  for (std::size_t a = 0; a < k; ++a) scale = std::max(scale, G[a][a].abs_up());
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < k; ++r)
      if (mpfr_cmpabs(G[r][c].get(), G[piv][c].get()) > 0) piv = r;
    if (G[piv][c].abs_up() < std::ldexp(scale, -static_cast<int>(prec))) throw convergence_error("extrapolation: fit matrix is singular");
    std::swap(G[c], G[piv]);
    Real inv(wp);
    mpfr_ui_div(inv.get(), 1, G[c][c].get(), MPFR_RNDN);
    for (auto& x : G[c]) mpfr_mul(x.get(), x.get(), inv.get(), MPFR_RNDN);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c || G[r][c].is_zero()) continue;
      Real f(G[r][c]), t(wp);
      for (std::size_t j = 0; j < 2 * k; ++j) {
        mpfr_mul(t.get(), f.get(), G[c][j].get(), MPFR_RNDN);
        mpfr_sub(G[r][j].get(), G[r][j].get(), t.get(), MPFR_RNDN);
      }
    }
  }
  // weights w_i = sum_b Ginv[0][b] A[i][b]
  FitResult out{PrecisionReal(prec), {}};
  Real lim(wp);
  for (std::size_t i = 0; i < m; ++i) {
    Real w(wp), t(wp);
    for (std::size_t b = 0; b < k; ++b) {
      mpfr_mul(t.get(), G[0][k + b].get(), A[i][b].get(), MPFR_RNDN);
      mpfr_add(w.get(), w.get(), t.get(), MPFR_RNDN);
    }
    mpfr_mul(t.get(), w.get(), S[i].get(), MPFR_RNDN);
    mpfr_add(lim.get(), lim.get(), t.get(), MPFR_RNDN);
    out.weights.push_back(std::move(w));
  }
  out.limit = PrecisionReal(Real(lim, prec), 0);
  out.limit.add_error(detail::rounding_bound(out.limit.mid(), 1));
  return out;
}

}  // namespace detail

// Limit of a sequence of partial sums under the tail model above.  With terms = 0
// the last partial sum is returned unchanged.  The error estimate is the largest
// change from dropping the last correction term, over the full fit and the last two
// level windows, plus the propagated partial-sum radii.
inline TailEstimate extrapolate(const std::vector<PartialSum>& partials, long j0, int terms, int log_power,
                                mpfr_prec_t prec) {
  if (partials.empty()) throw domain_error("extrapolate: no partial sums");
  if (terms < 0) throw domain_error("extrapolate: terms must be >= 0");
  TailEstimate est;
  est.partial_sums = partials;
  est.terms = terms;
  est.log_power = log_power;
  std::vector<long> Ns;
  std::vector<Real> S;
  for (const auto& p : partials) {
    Ns.push_back(p.N);
    S.push_back(p.S.mid());
  }
  auto fit = [&](int t) {
    if (t == 0) {
      FitResult r{partials.back().S, {}};
      r.weights.assign(partials.size(), Real(0L, prec));
      mpfr_set_si(r.weights.back().get(), 1, MPFR_RNDN);
      return r;
    }
    return detail::fit_limit(Ns, S, j0, t, log_power, prec);
  };
  try {
    FitResult hi = fit(terms);
    est.extrapolated = hi.limit;
    long double prop = 0;
    for (std::size_t i = 0; i < partials.size(); ++i) prop += hi.weights[i].abs_up() * partials[i].S.rad();
    if (terms == 0) {
      est.error_estimate = partials.back().S.rad();
    } else {
      FitResult lo = fit(terms - 1);
      long double spread = (hi.limit - lo.limit).abs_up();
      // Lower-order fits on the last two level windows catch erratic tail components
      // that the all-level spread misses.
      if (terms > 1) {
        const std::size_t klo = 1 + static_cast<std::size_t>(terms - 1) * (log_power + 1);
        for (std::size_t back = 0; back < 2 && Ns.size() >= klo + back; ++back) {
          const std::size_t end = Ns.size() - back;
          const std::vector<long> wN(Ns.begin() + (end - klo), Ns.begin() + end);
          const std::vector<Real> wS(S.begin() + (end - klo), S.begin() + end);
          try {
            const FitResult w = detail::fit_limit(wN, wS, j0, terms - 1, log_power, prec);
            spread = std::max(spread, (hi.limit - w.limit).abs_up());
          } catch (const convergence_error&) {
          }
        }
      }
      est.error_estimate = detail::up(spread + prop);
    }
    est.extrapolated.set_rad(est.extrapolated.rad() + prop);
  } catch (const convergence_error& e) {
    est.fit_ok = false;
    est.message = e.what();
    est.extrapolated = partials.back().S;
    est.error_estimate = std::numeric_limits<long double>::infinity();
  }
  return est;
}

// Partial sums at N = base_N * 2^i and their extrapolated limit.  Log powers in
// the tail model equal the number of vanishing r's (sigma_0 has mean order log m).
inline TailEstimate lhs_extrapolated(const ConvolutionParams& p, const Schedule& sch, mpfr_prec_t prec,
                                     const SumOptions& opt = {}) {
  p.validate();
  if (sch.levels < 1 || sch.base_N < 1) throw domain_error("lhs_extrapolated: need levels >= 1 and base_N >= 1");
  if (sch.terms > 0 && sch.levels < sch.terms + 1) throw domain_error("lhs_extrapolated: need levels >= terms + 1");
  std::vector<long> Ns;
  for (int i = 0; i < sch.levels; ++i) Ns.push_back(sch.base_N << i);
  auto partials = lhs_partials(p, Ns, prec, opt);
  const int L = (p.r1 == 0) + (p.r2 == 0);
  TailEstimate est = extrapolate(partials, p.d, sch.terms, L, prec);
  if (sch.terms == 0 && Ns.back() > 2 * std::labs(p.n)) {
    TailBound tb = tail_bound(p, Ns.back());
    est.error_estimate = detail::up(est.error_estimate + tb.bound);
    est.extrapolated.add_error(tb.bound);
    est.rigorous = tb.rigorous;
  }
  return est;
}

}  // namespace divisum
