#pragma once

#include <functional>
#include <string>
#include <vector>

#include "divisum/arith/constants.hpp"
#include "divisum/arith/special.hpp"
#include "divisum/verify/gamma.hpp"
#include "divisum/verify/identity.hpp"

namespace divisum {

// A printed identity: sum phi(n1,n2) sigma_r1(n1) sigma_r2(n2) = printed right-hand side.
struct NamedIdentity {
  std::string name;
  long d = 1, r1 = 0, r2 = 0;
  long n_first = 1, n_last = 1;
  double rel_tol = 1e-6;
  RawWeighting phi;
  SymbolicSum printed_z;  // n symbolic
  std::string printed_text;
  // Printed coefficient of each eigenform (sorted by a_2 ascending) in the cusp part.
  std::function<std::vector<PrecisionReal>(const std::vector<Eigenform>&, mpfr_prec_t)> printed_cusp;

  ConvolutionParams params(long n) const { return {d, r1, r2, n}; }
};

// L(f,s) from the completed value.
inline PrecisionReal l_value(const Eigenform& f, long s, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 32;
  PrecisionReal two_pi = const_pi(wp) * Rational(2);
  return completed_L(f, s, wp).value * pow(two_pi, s) / PrecisionReal(factorial(s - 1), wp);
}

namespace detail {

inline SymKey sym(long n_pow, long sigma, long pi_pow = 0, bool log = false) {
  SymKey k;
  k.n_pow = n_pow;
  k.sigma = sigma;
  k.pi_pow = pi_pow;
  k.log = log;
  return k;
}

inline NamedIdentity named_conjecture() {
  NamedIdentity id{"conjecture", 1, 2, 2, 1, 20, 1e-6, {}, {}, {}, {}};
  id.phi.add(Rational(-1, 4), 2, -2)
      .add(Rational(-7, 2), 1, -1)
      .add(Rational(-1, 4), -2, 2)
      .add(Rational(-7, 2), -1, 1)
      .add(Rational(47, 2), 0, 0)
      .add_log_ratio(15, 0, 0)
      .add_log_ratio(-30, 1, 0, -1);
  id.printed_z.add_zeta(2, Rational(1, 2), sym(2, 2));
  id.printed_z.add_zeta_prime_neg_even(2, 30, sym(0, 2));
  id.printed_text = "(zeta(2) n^2/2 + 30 zeta'(-2)) sigma_2(n)";
  return id;
}

inline NamedIdentity named_tau() {
  NamedIdentity id{"tau", 3, 2, 2, 1, 10, 1e-8, {}, {}, {}, {}};
  RawWeighting half;
  half.add(1, 5, -2, -3).add(35, 4, -1, -3).add(-1099, 3, 0, -3).add(1575, 2, 1, -3);
  half.add_log_ratio(420, 3, 0, -3).add_log_ratio(-2100, 2, 1, -3);
  id.phi = half.symmetrized();
  id.printed_z.add_zeta(2, -1, sym(2, 2));
  id.printed_z.add_zeta_prime_neg_even(2, -420, sym(0, 2));
  id.printed_text = "-(zeta(2) n^2 + 420 zeta'(-2)) sigma_2(n) - 75 L(Delta,6) tau(|n|) / (8 L(Delta,5) |n|^3)";
  id.printed_cusp = [](const std::vector<Eigenform>& fs, mpfr_prec_t prec) {
    const Eigenform& f = fs.at(0);
    return std::vector<PrecisionReal>{l_value(f, 6, prec) * Rational(-75, 8) / l_value(f, 5, prec)};
  };
  return id;
}

inline NamedIdentity named_d1r0() {
  NamedIdentity id{"d1r0", 1, 0, 0, 1, 10, 1e-5, {}, {}, {}, {}};
  id.phi.add_log_ratio(1, 0, 1, -1).add_log_ratio(-1, 1, 0, -1).add(2, 0, 0);
  id.printed_z.add(sym(0, 0), 2);
  id.printed_z.add(sym(0, 0, 0, true), -1);
  id.printed_text = "(2 - log(4 pi^2 |n|)) sigma_0(n)";
  return id;
}

inline NamedIdentity named_d3r0() {
  NamedIdentity id{"d3r0", 3, 0, 0, 1, 10, 1e-8, {}, {}, {}, {}};
  id.phi.add(11, 0, 0).add(-60, 1, 1, -2);
  id.phi.add_log_ratio(-3, 3, 0, -3).add_log_ratio(27, 2, 1, -3).add_log_ratio(-27, 1, 2, -3).add_log_ratio(3, 0, 3, -3);
  id.printed_z.add(sym(0, 0), 11);
  id.printed_z.add(sym(0, 0, 0, true), -3);
  id.printed_text = "(11 - 3 log(4 pi^2 |n|)) sigma_0(n)";
  return id;
}

inline NamedIdentity named_psi2() {
  NamedIdentity id{"psi2", 8, 2, 4, 1, 6, 1e-10, {}, {}, {}, {}};
  auto& w = id.phi;
  w.add(7106, 7, 0, -7)
      .add(-22287, 6, 0, -6)
      .add(Rational(84626, 3), 5, 0, -5)
      .add(Rational(-110789, 6), 4, 0, -4)
      .add(Rational(33286, 5), 3, 0, -3)
      .add(Rational(-3893, 3), 2, 0, -2)
      .add(Rational(2614, 21), 1, 0, -1)
      .add(Rational(-1727, 420), 0, 0)
      .add(Rational(1, 63), -1, 0, 1)
      .add(Rational(1, 8190), -2, 0, 2)
      .add(Rational(-22, 63), 0, -1, 1)
      .add(Rational(-11, 1365), 0, -2, 2)
      .add(Rational(-1, 4095), 0, -3, 3)
      .add(Rational(-1, 180180), 0, -4, 4);
  const long c[9] = {11, -176, 924, -2112, 2310, -1232, 308, -32, 1};
  for (long t = 0; t <= 8; ++t) w.add_log_ratio(-c[t], 8 - t, t, -8);
  id.printed_z.add_zeta(4, Rational(1, 180180), sym(4, 2));
  id.printed_z.add_zeta(5, Rational(33, 4), sym(0, 2, -4));
  id.printed_z.add_zeta(2, Rational(-1, 8190), sym(2, 4));
  id.printed_z.add_zeta(3, Rational(1, 4), sym(0, 4, -2));
  id.printed_text =
      "(zeta(4) n^4/180180 + 33 zeta(5)/(4 pi^4)) sigma_2(n) + (-zeta(2) n^2/8190 + zeta(3)/(4 pi^2)) sigma_4(n) + a_n/n^8, "
      "h = sum_i L(9,f_i)/(168 L(8,f_i)) (-29 -/+ 3551/sqrt(144169)) f_i";
  id.printed_cusp = [](const std::vector<Eigenform>& fs, mpfr_prec_t prec) {
    const mpfr_prec_t wp = prec + 32;
    const PrecisionReal q = PrecisionReal(3551, wp) / sqrt(PrecisionReal(144169, wp));
    std::vector<PrecisionReal> out;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      // f_1 has the smaller a_2 = 540 - 12 sqrt(144169)
      PrecisionReal bracket = i == 0 ? q - Rational(29) : -q - Rational(29);
      out.push_back(l_value(fs[i], 9, prec) * bracket / (l_value(fs[i], 8, prec) * Rational(168)));
    }
    return out;
  };
  return id;
}

}  // namespace detail

inline std::vector<NamedIdentity> named_identities() {
  return {detail::named_conjecture(), detail::named_tau(), detail::named_d1r0(), detail::named_d3r0(),
          detail::named_psi2()};
}

inline NamedIdentity named_identity(const std::string& name) {
  for (auto& id : named_identities())
    if (id.name == name) return id;
  throw domain_error("unknown identity: " + name);
}

// Numerical value of a symbolic right-hand side at n; a_n/n^c uses the supplied a_|n|.
inline PrecisionReal evaluate_symbolic(const SymbolicSum& s, long n, const PrecisionReal& cusp_an, mpfr_prec_t prec) {
  const mpfr_prec_t wp = prec + 32;
  const long an = std::labs(n);
  const PrecisionReal pi = const_pi(wp);
  PrecisionReal total(0L, wp);
  for (const auto& [k, c] : s.terms) {
    PrecisionReal t(c, wp);
    if (k.zeta_odd) t = t * zeta_value(k.zeta_odd, wp);
    if (k.pi_pow) t = t * pow(pi, k.pi_pow);
    if (k.n_pow) t = t * Rational(rpow(Rational(n), k.n_pow));
    if (k.log) t = t * log(pi * pi * Rational(4 * an));
    if (k.sigma >= 0) t = t * Rational(sigma(k.sigma, an));
    if (k.cusp_pow >= 0) t = t * cusp_an / Rational(rpow(Rational(an), k.cusp_pow));
    total += t;
  }
  return total;
}

// Structural comparison of a printed identity with the general identity, independent of n.
struct NamedCheck {
  NamedIdentity identity;
  GammaCertificate gamma;
  PhiWeighting canonical;
  SymbolicSum derived_z;  // Gamma times the general Z-part
  bool z_match = false;
  std::vector<PrecisionReal> derived_cusp, printed_cusp;  // Gamma lambda_f against the printed coefficients
  long double cusp_deviation = 0;
  bool cusp_match = true;
  bool pass = false;
  std::string message;
};

inline NamedCheck check_named(const NamedIdentity& id, mpfr_prec_t prec) {
  NamedCheck out;
  out.identity = id;
  const ConvolutionParams p = id.params(1);
  out.canonical = canonicalize_phi(id.phi, p);
  out.gamma = certify_gamma(id.phi, out.canonical);
  SymbolicSum z = rhs_symbolic(p);
  SymKey cusp;
  cusp.cusp_pow = p.d;
  z.terms.erase(cusp);
  out.derived_z = z.scaled(out.gamma.gamma);
  out.z_match = out.derived_z == id.printed_z;
  const CuspData cd = cusp_data(p, prec);
  if (cd.dim > 0) {
    if (!id.printed_cusp) {
      out.cusp_match = false;
      out.message = "cusp space is nonzero but no printed cusp part";
    } else {
      out.printed_cusp = id.printed_cusp(cd.forms, prec);
      for (std::size_t i = 0; i < cd.forms.size(); ++i) {
        out.derived_cusp.push_back(cd.lambdas[i] * out.gamma.gamma);
        const PrecisionReal diff = out.derived_cusp[i] - out.printed_cusp.at(i);
        const long double rel = diff.abs_up() / out.printed_cusp[i].abs_down();
        out.cusp_deviation = std::max(out.cusp_deviation, rel);
      }
      out.cusp_match = out.cusp_deviation <= std::ldexp(1.0L, -static_cast<int>(prec) / 2);
    }
  } else if (id.printed_cusp) {
    out.cusp_match = false;
    out.message = "printed cusp part but the cusp space is zero";
  }
  if (!out.gamma.certified) out.message = "weighting is not a multiple of Q_d^{(r1,r2)}";
  else if (!out.z_match) out.message = "Z-part differs from the printed right-hand side";
  else if (!out.cusp_match && out.message.empty()) out.message = "cusp coefficients differ from the printed ones";
  out.pass = out.gamma.certified && out.z_match && out.cusp_match;
  return out;
}

// The printed identity at one n: LHS = Gamma * general LHS against the printed RHS.
struct NamedReport {
  VerificationReport theorem;
  Rational gamma;
  PrecisionReal lhs, printed_rhs;
  long double relative_residual = 0;
  bool pass = false;
};

inline NamedReport verify_named(const NamedIdentity& id, const NamedCheck& chk, long n, const Schedule& sch,
                                mpfr_prec_t prec, VerifyOptions opt) {
  const ConvolutionParams p = id.params(n);
  opt.rel_tol = id.rel_tol;
  NamedReport r;
  r.theorem = verify_identity(p, sch, prec, opt);
  r.gamma = chk.gamma.gamma;
  r.lhs = r.theorem.lhs.extrapolated * r.gamma;
  PrecisionReal cusp_an(0L, prec);
  if (chk.printed_cusp.size()) {
    const CuspData cd = cusp_data(p, prec, std::labs(n) + 1);
    for (std::size_t i = 0; i < cd.forms.size(); ++i) cusp_an += chk.printed_cusp[i] * cd.forms[i][std::labs(n)];
  }
  SymbolicSum s = id.printed_z;
  if (chk.printed_cusp.size()) {
    SymKey c;
    c.cusp_pow = id.d;
    s.add(c, 1);
  }
  r.printed_rhs = evaluate_symbolic(s, n, cusp_an, prec);
  const long double scale = std::max(r.printed_rhs.abs_up(), 1e-300L);
  r.relative_residual = (r.lhs - r.printed_rhs).abs_up() / scale;
  r.pass = chk.pass && r.theorem.pass && r.relative_residual <= id.rel_tol;
  return r;
}

}  // namespace divisum
