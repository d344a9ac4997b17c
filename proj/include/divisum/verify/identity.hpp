#pragma once

#include <chrono>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "divisum/sums/extrapolate.hpp"
#include "divisum/verify/rhs.hpp"

namespace divisum {

struct VerifyOptions {
  double rel_tol = 1e-6;
  SumOptions sum;
  bool deterministic = false;  // report wall_ms = 0 so output is byte-stable
};

struct VerificationReport {
  ConvolutionParams params;
  TailEstimate lhs;
  RhsPrediction rhs;
  long double residual = 0;
  long double relative_residual = 0;
  double rel_tol = 0;
  bool rigorous = false;
  bool pass = false;
  double wall_ms = 0;
  std::string message;
};

// Tail-model schedule with enough levels for the log terms that sigma_0 brings in.
inline Schedule default_schedule(const ConvolutionParams& p) {
  const int L = (p.r1 == 0) + (p.r2 == 0);
  if (L == 0) return {20000, 6, 4};
  if (L == 1) return {20000, 7, 3};
  return {20000, 8, 2};
}

inline VerificationReport verify_identity(const ConvolutionParams& p, const Schedule& sch, mpfr_prec_t prec,
                                          const VerifyOptions& opt = {}) {
  p.validate();
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  r.params = p;
  r.rel_tol = opt.rel_tol;
  r.lhs = lhs_extrapolated(p, sch, prec, opt.sum);
  r.rhs = rhs_predict(p, prec);
  r.residual = detail::up((r.lhs.extrapolated - r.rhs.value).abs_up());
  const long double mag = std::max(r.rhs.value.abs_down(), std::numeric_limits<long double>::min());
  r.relative_residual = r.residual / mag;
  r.rigorous = r.lhs.rigorous;
  r.pass = r.lhs.fit_ok && r.relative_residual <= opt.rel_tol;
  if (!r.lhs.fit_ok) r.message = "extrapolation failed: " + r.lhs.message;
  if (!opt.deterministic)
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

namespace detail {

inline std::string num(const PrecisionReal& x, int digits) { return x.str(digits); }

inline std::string ld_str(long double v) {
  std::ostringstream os;
  os.precision(6);
  os << std::scientific << v;
  return os.str();
}

}  // namespace detail

// Decimal strings for high-precision values, 6-digit scientific strings for error radii.
inline nlohmann::json to_json(const VerificationReport& r, int digits = 30) {
  using nlohmann::json;
  json lhs_partials = json::array();
  for (const auto& ps : r.lhs.partial_sums)
    lhs_partials.push_back({ps.N, detail::num(ps.S, digits), detail::ld_str(ps.S.rad())});
  json z_terms = json::array();
  for (const ZTerm* z : {&r.rhs.z12, &r.rhs.z21})
    z_terms.push_back({{"alpha", z->alpha}, {"beta", z->beta}, {"expr", z->str()}, {"value", detail::num(z->value(128), digits)}});
  json a_n = json::array();
  for (const auto& a : r.rhs.a_n) a_n.push_back(detail::num(a, digits));
  json j;
  j["params"] = {{"d", r.params.d}, {"r1", r.params.r1}, {"r2", r.params.r2}, {"n", r.params.n}};
  j["lhs"] = {{"partials", lhs_partials},
              {"extrapolated", detail::num(r.lhs.extrapolated, digits)},
              {"err", detail::ld_str(r.lhs.error_estimate)},
              {"rigorous", r.lhs.rigorous}};
  j["rhs"] = {{"value", detail::num(r.rhs.value, digits)},
              {"err", detail::ld_str(r.rhs.value.rad())},
              {"z_terms", z_terms},
              {"cusp", {{"weight", r.rhs.weight}, {"dim", r.rhs.dim}, {"a_n", a_n}}}};
  j["residual"] = detail::ld_str(r.residual);
  j["pass"] = r.pass;
  j["wall_ms"] = r.wall_ms;
  if (!r.message.empty()) j["message"] = r.message;
  return j;
}

inline std::string csv_header() { return "d,r1,r2,n,lhs,lhs_err,rigorous,rhs,rhs_err,residual,pass,wall_ms"; }

inline std::string to_csv(const VerificationReport& r, int digits = 30) {
  std::ostringstream os;
  os << r.params.d << ',' << r.params.r1 << ',' << r.params.r2 << ',' << r.params.n << ','
     << detail::num(r.lhs.extrapolated, digits) << ',' << detail::ld_str(r.lhs.error_estimate) << ','
     << (r.lhs.rigorous ? "true" : "false") << ',' << detail::num(r.rhs.value, digits) << ','
     << detail::ld_str(r.rhs.value.rad()) << ',' << detail::ld_str(r.residual) << ',' << (r.pass ? "true" : "false")
     << ',' << r.wall_ms;
  return os.str();
}

inline std::string to_text(const VerificationReport& r, int digits = 20) {
  std::ostringstream os;
  os << r.params.str() << "  LHS " << detail::num(r.lhs.extrapolated, digits) << " (+/- "
     << detail::ld_str(r.lhs.error_estimate) << ")  RHS " << detail::num(r.rhs.value, digits) << "  rel.residual "
     << detail::ld_str(r.relative_residual) << "  " << (r.pass ? "PASS" : "FAIL");
  if (!r.rigorous) os << "  [non-rigorous]";
  if (!r.message.empty()) os << "  " << r.message;
  return os.str();
}

}  // namespace divisum
