#pragma once

#include <string>

#include "divisum/arith/constants.hpp"
#include "divisum/lfun/lfunctions.hpp"
#include "divisum/modforms/eigenforms.hpp"
#include "divisum/verify/named.hpp"

namespace divisum {

// L-values of Delta entering the weight-12 cancellation, optionally with L(2) scaled.
struct DeltaLValues {
  PrecisionReal star[7];  // L*(s) for s = 1..6 (index s)
  PrecisionReal plain[7];
};

inline DeltaLValues delta_l_values(mpfr_prec_t prec, const PrecisionReal* l2_factor = nullptr) {
  const mpfr_prec_t wp = prec + 32;
  const auto forms = hecke_eigenforms(12, default_truncation(12, wp), wp);
  const Eigenform& f = forms.at(0);
  const PrecisionReal two_pi = const_pi(wp) * Rational(2);
  DeltaLValues v;
  for (long s = 1; s <= 6; ++s) {
    v.star[s] = completed_L(f, s, wp).value;
    if (s == 2 && l2_factor) v.star[s] = v.star[s] * *l2_factor;
    v.plain[s] = v.star[s] * pow(two_pi, s) / PrecisionReal(factorial(s - 1), wp);
  }
  return v;
}

// (-1)^{d + r2/2 + 1} 2^{-k} L*(d+1) L*(d+r1+1) binom(2d+r1+r2, d)
inline PrecisionReal physics_D(long r1, long r2, long d, const DeltaLValues& v) {
  const long k = 2 * d + r1 + r2 + 2;
  if (k != 12) throw domain_error("physics_D: weight must be 12");
  PrecisionReal x = v.star[d + 1] * v.star[d + r1 + 1] * Rational(sign_pow(d + r2 / 2 + 1) * binomial(2 * d + r1 + r2, d));
  return x.mul_2exp(-k);
}

struct PhysicsReport {
  PrecisionReal printed;   // L-monomial form
  PrecisionReal d_route;   // alpha_5, beta_5, gamma_5 weighting of D(2,2,3), D(4,4,1), D(2,6,1)
  long double route_gap = 0;        // |printed + d_route| (the monomial form is the negated D sum)
  long double route_radius = 0;
  PrecisionReal perturbed;          // printed form with L(2) scaled by 1 + 1e-20
  PrecisionReal perturbed_d_route;
  long double perturbed_route_gap = 0;
  long double shift = 0;            // |perturbed - printed|
  bool vanishes = false;
  bool routes_agree = false;
  bool detectable = false;  // shift well above the vanishing tolerance
  bool sensitive = false;   // shift above shift_floor
  bool pass = false;
  double tol = 1e-40;
  double shift_floor = 1e-23;
};

namespace detail {

inline PrecisionReal physics_printed(const DeltaLValues& v, mpfr_prec_t wp) {
  const PrecisionReal pi = const_pi(wp);
  const PrecisionReal* L = v.plain;
  return L[2] * L[4] * Rational(-382725, 53248) / pow(pi, 13) - L[4] * L[6] * Rational(1148175, 26624) / pow(pi, 17) +
         L[2] * L[6] * Rational(3189375, 53248) / pow(pi, 15);
}

inline PrecisionReal physics_d_route(const DeltaLValues& v, mpfr_prec_t wp) {
  const PrecisionReal pi = const_pi(wp);
  const PrecisionReal a5 = PrecisionReal(Rational(-135, 52), wp) / pow(pi, 3);
  const PrecisionReal b5 = PrecisionReal(Rational(-30375, 832), wp) / pow(pi, 5);
  const PrecisionReal g5 = PrecisionReal(Rational(-42525, 832), wp) / pow(pi, 5);
  return a5 * physics_D(2, 2, 3, v) * Rational(4032, 5) / pow(pi, 4) +
         b5 * physics_D(4, 4, 1, v) * Rational(7168, 5) / pow(pi, 2) +
         g5 * physics_D(2, 6, 1, v) * Rational(3072, 5) / pow(pi, 2);
}

}  // namespace detail

inline PhysicsReport physics_cancellation(mpfr_prec_t prec, double tol = 1e-40) {
  if (prec < 64) throw domain_error("physics_cancellation: precision must be >= 64 bits");
  const mpfr_prec_t wp = prec + 32;
  PhysicsReport r;
  r.tol = tol;
  const DeltaLValues v = delta_l_values(prec);
  r.printed = detail::physics_printed(v, wp);
  r.d_route = detail::physics_d_route(v, wp);
  const PrecisionReal gap = r.printed + r.d_route;
  r.route_gap = gap.abs_up();
  r.route_radius = r.printed.rad() + r.d_route.rad();

  PrecisionReal factor = PrecisionReal(1L, wp) + PrecisionReal(Rational(1), wp) / pow(PrecisionReal(10L, wp), 20);
  const DeltaLValues pv = delta_l_values(prec, &factor);
  r.perturbed = detail::physics_printed(pv, wp);
  r.perturbed_d_route = detail::physics_d_route(pv, wp);
  r.perturbed_route_gap = (r.perturbed + r.perturbed_d_route).abs_up();
  r.shift = (r.perturbed - r.printed).abs_down();

  r.vanishes = r.printed.abs_up() <= tol && r.d_route.abs_up() <= tol;
  r.routes_agree = r.route_gap <= r.route_radius * 2 + tol && r.perturbed_route_gap <= tol;
  r.detectable = r.shift >= 1e6L * tol;
  r.sensitive = r.shift >= r.shift_floor;
  r.pass = r.vanishes && r.routes_agree && r.detectable;
  return r;
}

}  // namespace divisum
