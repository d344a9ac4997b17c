#pragma once

#include <map>
#include <mutex>

#include "divisum/arith/precision_real.hpp"

namespace divisum {

// Process-wide cache of pi, Euler's gamma and log 2, one entry per precision.
class Constants {
 public:
  PrecisionReal pi;
  PrecisionReal euler_gamma;
  PrecisionReal log2;

  static const Constants& at(mpfr_prec_t prec) {
    static std::mutex mu;
    static std::map<mpfr_prec_t, Constants> table;
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(prec);
    if (it == table.end()) it = table.emplace(prec, Constants(prec)).first;
    return it->second;
  }

 private:
  explicit Constants(mpfr_prec_t prec) : pi(prec), euler_gamma(prec), log2(prec) {
    fill(pi, mpfr_const_pi(pi.mid().get(), MPFR_RNDN));
    fill(euler_gamma, mpfr_const_euler(euler_gamma.mid().get(), MPFR_RNDN));
    fill(log2, mpfr_const_log2(log2.mid().get(), MPFR_RNDN));
  }
  static void fill(PrecisionReal& x, int ternary) { x.set_rad(detail::rounding_bound(x.mid(), ternary)); }
};

inline PrecisionReal const_pi(mpfr_prec_t prec) { return Constants::at(prec).pi; }
inline PrecisionReal const_euler(mpfr_prec_t prec) { return Constants::at(prec).euler_gamma; }
inline PrecisionReal const_log2(mpfr_prec_t prec) { return Constants::at(prec).log2; }

}  // namespace divisum
