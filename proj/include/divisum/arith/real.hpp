#pragma once

#include <mpfr.h>

#include <climits>
#include <cmath>
#include <string>
#include <utility>

#include "divisum/arith/rational.hpp"

namespace divisum {

// Owning wrapper around an mpfr_t.  Rounding is to nearest unless stated.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 256) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(const Real& o, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  // Returns the MPFR ternary value of the assignment.
  int set(const Rational& q, mpfr_rnd_t rnd = MPFR_RNDN) { return mpfr_set_q(v_, q.get_mpq_t(), rnd); }
  int set(const Integer& z, mpfr_rnd_t rnd = MPFR_RNDN) { return mpfr_set_z(v_, z.get_mpz_t(), rnd); }
  int set(long x) { return mpfr_set_si(v_, x, MPFR_RNDN); }
  int set(const Real& x) { return mpfr_set(v_, x.v_, MPFR_RNDN); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  long exponent() const { return is_zero() ? LONG_MIN / 2 : static_cast<long>(mpfr_get_exp(v_)); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_ld(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_ld(v_, rnd); }

  // Upper bound on |x| as a long double.
  long double abs_up() const {
    if (mpfr_sgn(v_) >= 0) return mpfr_get_ld(v_, MPFR_RNDU);
    return -mpfr_get_ld(v_, MPFR_RNDD);
  }
  // Lower bound on |x| as a long double.
  long double abs_down() const {
    if (mpfr_sgn(v_) >= 0) return mpfr_get_ld(v_, MPFR_RNDD);
    return -mpfr_get_ld(v_, MPFR_RNDU);
  }

  Rational to_rational() const {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

  // Decimal string with the given number of significant digits (0: enough for the precision).
  std::string str(int digits = 0) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (digits <= 0) digits = static_cast<int>(std::ceil(static_cast<double>(prec()) * 0.30103)) + 1;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

 private:
  mpfr_t v_;
};

inline Real real_from_string(const std::string& s, mpfr_prec_t prec) {
  Real r(prec);
  if (mpfr_set_str(r.get(), s.c_str(), 10, MPFR_RNDN) != 0) throw domain_error("invalid decimal string: " + s);
  return r;
}

}  // namespace divisum
