#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include <mpfr.h>

#include "divisum/sums/sigma.hpp"

namespace divisum {

// log m for 1 <= m <= M at a fixed precision, stored contiguously as raw MPFR
// significands.  Composite entries are sums along the smallest-prime-factor chain,
// so each entry is within 2^{6-w} log m of the truth for M < 2^31.
class LogTable {
 public:
  LogTable(std::uint32_t M, mpfr_prec_t w) : M_(M), w_(w) {
    limbs_ = mpfr_custom_get_size(w) / sizeof(mp_limb_t);
    store_.assign(static_cast<std::size_t>(M + 1) * limbs_, 0);
    exp_.assign(M + 1, 0);
    kind_.assign(M + 1, MPFR_ZERO_KIND);
    auto spf = spf_table(M);
    mpfr_t v, a, b;
    for (std::uint32_t m = 2; m <= M; ++m) {
      mpfr_custom_init(slot(m), w);
      mpfr_custom_init_set(v, MPFR_ZERO_KIND, 0, w, slot(m));
      const std::uint32_t p = (*spf)[m];
      if (p == m) {
        mpfr_log_ui(v, m, MPFR_RNDN);
      } else {
        view(a, p);
        view(b, m / p);
        mpfr_add(v, a, b, MPFR_RNDN);
      }
      kind_[m] = mpfr_custom_get_kind(v);
      exp_[m] = mpfr_get_exp(v);
    }
  }

  std::uint32_t limit() const { return M_; }
  mpfr_prec_t prec() const { return w_; }
  long double relative_error() const { return std::ldexp(1.0L, 6 - static_cast<int>(w_)); }

  // Read-only view of log m (valid while the table lives).
  void view(mpfr_t out, std::uint32_t m) const {
    mpfr_custom_init_set(out, kind_[m], kind_[m] == MPFR_REGULAR_KIND ? exp_[m] : 0, w_,
                         const_cast<mp_limb_t*>(&store_[static_cast<std::size_t>(m) * limbs_]));
  }

 private:
  void* slot(std::uint32_t m) { return &store_[static_cast<std::size_t>(m) * limbs_]; }

  std::uint32_t M_;
  mpfr_prec_t w_;
  std::size_t limbs_;
  std::vector<mp_limb_t> store_;
  std::vector<mpfr_exp_t> exp_;
  std::vector<int> kind_;
};

inline std::shared_ptr<const LogTable> log_table(std::uint32_t M, mpfr_prec_t w) {
  static std::mutex mu;
  static std::shared_ptr<const LogTable> cached;
  std::lock_guard<std::mutex> lock(mu);
  if (!cached || cached->limit() < M || cached->prec() < w) {
    if (cached) {
      M = std::max(M, cached->limit());
      w = std::max(w, cached->prec());
    }
    cached.reset();
    cached = std::make_shared<const LogTable>(M, w);
  }
  return cached;
}

}  // namespace divisum
