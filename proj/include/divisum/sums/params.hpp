#pragma once

#include <string>

#include "divisum/arith/errors.hpp"

namespace divisum {

struct ConvolutionParams {
  long d = 1;
  long r1 = 0;
  long r2 = 0;
  long n = 1;

  long k() const { return 2 * d + r1 + r2 + 2; }

  void validate() const {
    if (d < 1) throw domain_error("d must be >= 1");
    if (r1 < 0 || r2 < 0 || r1 % 2 != 0 || r2 % 2 != 0) throw domain_error("r1 and r2 must be nonnegative even integers");
    if (n == 0) throw domain_error("n must be nonzero");
  }

  ConvolutionParams swapped() const { return {d, r2, r1, n}; }
  ConvolutionParams with_n(long m) const { return {d, r1, r2, m}; }

  std::string str() const {
    return "d=" + std::to_string(d) + " r1=" + std::to_string(r1) + " r2=" + std::to_string(r2) + " n=" + std::to_string(n);
  }
};

// Truncation levels N_i = base_N * 2^i, i < levels; `terms` correction terms in the tail fit.
struct Schedule {
  long base_N = 20000;
  int levels = 6;
  int terms = 4;
};

}  // namespace divisum
