// Recovers tau(m) from convolution sums alone: the d=3, r=(2,2) sum minus its Z-part is
// a multiple of tau(m)/m^3, and the multiple is fixed by m = 1.
#include <iostream>

#include "divisum/divisum.hpp"

int main() {
  using namespace divisum;
  const mpfr_prec_t prec = 160;
  const ExtractionResult ex = extract_cusp_coeffs(3, 2, 2, 6, {20000, 6, 4}, prec, {});
  for (std::size_t m = 1; m <= ex.a.size(); ++m) {
    const PrecisionReal ratio = ex.a[m - 1] / ex.a[0];
    std::cout << "tau(" << m << ") ~ " << ratio.str(15) << '\n';
  }
  return ex.consistent ? 0 : 1;
}
