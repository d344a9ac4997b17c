// Q_d^{(a,b)}(x) = P(x) log((x+1)/(x-1)) + R(x)/(x-1)^a (x+1)^b for small parameters.
#include <iostream>

#include "divisum/divisum.hpp"

int main() {
  using namespace divisum;
  for (long d = 1; d <= 3; ++d)
    for (long a : {0L, 2L})
      for (long b : {0L, 2L}) {
        const QSecondKind q = q_construct(d, a, b);
        std::cout << "d=" << d << " a=" << a << " b=" << b << "  P:";
        for (const auto& c : q.P.coeffs()) std::cout << ' ' << c;
        std::cout << "  R:";
        for (const auto& c : q.R.coeffs()) std::cout << ' ' << c;
        std::cout << '\n';
      }
}
