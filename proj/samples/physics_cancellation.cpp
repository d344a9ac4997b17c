// The weight-12 cusp contributions in the r = 5 combination cancel.
#include <iostream>

#include "divisum/divisum.hpp"

int main() {
  using namespace divisum;
  const PhysicsReport r = physics_cancellation(256);
  std::cout << "L-monomial route " << r.printed.str(12) << " +/- " << r.printed.rad_str() << '\n'
            << "D route          " << r.d_route.str(12) << " +/- " << r.d_route.rad_str() << '\n'
            << "shift under L(2) -> L(2)(1 + 1e-20): " << static_cast<double>(r.shift) << '\n';
  return r.pass ? 0 : 1;
}
