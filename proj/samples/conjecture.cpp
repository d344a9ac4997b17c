// Weighted sum with phi(n1,n2) and sigma_2 sigma_2 against its closed form, n = 1..5.
#include <iostream>

#include "divisum/divisum.hpp"

int main() {
  using namespace divisum;
  const NamedIdentity id = named_identity("conjecture");
  const NamedCheck chk = check_named(id, 128);
  std::cout << "Gamma = " << chk.gamma.gamma << ", RHS = " << chk.derived_z.str() << '\n';
  bool ok = chk.pass;
  for (long n = 1; n <= 5; ++n) {
    const ConvolutionParams p = id.params(n);
    const NamedReport r = verify_named(id, chk, n, default_schedule(p), 128, {});
    std::cout << "n=" << n << "  sum " << r.lhs.str(20) << "  closed form " << r.printed_rhs.str(20) << "  rel "
              << static_cast<double>(r.relative_residual) << '\n';
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}
