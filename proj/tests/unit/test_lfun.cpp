#include <catch_amalgamated.hpp>

#include "divisum/lfun/lfunctions.hpp"
#include "divisum/verify/named.hpp"
#include "oracles.hpp"

using namespace divisum;

TEST_CASE("functional equation of the completed L-function", "[lfun]") {
  for (long k : {12L, 16L, 24L}) {
    for (const auto& f : hecke_eigenforms(k, 256)) {
      for (long s = 1; s < k / 2; ++s) {
        const PrecisionReal a = completed_L(f, s, 256).value;
        const PrecisionReal b = completed_L(f, k - s, 256).value * Rational(sign_pow(k / 2));
        CHECK(oracle::rel_diff(a, b) < 1e-60L);
      }
    }
  }
}

TEST_CASE("L(Delta, s) against the Dirichlet series", "[lfun]") {
  const long M = 3000;
  const QExpansion D = delta_q(M);
  const auto forms = hecke_eigenforms(12, 256);
  const Eigenform& f = forms.front();
  for (long s : {10L, 11L}) {
    Real sum(200), t(200), q(200);
    for (long m = 1; m < M; ++m) {
      q.set(D[m]);
      mpfr_set_si(t.get(), m, MPFR_RNDN);
      mpfr_pow_si(t.get(), t.get(), -s, MPFR_RNDN);
      mpfr_mul(t.get(), t.get(), q.get(), MPFR_RNDN);
      mpfr_add(sum.get(), sum.get(), t.get(), MPFR_RNDN);
    }
    // tail below 2 M^{6.5 - s} / (s - 6.5)
    CHECK(oracle::rel_diff(l_value(f, s, 200), sum) < 1e-9L);
  }
}

TEST_CASE("Petersson norm of Delta", "[lfun]") {
  const auto forms = hecke_eigenforms(12, 200);
  const Eigenform& f = forms.front();
  const PeterssonNorm n = petersson_norm(f, 200);
  const Real ref = oracle::parse("1.035362056804320922347816812225164593224e-6", 200);
  CHECK(oracle::rel_diff(n.value, ref) < 1e-35L);
}

TEST_CASE("lambda_Delta reproduces the printed tau coefficient", "[lfun]") {
  const auto forms = hecke_eigenforms(12, 256);
  const Eigenform& f = forms.front();
  const PrecisionReal lam = lambda_coeff({3, 2, 2, 1}, f, 256);
  const PrecisionReal target = l_value(f, 6, 256) * Rational(-75, 8) / l_value(f, 5, 256);
  CHECK(oracle::rel_diff(lam * Rational(42), target) < 1e-60L);
}

TEST_CASE("Eisenstein product inner product, two orderings", "[lfun]") {
  const auto forms = hecke_eigenforms(12, 200);
  const Eigenform& f = forms.front();
  for (auto [k1, k2, m1, m2] : std::vector<std::array<long, 4>>{{3, 3, 1, 1}, {4, 2, 2, 0}, {5, 1, 1, 1}}) {
    const InnerProductCheck c = inner_product_eisenstein_product(f, k1, k2, m1, m2, 200);
    CHECK(c.consistent);
    CHECK(oracle::rel_diff(c.value, c.alternate) < 1e-50L);
  }
  CHECK_THROWS_AS(inner_product_eisenstein_product(f, 3, 3, 4, 1, 64), domain_error);
}
