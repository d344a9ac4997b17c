#include <catch_amalgamated.hpp>

#include "divisum/verify/extract.hpp"
#include "divisum/verify/gamma.hpp"
#include "divisum/verify/identity.hpp"
#include "divisum/verify/named.hpp"
#include "divisum/verify/physics.hpp"
#include "oracles.hpp"

using namespace divisum;

TEST_CASE("Gamma factors of the printed weightings", "[verify][gamma]") {
  const std::map<std::string, Rational> expect = {
      {"conjecture", -10}, {"tau", 42}, {"d1r0", -2}, {"d3r0", -6}, {"psi2", Rational(2, 45)}};
  for (const auto& id : named_identities()) {
    for (long n : {1L, 3L, -2L}) {
      const ConvolutionParams p = id.params(n);
      const PhiWeighting w = canonicalize_phi(id.phi, p);
      const GammaCertificate c = certify_gamma(id.phi, w);
      INFO(id.name << " n=" << n);
      CHECK(c.certified);
      CHECK(c.gamma == expect.at(id.name));
      CHECK(static_cast<long>(c.points.size()) == id.d + id.r1 + id.r2 + 3);
    }
  }
  // leading log coefficients C_d
  CHECK(canonicalize_phi(named_identity("conjecture").phi, {1, 2, 2, 5}).C.at(1) == Rational(-6));
  CHECK(canonicalize_phi(named_identity("tau").phi, {3, 2, 2, 2}).C.at(3) == Rational(315));
  CHECK(canonicalize_phi(named_identity("d3r0").phi, {3, 0, 0, 2}).C.at(3) == Rational(-15, 2));
}

TEST_CASE("weightings that are not Q-multiples are rejected", "[verify][gamma]") {
  const NamedIdentity id = named_identity("conjecture");
  const ConvolutionParams p = id.params(1);
  PhiWeighting w = canonicalize_phi(id.phi, p);
  w.A[0] += 1;
  CHECK_FALSE(certify_gamma(id.phi, w).certified);
  RawWeighting grows;
  grows.add(1, 0, 0);
  CHECK_THROWS_AS(canonicalize_phi(grows, p), domain_error);
  RawWeighting pole;
  pole.add(1, -3, 0);
  CHECK_THROWS_AS(canonicalize_phi(pole, p), domain_error);
  RawWeighting scaled = id.phi;
  scaled.add(Rational(1, 1000), 0, 0);
  CHECK_THROWS(gamma_factor_certified(scaled, p));
}

TEST_CASE("derived right-hand sides match the printed ones", "[verify][gamma]") {
  for (const auto& id : named_identities()) {
    const NamedCheck c = check_named(id, 200);
    INFO(id.name << ": " << c.message);
    CHECK(c.z_match);
    CHECK(c.cusp_match);
    CHECK(c.pass);
  }
  const NamedCheck conj = check_named(named_identity("conjecture"), 128);
  // zeta(2) n^2 / 2 = pi^2 n^2 / 12 and 30 zeta'(-2) = -15/2 zeta(3) / pi^2
  CHECK(conj.derived_z.str() == "1/12*pi^2*n^2*sigma_2(n) - 15/2*zeta(3)*pi^-2*sigma_2(n)");
}

TEST_CASE("symbolic right-hand side evaluates to the numeric prediction", "[verify]") {
  for (const ConvolutionParams p : {ConvolutionParams{1, 2, 2, 3}, ConvolutionParams{3, 0, 0, 4}, ConvolutionParams{3, 2, 2, 2}}) {
    const RhsPrediction r = rhs_predict(p, 200);
    const PrecisionReal an = r.a_n.empty() ? PrecisionReal(0L, 200) : r.a_n.back();
    const PrecisionReal v = evaluate_symbolic(r.symbolic, p.n, an, 200);
    CHECK(oracle::rel_diff(v, r.value) < 1e-50L);
  }
}

TEST_CASE("identity holds for small n", "[verify]") {
  for (const ConvolutionParams p : {ConvolutionParams{1, 2, 2, 1}, ConvolutionParams{3, 2, 2, 3}, ConvolutionParams{2, 2, 0, 2}}) {
    const VerificationReport r = verify_identity(p, default_schedule(p), 160, {1e-8, {}, true});
    INFO(to_text(r));
    CHECK(r.pass);
    CHECK(r.wall_ms == 0);
  }
}

TEST_CASE("swap and negative n", "[verify]") {
  const ConvolutionParams p{2, 4, 2, 3};
  const VerificationReport a = verify_identity(p, default_schedule(p), 160, {1e-8, {}, true});
  const VerificationReport b = verify_identity(p.swapped(), default_schedule(p), 160, {1e-8, {}, true});
  const VerificationReport c = verify_identity(p.with_n(-3), default_schedule(p), 160, {1e-8, {}, true});
  CHECK(a.pass);
  CHECK(b.pass);
  CHECK(c.pass);
  const PrecisionReal swapped = b.lhs.extrapolated * Rational(sign_pow(p.d + 1));
  CHECK(oracle::rel_diff(swapped, a.lhs.extrapolated) < 1e-12L);
  CHECK(oracle::rel_diff(b.rhs.value * Rational(sign_pow(p.d + 1)), a.rhs.value) < 1e-40L);
  CHECK(oracle::rel_diff(c.rhs.value, a.rhs.value) < 1e-40L);
  CHECK_THROWS_AS(verify_identity(p.with_n(0), default_schedule(p), 160), domain_error);
}

TEST_CASE("JSON report follows the schema and round-trips", "[verify]") {
  const ConvolutionParams p{3, 2, 2, 2};
  const VerificationReport r = verify_identity(p, {20000, 5, 3}, 128, {1e-8, {}, true});
  const nlohmann::json j = to_json(r);
  for (const char* key : {"params", "lhs", "rhs", "residual", "pass", "wall_ms"}) CHECK(j.contains(key));
  for (const char* key : {"partials", "extrapolated", "err", "rigorous"}) CHECK(j["lhs"].contains(key));
  for (const char* key : {"value", "err", "z_terms", "cusp"}) CHECK(j["rhs"].contains(key));
  CHECK(j["rhs"]["cusp"]["weight"] == 12);
  CHECK(j["rhs"]["cusp"]["dim"] == 1);
  CHECK(j["rhs"]["cusp"]["a_n"].size() == 2);
  CHECK(j["lhs"]["partials"].size() == 5);
  CHECK(nlohmann::json::parse(j.dump()) == j);
  CHECK(to_csv(r).find("3,2,2,2,") == 0);
}

TEST_CASE("dimension-zero extraction finds no cusp part", "[verify]") {
  const ExtractionResult e = extract_cusp_coeffs(1, 2, 2, 4, {20000, 6, 4}, 128);
  CHECK(e.dim == 0);
  CHECK(e.consistent);
  for (std::size_t m = 0; m < e.a.size(); ++m) CHECK(e.a[m].mid().abs_up() <= 3 * e.err[m]);
}

TEST_CASE("weight-12 physics combination", "[verify][physics]") {
  const PhysicsReport r = physics_cancellation(256);
  CHECK(r.vanishes);
  CHECK(r.printed.abs_up() < 1e-80L);
  CHECK(r.routes_agree);
  CHECK(r.detectable);
  // the shift is 1e-20 times the two L(2) monomials
  const DeltaLValues v = delta_l_values(256);
  const PrecisionReal pi = const_pi(288);
  const PrecisionReal l2 = v.plain[2] * Rational(-382725, 53248) * v.plain[4] / pow(pi, 13) +
                           v.plain[2] * Rational(3189375, 53248) * v.plain[6] / pow(pi, 15);
  CHECK(std::fabs(static_cast<double>(r.shift / l2.abs_up()) * 1e20 - 1) < 1e-6);
  CHECK_THROWS_AS(physics_cancellation(32), domain_error);
}
