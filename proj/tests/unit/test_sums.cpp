#include <catch_amalgamated.hpp>

#include "divisum/jacobi/second_kind.hpp"
#include "divisum/sums/extrapolate.hpp"
#include "divisum/sums/lhs.hpp"
#include "oracles.hpp"

using namespace divisum;

namespace {

// Direct term-by-term evaluation over max(|n1|, |n2|) <= N.
PrecisionReal brute_partial(const ConvolutionParams& p, long N, mpfr_prec_t prec) {
  const QSecondKind q = q_construct(p.d, p.r1, p.r2);
  PrecisionReal s(0L, prec);
  for (long n1 = -N; n1 <= N; ++n1) {
    const long n2 = p.n - n1;
    if (n1 == 0 || n2 == 0 || std::labs(n2) > N) continue;
    s += q_eval_real(q, make_rational(n2 - n1, p.n), prec) * Rational(sigma(p.r1, std::labs(n1)) * sigma(p.r2, std::labs(n2)));
  }
  return s;
}

PrecisionReal value_of(const LogCombination& c, mpfr_prec_t prec) {
  PrecisionReal v(c.rational_part, prec);
  for (const auto& [pr, co] : c.log_coeffs) v += log(PrecisionReal(pr, prec)) * co;
  return v;
}

}  // namespace

TEST_CASE("partial sums agree with direct evaluation", "[sums]") {
  for (auto p : std::vector<ConvolutionParams>{{1, 2, 2, 1}, {1, 0, 0, 3}, {3, 2, 2, 2}, {2, 4, 0, 5}, {3, 0, 2, -4}}) {
    for (long N : {10L, 57L}) {
      const PrecisionReal fast = lhs_partial(p, N, 160);
      const PrecisionReal ref = brute_partial(p, N, 300);
      INFO(p.str() << " N=" << N);
      CHECK((fast - ref).mid().abs_up() <= fast.rad() + 1e-40L * ref.abs_up());
      CHECK(fast.rad() < 1e-35L * (1 + ref.abs_up()));
    }
  }
}

TEST_CASE("exact partial sums", "[sums]") {
  const ConvolutionParams p{1, 2, 2, 3};
  const LogCombination e = lhs_partial_exact(p, 37);
  const PrecisionReal f = lhs_partial(p, 37, 200);
  CHECK(oracle::rel_diff(value_of(e, 300), f) < 1e-50L);
}

TEST_CASE("swap and sign symmetries hold exactly", "[sums]") {
  for (auto p : std::vector<ConvolutionParams>{{1, 2, 0, 3}, {2, 4, 2, 5}, {3, 0, 4, 2}}) {
    const LogCombination a = lhs_partial_exact(p, 40);
    const LogCombination b = lhs_partial_exact(p.swapped(), 40);
    CHECK(a.scaled(sign_pow(p.d + 1)) == b);
    CHECK(lhs_partial_exact(p.with_n(-p.n), 40) == a);
  }
}

TEST_CASE("parallel reduction is deterministic", "[sums]") {
  const ConvolutionParams p{1, 2, 2, 7};
  const std::vector<long> Ns{3000, 6000, 12000};
  const auto one = lhs_partials(p, Ns, 256, {1, 4096});
  for (unsigned jobs : {2u, 3u, 8u}) {
    const auto many = lhs_partials(p, Ns, 256, {jobs, 4096});
    for (std::size_t i = 0; i < Ns.size(); ++i) {
      CHECK(mpfr_equal_p(one[i].S.mid().get(), many[i].S.mid().get()));
      CHECK(one[i].S.rad() == many[i].S.rad());
    }
  }
}

TEST_CASE("tail bound dominates the observed tail", "[sums]") {
  for (auto p : std::vector<ConvolutionParams>{{3, 2, 2, 1}, {1, 2, 2, 2}, {2, 0, 0, 1}}) {
    const auto ps = lhs_partials(p, {2000, 64000}, 128);
    const TailBound tb = tail_bound(p, 2000);
    CHECK((ps[1].S - ps[0].S).abs_up() <= tb.bound);
  }
}

TEST_CASE("extrapolation recovers a synthetic limit", "[sums]") {
  std::vector<PartialSum> ps;
  for (int i = 0; i < 6; ++i) {
    const long N = 1000L << i;
    PrecisionReal s(Rational(7, 3), 256);
    for (int j = 2; j < 6; ++j) s -= PrecisionReal(Rational(j * j + 1), 256) / pow(PrecisionReal(N, 256), j);
    ps.push_back({N, s});
  }
  const TailEstimate e = extrapolate(ps, 2, 4, 0, 256);
  CHECK(e.fit_ok);
  CHECK((e.extrapolated - Rational(7, 3)).abs_up() < 1e-40L);
  // with a log term
  ps.clear();
  for (int i = 0; i < 7; ++i) {
    const long N = 1000L << i;
    const PrecisionReal lN = log(PrecisionReal(N, 256));
    PrecisionReal s(Rational(-1, 5), 256);
    for (int j = 1; j < 4; ++j) s += (lN * Rational(j) + Rational(3)) / pow(PrecisionReal(N, 256), j);
    ps.push_back({N, s});
  }
  const TailEstimate e2 = extrapolate(ps, 1, 3, 1, 256);
  CHECK((e2.extrapolated - Rational(-1, 5)).abs_up() < 1e-40L);
  // too few levels is a fit failure, not a crash
  ps.resize(3);
  CHECK_FALSE(extrapolate(ps, 1, 3, 1, 256).fit_ok);
}

TEST_CASE("parameter validation", "[sums]") {
  CHECK_THROWS_AS(ConvolutionParams({0, 2, 2, 1}).validate(), domain_error);
  CHECK_THROWS_AS(ConvolutionParams({1, 1, 2, 1}).validate(), domain_error);
  CHECK_THROWS_AS(ConvolutionParams({1, 2, 2, 0}).validate(), domain_error);
  CHECK_THROWS_AS(lhs_extrapolated({1, 2, 2, 1}, {100, 3, 4}, 64), domain_error);
}
