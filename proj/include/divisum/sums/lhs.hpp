#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <memory>
#include <thread>
#include <utility>
#include <vector>

#include "divisum/arith/special.hpp"
#include "divisum/jacobi/second_kind.hpp"
#include "divisum/sums/log_table.hpp"
#include "divisum/sums/params.hpp"
#include "divisum/sums/sigma.hpp"

namespace divisum {

struct PartialSum {
  long N;
  PrecisionReal S;
};

struct SumOptions {
  unsigned jobs = 0;  // 0: hardware concurrency
  long block_size = 4096;
};

namespace detail {

// Q_d^{(a,b)}((n2-n1)/n) * Ct * |n1|^a |n2|^b = K1 log|n2/n1| + K2 with
// K1 = Pk(X) |n1|^a |n2|^b and K2 = Rk(X), X = n2 - n1, all integers.
struct QKernel {
  std::vector<Integer> Pk, Rk;
  Rational Ct;
  long alpha, beta, growth;

  QKernel(const QSecondKind& q, long n) : alpha(q.alpha), beta(q.beta) {
    Integer D = lcm(q.P.denominator_lcm(), q.R.denominator_lcm());
    const long dR = std::max(0L, q.R.degree());
    const Integer nn(n);
    auto npow = [&](long e) { return e >= 0 ? ipow(nn, e) : Integer(0); };
    const Integer two_ab = ipow(2, static_cast<unsigned long>(alpha + beta));
    for (long i = 0; i <= q.P.degree(); ++i) {
      Rational c = q.P.coeff(i) * D * npow(q.d - i) * two_ab * npow(dR);
      c.canonicalize();
      Pk.push_back(c.get_num());
    }
    for (long i = 0; i <= q.R.degree(); ++i) {
      Rational c = q.R.coeff(i) * D * npow(dR - i) * npow(alpha + beta + q.d);
      c.canonicalize();
      Rk.push_back(c.get_num());
    }
    Ct = Rational(D * two_ab * npow(q.d + dR));
    growth = 2 * q.d + alpha + beta + 1;
  }

  static Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
  }
};

inline void horner(mpz_ptr out, const std::vector<Integer>& c, long X) {
  if (c.empty()) {
    mpz_set_ui(out, 0);
    return;
  }
  mpz_set(out, c.back().get_mpz_t());
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    mpz_mul_si(out, out, X);
    mpz_add(out, out, c[i].get_mpz_t());
  }
}

inline long double mpz_abs_ld(mpz_srcptr z) {
  long e;
  double m = mpz_get_d_2exp(&e, z);
  return std::ldexp(static_cast<long double>(std::fabs(m)), static_cast<int>(e));
}

struct BlockResult {
  Real sum;
  long double rad = 0;
};

struct Block {
  long lo, hi;
  std::size_t shell;
};

// n1 range with max(|n1|, |n - n1|) <= N.
inline std::pair<long, long> n1_range(long n, long N) { return {std::max(-N, n - N), std::min(N, n + N)}; }

struct SumContext {
  const QKernel* kernel;
  long n;
  const LogTable* logs;
  const SigmaTable* s1;
  const SigmaTable* s2;
  mpfr_prec_t w, p2;
  long double log_bound;
};

class BlockEvaluator {
 public:
  explicit BlockEvaluator(const SumContext& c) : c_(c) {
    mpz_inits(A_, K1_, K2_, Zt_, sig_, tmp_, nullptr);
    mpfr_inits2(c.w, lam_, num_, nullptr);
    mpfr_init2(t_, c.p2);
  }
  ~BlockEvaluator() {
    mpz_clears(A_, K1_, K2_, Zt_, sig_, tmp_, nullptr);
    mpfr_clears(lam_, num_, t_, nullptr);
  }
  BlockEvaluator(const BlockEvaluator&) = delete;
  BlockEvaluator& operator=(const BlockEvaluator&) = delete;

  BlockResult run(long lo, long hi) {
    BlockResult res{Real(c_.p2)};
    const long double uw = std::ldexp(1.0L, -static_cast<int>(c_.w));
    const long double up2 = std::ldexp(1.0L, -static_cast<int>(c_.p2));
    const long double errL = 2 * c_.logs->relative_error() * c_.log_bound;
    long double abs_sum = 0;
    long count = 0;
    mpfr_t L1, L2;
    for (long n1 = lo; n1 <= hi; ++n1) {
      const long n2 = c_.n - n1;
      if (n1 == 0 || n2 == 0) continue;
      const auto a1 = static_cast<std::uint32_t>(n1 < 0 ? -n1 : n1);
      const auto a2 = static_cast<std::uint32_t>(n2 < 0 ? -n2 : n2);
      const long X = n2 - n1;
      const QKernel& q = *c_.kernel;
      mpz_ui_pow_ui(Zt_, a1, q.alpha);
      mpz_ui_pow_ui(tmp_, a2, q.beta);
      mpz_mul(Zt_, Zt_, tmp_);
      horner(A_, q.Pk, X);
      mpz_mul(K1_, A_, Zt_);
      horner(K2_, q.Rk, X);
      c_.logs->view(L1, a1);
      c_.logs->view(L2, a2);
      mpfr_sub(lam_, L2, L1, MPFR_RNDN);
      mpfr_mul_z(num_, lam_, K1_, MPFR_RNDN);
      const long double k1 = mpz_abs_ld(K1_);
      const long double prod = std::fabs(mpfr_get_ld(num_, MPFR_RNDN));
      mpfr_add_z(num_, num_, K2_, MPFR_RNDN);
      const long double lam = std::fabs(mpfr_get_ld(lam_, MPFR_RNDN));
      const long double numv = std::fabs(mpfr_get_ld(num_, MPFR_RNDN));
      const long double err_num = k1 * (errL + lam * uw) + (prod + numv) * uw;
      c_.s1->get(sig_, a1);
      c_.s2->get(tmp_, a2);
      mpz_mul(sig_, sig_, tmp_);
      mpfr_set(t_, num_, MPFR_RNDN);
      mpfr_mul_z(t_, t_, sig_, MPFR_RNDN);
      mpfr_div_z(t_, t_, Zt_, MPFR_RNDN);
      const long double ratio = mpz_abs_ld(sig_) / mpz_abs_ld(Zt_);
      const long double tv = std::fabs(mpfr_get_ld(t_, MPFR_RNDN));
      res.rad += err_num * ratio * (1 + 0x1p-50L) + 4 * tv * up2;
      abs_sum += tv;
      ++count;
      mpfr_add(res.sum.get(), res.sum.get(), t_, MPFR_RNDN);
    }
    res.rad = up(res.rad + static_cast<long double>(count) * abs_sum * up2 * (1 + 0x1p-40L));
    return res;
  }

 private:
  const SumContext& c_;
  mpz_t A_, K1_, K2_, Zt_, sig_, tmp_;
  mpfr_t lam_, num_, t_;
};

inline BlockResult reduce_tree(std::vector<BlockResult> v, mpfr_prec_t p2) {
  if (v.empty()) return {Real(p2), 0};
  const long double u = std::ldexp(1.0L, -static_cast<int>(p2));
  while (v.size() > 1) {
    std::vector<BlockResult> next;
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) {
      BlockResult r{Real(p2), 0};
      mpfr_add(r.sum.get(), v[i].sum.get(), v[i + 1].sum.get(), MPFR_RNDN);
      r.rad = up(v[i].rad + v[i + 1].rad + r.sum.abs_up() * u);
      next.push_back(std::move(r));
    }
    if (v.size() % 2) next.push_back(std::move(v.back()));
    v = std::move(next);
  }
  return std::move(v.front());
}

inline mpfr_prec_t working_precision(const ConvolutionParams& p, long N, mpfr_prec_t prec) {
  const double lg = std::ceil(std::log2(2.0 * static_cast<double>(N) / static_cast<double>(std::labs(p.n)) + 2.0));
  return prec + static_cast<mpfr_prec_t>((2 * p.d + p.r1 + p.r2 + 1) * lg) + 32;
}

}  // namespace detail

// Partial sums of the convolution for increasing truncations N.  The result for
// each N is independent of opt.jobs bit for bit.
inline std::vector<PartialSum> lhs_partials(const ConvolutionParams& p, std::vector<long> Ns, mpfr_prec_t prec,
                                            const SumOptions& opt = {}) {
  p.validate();
  if (Ns.empty()) return {};
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    if (Ns[i] < 1) throw domain_error("lhs_partials: N must be positive");
    if (i && Ns[i] <= Ns[i - 1]) throw domain_error("lhs_partials: N values must be strictly increasing");
  }
  const long Nmax = Ns.back();
  if (Nmax > (1L << 30)) throw domain_error("lhs_partials: N too large");
  const QSecondKind q = q_construct(p.d, p.r1, p.r2);
  const detail::QKernel kernel(q, p.n);
  const mpfr_prec_t w = detail::working_precision(p, Nmax, prec);
  const mpfr_prec_t p2 = prec + 32;
  const auto M = static_cast<std::uint32_t>(Nmax + 1);
  auto logs = log_table(M, w);
  auto s1 = sigma_table(p.r1, M);
  auto s2 = sigma_table(p.r2, M);
  detail::SumContext ctx{&kernel, p.n, logs.get(), s1.get(), s2.get(), logs->prec(), p2,
                         std::log(static_cast<long double>(M)) + 1};

  std::vector<detail::Block> blocks;
  std::pair<long, long> prev{1, 0};
  const long bs = std::max(1L, opt.block_size);
  for (std::size_t s = 0; s < Ns.size(); ++s) {
    auto [lo, hi] = detail::n1_range(p.n, Ns[s]);
    std::vector<std::pair<long, long>> parts;
    if (prev.first > prev.second) {
      parts.push_back({lo, hi});
    } else {
      parts.push_back({lo, prev.first - 1});
      parts.push_back({prev.second + 1, hi});
    }
    for (auto [a, b] : parts)
      for (long x = a; x <= b; x += bs) blocks.push_back({x, std::min(b, x + bs - 1), s});
    if (lo <= hi) prev = {lo, hi};
  }

  std::vector<detail::BlockResult> results;
  results.reserve(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) results.push_back({Real(p2), 0});
  unsigned jobs = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, blocks.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    detail::BlockEvaluator ev(ctx);
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= blocks.size()) break;
      results[i] = ev.run(blocks[i].lo, blocks[i].hi);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<PartialSum> out;
  Real acc(p2);
  long double rad = 0;
  const long double u = std::ldexp(1.0L, -static_cast<int>(p2));
  std::size_t bi = 0;
  for (std::size_t s = 0; s < Ns.size(); ++s) {
    std::vector<detail::BlockResult> mine;
    while (bi < blocks.size() && blocks[bi].shell == s) mine.push_back(std::move(results[bi++]));
    detail::BlockResult shell = detail::reduce_tree(std::move(mine), p2);
    mpfr_add(acc.get(), acc.get(), shell.sum.get(), MPFR_RNDN);
    rad = detail::up(rad + shell.rad + acc.abs_up() * u);
    PrecisionReal total(Real(acc), rad);
    PrecisionReal S = total / kernel.Ct;
    PrecisionReal Sp(Real(S.mid(), prec), S.rad());
    Sp.add_error(detail::rounding_bound(Sp.mid(), 1));
    out.push_back({Ns[s], std::move(Sp)});
  }
  return out;
}

inline PrecisionReal lhs_partial(const ConvolutionParams& p, long N, mpfr_prec_t prec, const SumOptions& opt = {}) {
  return lhs_partials(p, {N}, prec, opt).front().S;
}

// Exact partial sum as a rational plus a combination of logarithms of primes.
inline LogCombination lhs_partial_exact(const ConvolutionParams& p, long N) {
  p.validate();
  const QSecondKind q = q_construct(p.d, p.r1, p.r2);
  LogCombination acc;
  auto [lo, hi] = detail::n1_range(p.n, N);
  for (long n1 = lo; n1 <= hi; ++n1) {
    const long n2 = p.n - n1;
    if (n1 == 0 || n2 == 0) continue;
    Rational s(sigma(p.r1, n1) * sigma(p.r2, n2));
    acc += q_eval_exact(q, n1, n2).combination().scaled(s);
  }
  return acc;
}

struct TailBound {
  long double bound;
  bool rigorous;
};

// sigma_0(m) <= K m^{1/4} for all m >= 1.
inline long double divisor_bound_constant() {
  long double K = 1;
  for (int p : {2, 3, 5, 7, 11, 13}) {
    long double best = 1;
    for (int a = 1; a < 200; ++a) best = std::max(best, (a + 1) / std::pow(static_cast<long double>(p), a / 4.0L));
    K *= best;
  }
  return K * (1 + 1e-12L);
}

// Upper bound on the omitted part of the sum when truncating at N.  Uses
// |Q(x)| <= C (|x|-1)^{-K} for |x| > 1 and sigma_r(m) <= zeta(r) m^r (r >= 2),
// sigma_0(m) <= K_{1/4} m^{1/4}.
inline TailBound tail_bound(const ConvolutionParams& p, long N) {
  p.validate();
  const long a = std::labs(p.n);
  if (N <= 2 * a) throw domain_error("tail_bound: requires N > 2|n|");
  const long double C = q_asymptotic_constant(p.d, p.r1, p.r2).get_d() * (1 + 1e-15L);
  const long K = p.d + p.r1 + p.r2 + 1;
  const long double delta = 0.25L;
  const long double Kd = divisor_bound_constant();
  auto factor = [&](long r) -> std::pair<long double, long double> {  // (constant, exponent)
    if (r == 0) return {Kd, delta};
    return {zeta_value(r, 64).abs_up(), static_cast<long double>(r)};
  };
  const long double Nl = static_cast<long double>(N), al = static_cast<long double>(a);
  const long double M = Nl - al;
  auto side = [&](long rbig, long rsmall) {
    // The index of size about m + |n| carries rbig, the one of size m carries rsmall.
    auto [c1, e1] = factor(rbig);
    auto [c2, e2] = factor(rsmall);
    const long double E = static_cast<long double>(K) - e1 - e2;  // decay exponent in m
    return C * std::pow(al / 2, static_cast<long double>(K)) * c1 * c2 * std::pow(Nl / M, e1) *
           std::pow(M, 1 - E) / (E - 1);
  };
  const long double b = (side(p.r1, p.r2) + side(p.r2, p.r1)) * (1 + 1e-12L);
  return {b, p.r1 != 0 && p.r2 != 0};
}

}  // namespace divisum
