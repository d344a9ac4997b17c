#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <variant>
#include <vector>

#include "divisum/arith/rational.hpp"

namespace divisum {

inline Integer sigma(long r, const Integer& n) {
  if (r < 0) throw domain_error("sigma: r must be nonnegative");
  if (n == 0) throw domain_error("sigma: n must be nonzero");
  Integer m = n < 0 ? Integer(-n) : n;
  Integer total = 1;
  for (Integer p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    Integer pk = 1, s = 1, pr = ipow(p, static_cast<unsigned long>(r));
    while (m % p == 0) {
      m /= p;
      pk *= pr;
      s += pk;
    }
    total *= s;
  }
  if (m > 1) total *= 1 + ipow(m, static_cast<unsigned long>(r));
  return total;
}

inline Integer sigma(long r, long n) { return sigma(r, Integer(n)); }

// Smallest prime factor for 0..M.
class SpfTable {
 public:
  explicit SpfTable(std::uint32_t M) : spf_(M + 1, 0) {
    for (std::uint32_t i = 2; i <= M; ++i) {
      if (spf_[i] != 0) continue;
      for (std::uint64_t j = i; j <= M; j += i)
        if (spf_[j] == 0) spf_[j] = i;
    }
  }
  std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size() - 1); }
  std::uint32_t operator[](std::uint32_t m) const { return spf_[m]; }

 private:
  std::vector<std::uint32_t> spf_;
};

inline std::shared_ptr<const SpfTable> spf_table(std::uint32_t M) {
  static std::mutex mu;
  static std::shared_ptr<const SpfTable> cached;
  std::lock_guard<std::mutex> lock(mu);
  if (!cached || cached->limit() < M) cached = std::make_shared<const SpfTable>(M);
  return cached;
}

// sigma_r(m) for 1 <= m <= M by a multiplicative sieve.  Values are kept as
// 128-bit integers when they fit and as GMP integers otherwise.
class SigmaTable {
 public:
  using u128 = unsigned __int128;

  SigmaTable(long r, std::uint32_t M) : r_(r), M_(M) {
    if (r < 0 || r % 2 != 0) throw domain_error("SigmaTable: r must be a nonnegative even integer");
    auto spf = spf_table(M);
    const double bits = static_cast<double>(r) * std::log2(static_cast<double>(M) + 1) + 2;
    if (bits < 126) {
      small_.assign(M + 1, 0);
      fill(small_, *spf, [](std::uint64_t p) { return u128(p); });
    } else {
      big_.assign(M + 1, Integer(0));
      fill(big_, *spf, [](std::uint64_t p) { return Integer(static_cast<unsigned long>(p)); });
    }
  }

  long r() const { return r_; }
  std::uint32_t limit() const { return M_; }

  void get(mpz_ptr out, std::uint32_t m) const {
    if (!small_.empty()) {
      const u128 v = small_[m];
      const std::uint64_t parts[2] = {static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(v >> 64)};
      mpz_import(out, 2, -1, sizeof(std::uint64_t), 0, 0, parts);
    } else {
      mpz_set(out, big_[m].get_mpz_t());
    }
  }

  Integer at(std::uint32_t m) const {
    Integer z;
    get(z.get_mpz_t(), m);
    return z;
  }

 private:
  template <class T, class Make>
  void fill(std::vector<T>& v, const SpfTable& spf, Make make) {
    if (M_ >= 1) v[1] = make(1);
    for (std::uint32_t m = 2; m <= M_; ++m) {
      const std::uint32_t p = spf[m];
      std::uint32_t q = m;
      T pr = make(1);
      for (long i = 0; i < r_; ++i) pr = pr * make(p);
      T pk = make(1), s = make(1);
      while (q % p == 0) {
        q /= p;
        pk = pk * pr;
        s = s + pk;
      }
      v[m] = s * v[q];
    }
  }

  long r_;
  std::uint32_t M_;
  std::vector<u128> small_;
  std::vector<Integer> big_;
};

inline std::shared_ptr<const SigmaTable> sigma_table(long r, std::uint32_t M) {
  static std::mutex mu;
  static std::map<long, std::shared_ptr<const SigmaTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[r];
  if (!slot || slot->limit() < M) slot = std::make_shared<const SigmaTable>(r, M);
  return slot;
}

}  // namespace divisum
