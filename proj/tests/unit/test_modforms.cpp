#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>

#include "divisum/modforms/eigenforms.hpp"
#include "oracles.hpp"

using namespace divisum;

TEST_CASE("Ramanujan tau from E4 and E6", "[modforms]") {
  const QExpansion D = delta_q(11);
  const long tau[] = {0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920};
  for (long m = 0; m <= 10; ++m) CHECK(D[m] == tau[m]);
}

TEST_CASE("cusp space dimensions", "[modforms]") {
  const std::map<long, long> dims = {{2, 0}, {10, 0}, {12, 1}, {14, 0}, {16, 1}, {22, 1}, {24, 2}, {26, 1}, {36, 3}, {38, 2}};
  for (auto [k, dim] : dims) CHECK(dim_cusp(k) == dim);
  CHECK(dim_cusp(7) == 0);
}

TEST_CASE("Victor Miller basis is echelonized and integral", "[modforms]") {
  for (long k : {24L, 36L, 48L}) {
    const auto basis = victor_miller_basis(k, 30);
    REQUIRE(static_cast<long>(basis.size()) == dim_cusp(k));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      CHECK(basis[j][0] == 0);
      for (std::size_t i = 1; i <= basis.size(); ++i) CHECK(basis[j][i] == (i == j + 1 ? 1 : 0));
      for (long m = 0; m < 30; ++m) CHECK(basis[j][m].get_den() == 1);
    }
  }
}

TEST_CASE("weight-24 eigenforms have a_2 = 540 -/+ 12 sqrt(144169)", "[modforms]") {
  const auto forms = hecke_eigenforms(24, 256);
  REQUIRE(forms.size() == 2);
  Real s(400);
  mpfr_set_ui(s.get(), 144169, MPFR_RNDN);
  mpfr_sqrt(s.get(), s.get(), MPFR_RNDN);
  mpfr_mul_ui(s.get(), s.get(), 12, MPFR_RNDN);
  Real lo(400), hi(400);
  mpfr_ui_sub(lo.get(), 540, s.get(), MPFR_RNDN);
  mpfr_add_ui(hi.get(), s.get(), 540, MPFR_RNDN);
  CHECK(oracle::encloses(forms[0][2], lo));
  CHECK(oracle::encloses(forms[1][2], hi));
  CHECK(oracle::rel_diff(forms[0][2], lo) < 1e-60L);
}

TEST_CASE("Hecke multiplicativity", "[modforms]") {
  for (long k : {12L, 24L, 36L}) {
    for (const auto& f : hecke_eigenforms(k, 200)) {
      const long M = std::min(f.length(), 60L);
      for (long m = 1; m < M; ++m)
        for (long n = 1; m * n < M; ++n) {
          if (std::gcd(m, n) != 1) continue;
          const PrecisionReal diff = f[m * n] - f[m] * f[n];
          CHECK(diff.contains_zero());
          CHECK(diff.mid().abs_up() <= 1e-40L * (1 + f[m * n].abs_up()));
        }
      for (long p : {2L, 3L, 5L, 7L}) {
        if (p * p >= M) continue;
        const PrecisionReal diff = f[p * p] - f[p] * f[p] + PrecisionReal(ipow(Integer(p), k - 1), 200);
        CHECK(diff.contains_zero());
      }
    }
  }
}

TEST_CASE("eigenforms lie in the cusp space", "[modforms]") {
  const long k = 36, M = 40;
  const auto basis = victor_miller_basis(k, M);
  for (const auto& f : hecke_eigenforms(k, M, 160)) {
    for (long m = 1; m < M; ++m) {
      PrecisionReal combo(0L, 160);
      for (std::size_t j = 0; j < basis.size(); ++j) combo += f[static_cast<long>(j) + 1] * basis[j][m];
      CHECK((combo - f[m]).mid().abs_up() <= 1e-30L * (1 + f[m].abs_up()));
    }
  }
}

TEST_CASE("cache round trip", "[modforms]") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "divisum-test-cache";
  fs::remove_all(dir);
  fs::create_directories(dir);
  ::setenv("DIVISUM_CACHE_DIR", dir.c_str(), 1);
  const auto made = hecke_eigenforms(26, 40, 128);
  CHECK(fs::exists(dir / "eigenforms_26.json"));
  std::vector<Eigenform> loaded;
  REQUIRE(detail::load_cached(26, 40, 128, loaded));
  REQUIRE(loaded.size() == made.size());
  for (long m = 0; m < 40; ++m) CHECK(oracle::encloses(loaded[0][m], made[0][m].mid()));
  fs::remove_all(dir);
}
