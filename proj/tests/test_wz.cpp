#include "doctest.h"
#include "mahlerlab/error.hpp"
#include "mahlerlab/wz.hpp"

using namespace mahlerlab;

namespace {

BigInt pascal(long n, long k) {
  std::vector<BigInt> row{1};
  for (long i = 1; i <= n; ++i) {
    std::vector<BigInt> next(static_cast<std::size_t>(i + 1), 1);
    for (long j = 1; j < i; ++j) next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j - 1)] + row[static_cast<std::size_t>(j)];
    row = next;
  }
  return row[static_cast<std::size_t>(k)];
}

Rational c2(long k) {  // C(2k,k)^2 / 16^k
  Rational r(pascal(2 * k, k) * pascal(2 * k, k), 1);
  r /= Rational(BigInt(1) << static_cast<mp_bitcnt_t>(4 * k));
  r.canonicalize();
  return r;
}

}  // namespace

TEST_SUITE("exact-wz") {
  TEST_CASE("binomials against Pascal's triangle") {
    for (long n = 0; n <= 40; ++n)
      for (long k = 0; k <= n; ++k) CHECK(binom(n, k) == pascal(n, k));
    CHECK(central_binomial(30) == pascal(60, 30));
    CHECK_THROWS_AS(binom(3, 4), InvalidArgument);
  }

  TEST_CASE("dyadic values") {
    Dyadic d{Rational(3, 5), -4};
    CHECK(d.value() == Rational(3, 80));
    Dyadic e{Rational(1), 3};
    CHECK(e.value() == 8);
  }

  TEST_CASE("both certificate pairs satisfy the WZ relation") {
    for (const WZPair& pair : {wz_pair_1(), wz_pair_2()}) {
      const WZReport r = wz_pair_verify(pair, 80);
      CHECK(r.ok());
      CHECK(r.checked == 81 * 82 / 2);
      CHECK(telescope_reconstruct(pair, 80).ok());
    }
  }

  TEST_CASE("a perturbed certificate is rejected") {
    WZPair bad = wz_pair_1();
    const auto g = bad.g;
    bad.g = [g](long n, long k) {
      Dyadic d = g(n, k);
      d.mantissa = -d.mantissa;
      return d;
    };
    const WZReport r = wz_pair_verify(bad, 10);
    CHECK_FALSE(r.ok());
    CHECK(r.violation_count > 0);
    CHECK(r.violations.front().n == 0);
    CHECK(r.violations.size() <= 32);
  }

  TEST_CASE("the three binomial sums by direct evaluation") {
    for (long n = 0; n <= 25; ++n) {
      Rational first(0), second(0), third(0);
      for (long k = 0; k <= n; ++k) {
        first += c2(k) / Rational(2 * n - 2 * k + 1);
        second += c2(k) / Rational(n + k + 1);
        third += Rational(4 * k + 1) * c2(k) * c2(k);
      }
      third *= Rational(BigInt(1) << static_cast<mp_bitcnt_t>(4 * n)) /
               Rational(BigInt((2 * n + 1) * (2 * n + 1)) * pascal(2 * n, n) * pascal(2 * n, n));
      const BinomialTriple t = identity_2_8_2_9(n);
      CHECK(t.first == first);
      CHECK(t.second == second);
      CHECK(t.third == third);
      CHECK(t.all_equal());
    }
    CHECK(identity_2_8_2_9(1).first == Rational(7, 12));
  }

  TEST_CASE("exact partial sums") {
    const auto t = ramanujan_partial_sums(30);
    REQUIRE(t.size() == 31);
    Rational s(0);
    for (long k = 0; k <= 30; ++k) {
      s += Rational(4 * k + 1) * c2(k) * c2(k);
      CHECK(t[static_cast<std::size_t>(k)] == s);
    }
  }
}
