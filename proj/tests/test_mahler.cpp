#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mahlerlab/error.hpp"
#include "mahlerlab/mahler.hpp"
#include "mahlerlab/special.hpp"
#include "oracles.hpp"

using namespace mahlerlab;

namespace {

// int_0^1 |cos 2 pi t|^m dt by Wallis' formula.
Real cos_moment(int m, Precision p) {
  Real r(1L, p);
  for (int j = m; j >= 2; j -= 2) r = r * (j - 1) / j;
  if (m % 2 == 1) r = r * 2L / oracle::pi(p);
  return r;
}

// L(chi_-3, 2) by pairing terms; tail below 1e-13 at N = 10^6.
double l_chi3_2() {
  double s = 0;
  for (long n = 999'999; n >= 0; --n) {
    const double a = 3.0 * n + 1, b = 3.0 * n + 2;
    s += 1.0 / (a * a) - 1.0 / (b * b);
  }
  return s;
}

}  // namespace

TEST_SUITE("mahler-engine") {
  TEST_CASE("descriptor parsing and validation") {
    const LaurentDescriptor d = LaurentDescriptor::parse("1 1 0\n1 -1 0 # x^-1\n\n1 0 1; 1 0 -1; -4 0 0");
    CHECK(d.dimension == 2);
    CHECK(d.terms.size() == 5);
    const double origin[2] = {0.0, 0.0};
    CHECK(std::abs(d.evaluate(origin)) < 1e-15);
    CHECK_THROWS_AS(LaurentDescriptor::parse(""), InvalidArgument);
    CHECK_THROWS_AS(LaurentDescriptor::parse("1 9 0"), InvalidArgument);
    CHECK_THROWS_AS(LaurentDescriptor::parse("1 1 0\n1 1"), InvalidArgument);
    CHECK_THROWS_AS(LaurentDescriptor::parse("1 1 1 1 1 1"), InvalidArgument);
    CHECK_THROWS_AS(LaurentDescriptor::builtin("zz"), InvalidArgument);
    CHECK(LaurentDescriptor::parse("r16").dimension == 4);
  }

  TEST_CASE("built-in reduced integrands equal |P| on random torus points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const char* name : {"p4", "p:3", "q8", "q:5", "r16", "r:32", "s0", "s:2", "ra:3"}) {
      const LaurentDescriptor d = LaurentDescriptor::builtin(name);
      REQUIRE(d.reduced);
      for (int i = 0; i < 50; ++i) {
        double t[4];
        for (double& x : t) x = u(rng);
        const std::span<const double> th(t, static_cast<std::size_t>(d.dimension));
        CHECK(std::abs(d.reduced(th)) == doctest::Approx(std::abs(d.evaluate(th))).epsilon(1e-9));
      }
    }
    CHECK(!builtin_descriptor_names().empty());
  }

  TEST_CASE("torus integration of classical measures") {
    // Jensen: m(x - 2) = log 2.
    const auto jensen = mahler_numeric(LaurentDescriptor::parse("1 1; -2 0"), 1 << 12, 16);
    CHECK(std::abs(jensen.value.to_double() - std::log(2.0)) < 1e-12);
    // Smyth: m(1 + x + y) = (3 sqrt 3 / 4 pi) L(chi_-3, 2).
    const auto smyth = mahler_numeric(LaurentDescriptor::parse("1 0 0; 1 1 0; 1 0 1"), 1 << 16, 16);
    const double want = 3.0 * std::sqrt(3.0) / (4.0 * std::numbers::pi) * l_chi3_2();
    CHECK(std::abs(smyth.value.to_double() - want) < 6 * smyth.error_estimate.to_double() + 1e-4);
    // m(x + 1/x + y + 1/y) = m(x + y) + m(1 + xy) = 0.
    const auto zero = mahler_numeric(LaurentDescriptor::builtin("p:0"), 1 << 16, 16);
    CHECK(std::abs(zero.value.to_double()) < 6 * zero.error_estimate.to_double() + 1e-4);
  }

  TEST_CASE("6F5 formula: k = 16 matches the binomial series, large k tends to log k") {
    const Precision p(128);
    const Real a = m_rk_hypergeometric(Real(16L, p), Real(1e-36, p), p);
    CHECK(abs(a - m_r16_series(p)) < Real(1e-34, p));
    const Real k(1e6, p);
    const Real m = m_rk_hypergeometric(k, Real(1e-36, p), p);
    CHECK(abs(m - log(k)) < Real(1e-11, p));
    CHECK(m < log(k));
    // m(R_k) is even in k.
    CHECK(abs(m_rk_hypergeometric(Real(-20L, p), Real(1e-36, p), p) - m_rk_hypergeometric(Real(20L, p), Real(1e-36, p), p)) <
          Real(1e-34, p));
    CHECK_THROWS_AS(m_rk_hypergeometric(Real(15L, p), Real(1e-20, p), p), DomainError);
  }

  TEST_CASE("m(4a): endpoint values and route agreement") {
    const Precision p(128);
    CHECK(abs(m_alpha(Real(1L, p), MAlphaRoute::series, p) - 4L * oracle::catalan(p) / oracle::pi(p)) < Real(1e-34, p));
    CHECK(m_alpha(Real(0L, p), MAlphaRoute::series, p).is_zero());
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Precision q(96);
    for (int i = 0; i < 5; ++i) {
      const Real a(u(rng), q);
      CHECK(abs(m_alpha(a, MAlphaRoute::series, q) - m_alpha(a, MAlphaRoute::integral, q)) < Real(1e-25, q));
    }
    CHECK_THROWS_AS(m_alpha(Real(1.5, p), MAlphaRoute::series, p), DomainError);
  }

  TEST_CASE("m(4a) is increasing in a") {
    const Precision p(64);
    Real prev = m_alpha(Real(0.05, p), MAlphaRoute::series, p);
    for (long i = 1; i <= 10; ++i) {
      const Real cur = m_alpha(Real(i, p) / 10L, MAlphaRoute::series, p);
      CHECK(cur > prev);
      prev = cur;
    }
    const Real near_one = 1L - Real(1e-12, p);
    CHECK_THROWS_AS(m_alpha(near_one, MAlphaRoute::series, p), ResourceError);
    CHECK(m_alpha(near_one, MAlphaRoute::integral, p) < m_alpha(Real(1L, p), MAlphaRoute::series, p));
  }

  TEST_CASE("R(a) routes") {
    const Precision p(128);
    const Real pi = oracle::pi(p);
    for (const char* s : {"0.25", "0.5"}) {
      const Real a = Real::parse(s, p);
      CHECK(abs(r_alpha(a, RAlphaRoute::polylog, p).value - 4L * oracle::chi3(a, p) / square(pi)) < Real(1e-36, p));
    }
    // chi_3(1) = 7 zeta(3) / 8
    CHECK(abs(r_alpha(Real(1L, p), RAlphaRoute::polylog, p).value - 7L * oracle::zeta3(p) / (2L * square(pi))) <
          Real(1e-36, p));
    const Precision q(64);
    const Real a(0.5, q);
    CHECK(abs(r_alpha(a, RAlphaRoute::k_integral, q).value - r_alpha(a, RAlphaRoute::polylog, q).value) < Real(1e-15, q));
    RAlphaOptions o;
    o.samples = 1 << 14;
    const RAlphaResult t = r_alpha(Real(1L, q), RAlphaRoute::torus, q, o);
    const Real want = 7L * oracle::zeta3(q) / (2L * square(oracle::pi(q)));
    CHECK(abs(t.value - want) < 6L * t.error_estimate + Real(1e-3, q));
  }

  TEST_CASE("Fourier partial sums stay within the tail bound") {
    const Precision p(64);
    const Real pi = oracle::pi(p);
    for (FourierSeries w : {FourierSeries::ksin, FourierSeries::kcos, FourierSeries::m4sin}) {
      for (long d : {5L, 6L, 7L, 9L}) {
        const FourierCheck f = fourier_check(w, pi / d, 200, p);
        CHECK(f.deviation <= f.tail_bound);
      }
    }
    // Error decays like 1/N for the K series and faster for m(4 sin t).
    const double r1 = fourier_decay_ratio(FourierSeries::ksin, pi / 6L, 400, p);
    CHECK(r1 > 0.3);
    CHECK(r1 < 0.6);
    CHECK(fourier_decay_ratio(FourierSeries::m4sin, pi / 3L, 400, p) < 0.35);
    CHECK_THROWS_AS(fourier_check(FourierSeries::ksin, pi, 100, p), DomainError);
  }

  TEST_CASE("density identity sides match Wallis products") {
    const Precision p(64);
    for (int m = 0; m <= 4; ++m) {
      const DensityCheck d = density_integral_check(m, Real(1e-15, p), p);
      const Real want = square(cos_moment(m, p));
      CHECK(abs(d.torus_side - want) < Real(1e-15, p));
      CHECK(abs(d.kernel_side - want) < Real(1e-15, p));
    }
  }

  TEST_CASE("odd moments of K K'") {
    const Precision p(96);
    const Real pi3 = pow(oracle::pi(p), 3);
    const WanMomentCheck w1 = wan_moment_check(1, Real(1e-25, p), p);
    CHECK(abs(w1.quadrature - pi3 / 16L) < Real(1e-24, p));
    const WanMomentCheck w3 = wan_moment_check(3, Real(1e-25, p), p);
    CHECK(abs(w3.closed_form - pi3 / 32L) < Real(1e-24, p));
    CHECK_THROWS_AS(wan_moment_check(7, Real(1e-10, p), p), InvalidArgument);
  }
}
