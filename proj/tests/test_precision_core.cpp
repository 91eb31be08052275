#include <cmath>
#include <random>

#include "doctest.h"
#include "mahlerlab/error.hpp"
#include "mahlerlab/real.hpp"
#include "mahlerlab/series.hpp"
#include "oracles.hpp"

using namespace mahlerlab;

TEST_SUITE("precision-core") {
  TEST_CASE("constants agree with series oracles") {
    for (long bits : {64L, 128L, 512L}) {
      const Precision p(bits);
      const Real eps = ldexp(Real(1L, p), 4 - bits);
      CHECK(abs(const_pi(p) - oracle::pi(p)) < eps);
      CHECK(abs(const_log2(p) - oracle::log2(p)) < eps);
    }
  }

  TEST_CASE("precision bounds are enforced") {
    CHECK_THROWS_AS(require_precision(Precision(31)), InvalidArgument);
    CHECK_THROWS_AS(require_precision(Precision(kMaxPrecisionBits + 1)), InvalidArgument);
    CHECK_NOTHROW(require_precision(Precision(32)));
    CHECK_THROWS_AS(const_pi(Precision(16)), InvalidArgument);
  }

  TEST_CASE("binary operations take the wider precision") {
    const Real a(1L, Precision(64));
    const Real b(3L, Precision(200));
    CHECK((a / b).precision().bits == 200);
    CHECK((b - a).precision().bits == 200);
  }

  TEST_CASE("parse and print round trip") {
    const Precision p(128);
    const Real x = Real::parse("0.1", p);
    const Real y = Real::parse(x.to_string(x.round_trip_digits()), p);
    CHECK(x == y);
    CHECK(Real::parse("-3e-7", p).to_double() == doctest::Approx(-3e-7));
    CHECK_THROWS_AS(Real::parse("abc", p), InvalidArgument);
    CHECK(Real(1L, p).to_decimal(5) == "1.0000");
  }

  TEST_CASE("field identities hold to rounding on random inputs") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    const Precision p(160);
    const Real eps = ldexp(Real(1L, p), -150);
    for (int i = 0; i < 200; ++i) {
      const Real a(u(rng), p), b(u(rng), p), c(u(rng), p);
      CHECK(abs((a + b) * c - (a * c + b * c)) <= eps * 400L);
      if (!b.is_zero()) CHECK(abs(a / b * b - a) <= eps * 40L);
      CHECK(abs(exp(log(abs(a) + 1L)) - (abs(a) + 1L)) <= eps * 40L);
    }
  }

  TEST_CASE("rational and integer conversions are exact") {
    const Precision p(256);
    const Rational third(1, 3);
    CHECK(abs(Real(third, p) * 3L - Real(1L, p)) < ldexp(Real(1L, p), -250));
    const BigInt big("123456789012345678901234567890");
    CHECK(round_to_integer(Real(big, p)) == big);
  }

  TEST_CASE("direct summation with a tail bound") {
    // sum 1/2^n = 2
    SeriesSpec spec;
    spec.term = [](std::int64_t n, Precision q) { return ldexp(Real(1L, q), -static_cast<long>(n)); };
    spec.tail_bound = [](std::int64_t n, Precision q) -> std::optional<Real> {
      return ldexp(Real(1L, q), -static_cast<long>(n));
    };
    const Precision p(128);
    const SeriesResult r = sum_series(spec, ldexp(Real(1L, p), -120), p);
    CHECK(abs(r.value - 2L) < ldexp(Real(1L, p), -119));
    CHECK_FALSE(r.accelerated);
  }

  TEST_CASE("Levin u sums zeta(2) from partial sums") {
    SeriesSpec spec;
    spec.first_index = 1;
    spec.term = [](std::int64_t n, Precision q) { return 1L / square(Real(static_cast<long>(n), q)); };
    SeriesOptions opts;
    opts.acceleration = AccelScheme::levin_u;
    const Precision p(128);
    const SeriesResult r = sum_series(spec, Real(1e-30, p), p, opts);
    const Real pi = oracle::pi(p);
    CHECK(abs(r.value - square(pi) / 6L) < Real(1e-30, p));
    CHECK(r.accelerated);
  }

  TEST_CASE("each accelerator improves on the raw partial sums") {
    const Precision p(192);
    // Logarithmic convergence: sum 1/n^2.
    std::vector<Real> sums;
    Real s(0L, p);
    for (long n = 1; n <= 60; ++n) {
      s += 1L / square(Real(n, p));
      sums.push_back(s);
    }
    const Real zeta2 = square(oracle::pi(p)) / 6L;
    for (AccelScheme scheme : {AccelScheme::levin_u, AccelScheme::richardson}) {
      const Extrapolation e = accelerate(sums, scheme);
      CHECK(abs(e.value - zeta2) < abs(sums.back() - zeta2) * Real(1e-3, p));
    }
    // Linear convergence: alternating harmonic series.
    std::vector<Real> alt;
    Real a(0L, p);
    for (long n = 1; n <= 30; ++n) {
      a += (n % 2 == 1 ? 1L : -1L) / Real(n, p);
      alt.push_back(a);
    }
    const Real log2 = oracle::log2(p);
    for (AccelScheme scheme : {AccelScheme::levin_u, AccelScheme::wynn_epsilon}) {
      const Extrapolation e = accelerate(alt, scheme);
      CHECK(abs(e.value - log2) < abs(alt.back() - log2) * Real(1e-10, p));
    }
    CHECK_THROWS_AS(accelerate(std::span<const Real>(sums.data(), 4), AccelScheme::levin_u), InvalidArgument);
  }

  TEST_CASE("alternating sums converge geometrically") {
    const Precision p(256);
    const Real leibniz = sum_alternating([](std::int64_t k, Precision q) { return 1L / Real(2 * k + 1, q); }, p);
    CHECK(abs(leibniz - oracle::pi(p) / 4L) < ldexp(Real(1L, p), -240));
  }

  TEST_CASE("recurrent terms match direct evaluation in any access order") {
    // t(n) = 1/n!
    auto t = recurrent_term(
        0, [](Precision q) { return Real(1L, q); },
        [](std::int64_t n, Precision q) { return Real(1L, q) / (n + 1); });
    const Precision p(128);
    Real fact(1L, p);
    for (long n = 0; n < 30; ++n) {
      if (n > 0) fact *= n;
      CHECK(abs(t(n, p) * fact - 1L) < Real(1e-35, p));
    }
    CHECK(abs(t(5, p) * 120L - 1L) < Real(1e-35, p));
    CHECK(abs(t(3, Precision(64)) * 6L - 1L) < Real(1e-17, p));
  }

  TEST_CASE("scheme names round trip") {
    for (AccelScheme s : {AccelScheme::levin_u, AccelScheme::richardson, AccelScheme::wynn_epsilon}) {
      CHECK(parse_accel_scheme(to_string(s)) == s);
    }
    CHECK_THROWS_AS(parse_accel_scheme("aitken"), InvalidArgument);
  }

  TEST_CASE("a divergent series without a tail bound does not converge") {
    SeriesSpec spec;
    spec.first_index = 1;
    spec.term = [](std::int64_t n, Precision q) { return 1L / Real(static_cast<long>(n), q); };
    spec.tail_bound = [](std::int64_t, Precision q) -> std::optional<Real> { return Real(1L, q); };
    SeriesOptions opts;
    opts.max_terms = 1000;
    CHECK_THROWS_AS(sum_series(spec, Real(1e-10, Precision(64)), Precision(64), opts), NoConvergence);
  }
}
