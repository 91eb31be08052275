#include "mahlerlab/special.hpp"

#include <cmath>
#include <mutex>

#include "mahlerlab/error.hpp"
#include "mahlerlab/series.hpp"

namespace mahlerlab {

Real agm(const Real& a0, const Real& b0) {
  if (!(a0 > 0L) || !(b0 > 0L)) throw InvalidArgument("agm requires positive arguments");
  const Precision p(std::max(a0.precision().bits, b0.precision().bits));
  const Precision wp = p + 16;
  Real a = a0.with_precision(wp), b = b0.with_precision(wp);
  // Quadratic convergence once a/b is near 1; a tiny b adds log2|log b| steps.
  const long cap = 4 * static_cast<long>(std::log2(static_cast<double>(p.bits))) + 64;
  for (long i = 0; i < cap; ++i) {
    if (abs(a - b) <= ldexp(a, -static_cast<long>(p.bits) - 4)) return ((a + b) / 2L).with_precision(p);
    Real an = (a + b) / 2L;
    b = sqrt(a * b);
    a = std::move(an);
  }
  throw NoConvergence("agm iteration did not settle", a.to_string(a.round_trip_digits()));
}

Real ell_k_from_complement(const Real& kprime) {
  if (!(kprime > 0L) || kprime > 1L) throw DomainError("complementary modulus must lie in (0, 1]");
  const Precision p = kprime.precision();
  return const_pi(p + 8) / (2L * agm(Real(1L, p + 8), kprime.with_precision(p + 8)));
}

Real ell_k(const Real& k) {
  if (k < 0L || !(k < 1L)) throw DomainError("ell_k requires 0 <= k < 1, got " + k.to_string(10));
  const Precision wp = k.precision() + 8;
  // (1-k)(1+k) keeps full relative accuracy of k' as k -> 1.
  Real kc = sqrt((1L - k.with_precision(wp)) * (1L + k.with_precision(wp)));
  return ell_k_from_complement(kc).with_precision(k.precision());
}

Real ell_kprime(const Real& k) {
  if (!(k > 0L) || k > 1L) throw DomainError("ell_kprime requires 0 < k <= 1, got " + k.to_string(10));
  return ell_k_from_complement(k).with_precision(k.precision());
}

Real gamma_half_int(long twice_s, Precision p) {
  require_precision(p);
  if (twice_s < 1) throw DomainError("gamma_half_int requires a positive argument");
  const Precision wp = p + 16;
  Real g = twice_s % 2 == 0 ? Real(1L, wp) : sqrt(const_pi(wp));
  // Gamma(s+1) = s Gamma(s), stepping from 1 or 1/2.
  for (long t = twice_s % 2 == 0 ? 2 : 1; t + 2 <= twice_s; t += 2) {
    g *= t;
    g /= 2L;
  }
  return g.with_precision(p);
}

Rational bernoulli(long n) {
  if (n < 0) throw InvalidArgument("bernoulli index must be nonnegative");
  static std::mutex mu;
  static std::vector<Rational> cache{Rational(1)};
  std::lock_guard lock(mu);
  // sum_{k=0}^{m} C(m+1, k) B_k = 0.
  while (static_cast<long>(cache.size()) <= n) {
    const long m = static_cast<long>(cache.size());
    if (m > 1 && m % 2 == 1) {
      cache.emplace_back(0);
      continue;
    }
    Rational s(0);
    BigInt c(1);  // C(m+1, k)
    for (long k = 0; k < m; ++k) {
      s += c * cache[static_cast<std::size_t>(k)];
      c = c * (m + 1 - k) / (k + 1);
    }
    Rational b = -s / Rational(m + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache[static_cast<std::size_t>(n)];
}

Real zeta_int(long s, Precision p) {
  require_precision(p);
  if (s < 2) throw DomainError("zeta_int requires s >= 2");
  const Precision wp = p + 32;
  // Remainder of the Bernoulli tail bottoms out near exp(-2 pi N).
  const long n_cut = static_cast<long>(std::ceil(static_cast<double>(p.bits) * std::log(2.0) / (2 * M_PI))) + 10;
  Real sum(wp);
  for (long n = n_cut - 1; n >= 1; --n) sum += pow(Real(n, wp), -s);
  const Real big_n(n_cut, wp);
  const Real n_pow = pow(big_n, -s);  // N^-s
  sum += n_pow * big_n / (s - 1);
  sum += n_pow / 2L;
  // + sum_j B_2j / (2j)! * s (s+1) ... (s+2j-2) * N^(-s-2j+1)
  Real rising(s, wp);              // s (s+1) ... (s+2j-2)
  Real factorial(2L, wp);          // (2j)!
  Real npow = n_pow / big_n;       // N^(-s-1)
  const Real inv_n2 = 1L / square(big_n);
  const Real eps = ldexp(Real(1L, wp), -static_cast<long>(p.bits) - 12);
  for (long j = 1; j <= 4 * n_cut; ++j) {
    Real term = Real(bernoulli(2 * j), wp) / factorial * rising * npow;
    sum += term;
    if (abs(term) < eps) return sum.with_precision(p);
    rising *= (s + 2 * j - 1);
    rising *= (s + 2 * j);
    factorial *= (2 * j + 1);
    factorial *= (2 * j + 2);
    npow *= inv_n2;
  }
  throw NoConvergence("Euler-Maclaurin tail did not shrink", sum.to_string(20));
}

Real zeta_prime_minus2(Precision p) {
  const Precision wp = p + 8;
  return (-zeta_int(3, wp) / (4L * square(const_pi(wp)))).with_precision(p);
}

Real catalan(Precision p) {
  require_precision(p);
  return sum_alternating([](std::int64_t k, Precision q) { return 1L / square(Real(2 * static_cast<long>(k) + 1, q)); }, p);
}

Real legendre_chi3(const Real& alpha) {
  if (alpha < 0L || alpha > 1L) throw DomainError("legendre_chi3 requires 0 <= alpha <= 1");
  const Precision p = alpha.precision();
  require_precision(p);
  const Precision wp = p + 24;
  const Real eps = ldexp(Real(1L, wp), -static_cast<long>(p.bits) - 16);
  if (alpha.is_zero()) return Real(0L, p);
  if (alpha == 1L) return (7L * zeta_int(3, wp) / 8L).with_precision(p);
  const Real a = alpha.with_precision(wp);
  if (a <= Real(0.6, wp)) {
    const Real a2 = square(a);
    Real pw = a, sum(wp);
    const Real tail_factor = 1L / (1L - a2);
    for (long n = 0;; ++n) {
      Real term = pw / pow(Real(2 * n + 1, wp), 3L);
      sum += term;
      if (term * tail_factor < eps) break;
      pw *= a2;
    }
    return sum.with_precision(p);
  }
  // Expansion in mu = log(alpha) of (Li3(e^mu) - Li3(-e^mu)) / 2, which
  // converges for |mu| < pi.
  const Real mu = log(a);
  const Real pi2 = square(const_pi(wp));
  Real sum = 7L * zeta_int(3, wp) / 4L;
  sum += mu * pi2 / 4L;
  const Real mu2 = square(mu);
  sum += mu2 / 2L * (Real(1.5, wp) - log(-mu) + const_log2(wp));
  // c_m mu^(m+3) / (m+3)! with c_m = B_{m+1} (2^{m+1} - 2) / (m+1), odd m.
  Real mu_pow = mu2 * mu * mu;  // mu^4
  Real fact(24L, wp);           // 4!
  for (long m = 1;; m += 2) {
    Rational c = bernoulli(m + 1) * (BigInt(1) << static_cast<mp_bitcnt_t>(m + 1)) - bernoulli(m + 1) * 2;
    c /= Rational(m + 1);
    Real term = Real(c, wp) * mu_pow / fact;
    sum += term;
    if (abs(term) < eps) break;
    if (m > 4 * static_cast<long>(p.bits)) throw NoConvergence("chi_3 expansion stalled", sum.to_string(20));
    mu_pow *= mu2;
    fact *= (m + 4);
    fact *= (m + 5);
  }
  return (sum / 2L).with_precision(p);
}

Real exp_integral_e1(const Real& x) {
  if (!(x > 0L)) throw DomainError("exp_integral_e1 requires x > 0");
  const Precision p = x.precision();
  require_precision(p);
  if (x <= 4L) {
    // -gamma - log x - sum (-x)^n / (n n!); terms peak near e^x.
    const Precision wp = p + 24;
    const Real xx = x.with_precision(wp);
    const Real eps = ldexp(Real(1L, wp), -static_cast<long>(p.bits) - 16);
    Real term(1L, wp), sum(wp);
    for (long n = 1;; ++n) {
      term *= -xx;
      term /= n;
      Real t = term / n;
      sum += t;
      if (abs(t) < eps) break;
    }
    return (-const_euler(wp) - log(xx) - sum).with_precision(p);
  }
  // e^-x / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...))) by modified Lentz.
  const Precision wp = p + 16;
  const Real xx = x.with_precision(wp);
  const Real tiny = ldexp(Real(1L, wp), -4 * static_cast<long>(wp.bits));
  const Real eps = ldexp(Real(1L, wp), -static_cast<long>(p.bits) - 8);
  Real b = xx + 1L;
  Real c = 1L / tiny;
  Real d = 1L / b;
  Real h = d;
  for (long i = 1; i < 1'000'000; ++i) {
    const long an = -i * i;
    b += 2L;
    d = 1L / (b + an * d);
    c = b + an / c;
    if (c.is_zero()) c = tiny;
    const Real delta = c * d;
    h *= delta;
    if (abs(delta - 1L) < eps) return (h * exp(-xx)).with_precision(p);
  }
  throw NoConvergence("E1 continued fraction did not converge", h.to_string(20));
}

Real gamma_real(const Real& s) {
  Real r(s.precision());
  mpfr_gamma(r.get(), s.get(), MPFR_RNDN);
  if (!r.is_finite()) throw DomainError("gamma pole at " + s.to_string(10));
  return r;
}

Real gamma_upper(const Real& a, const Real& x) {
  if (!(x > 0L)) throw DomainError("gamma_upper requires x > 0");
  const Precision p(std::max(a.precision().bits, x.precision().bits));
  const Precision wp = p + 16;
  Real ai = Real(round_to_integer(a), wp);
  if (ai == a) {
    if (abs(ai) > 1'000'000L) throw DomainError("gamma_upper: integer order too large");
    const long n = static_cast<long>(ai.to_double());
    const Real xx = x.with_precision(wp);
    if (n >= 1) {
      // (n-1)! e^-x sum_{k<n} x^k / k!
      Real term(1L, wp), sum(1L, wp);
      for (long k = 1; k < n; ++k) {
        term *= xx;
        term /= k;
        sum += term;
      }
      Real fact(1L, wp);
      for (long k = 2; k < n; ++k) fact *= k;
      return (fact * exp(-xx) * sum).with_precision(p);
    }
    // Gamma(a, x) = (Gamma(a+1, x) - x^a e^-x) / a, upward from E_1.
    Real g = exp_integral_e1(xx);
    for (long m = -1; m >= n; --m) g = (g - pow(xx, m) * exp(-xx)) / m;
    return g.with_precision(p);
  }
  Real r(wp);
  mpfr_gamma_inc(r.get(), a.with_precision(wp).get(), x.with_precision(wp).get(), MPFR_RNDN);
  return r.with_precision(p);
}

Rational PFQSpec::coefficient_ratio(long n) const {
  Rational r(1);
  for (const Rational& a : upper) r *= a + n;
  for (const Rational& b : lower) r /= b + n;
  r /= Rational(n + 1);
  return r;
}

Rational PFQSpec::coefficient(long n) const {
  // Direct rising factorials, independent of coefficient_ratio.
  auto rising = [](const Rational& c, long m) {
    Rational r(1);
    for (long i = 0; i < m; ++i) r *= c + i;
    return r;
  };
  Rational num(1), den(1);
  for (const Rational& a : upper) num *= rising(a, n);
  for (const Rational& b : lower) den *= rising(b, n);
  den *= rising(Rational(1), n);
  Rational r = num / den;
  r.canonicalize();
  return r;
}

namespace {

bool is_nonpositive_integer(const Rational& q) { return q.get_den() == 1 && q <= 0; }

}  // namespace

Real pfq(const PFQSpec& spec, const Real& target_abs_error, Precision p) {
  require_precision(p);
  for (const Rational& b : spec.lower) {
    if (is_nonpositive_integer(b)) throw DomainError("pfq lower parameter is zero or a negative integer");
  }
  // Self-check of the term recurrence against direct evaluation.
  {
    Rational c(1);
    for (long n = 0; n <= 20; ++n) {
      if (c != spec.coefficient(n)) throw InternalConsistencyError("pfq term ratio disagrees with direct evaluation");
      c *= spec.coefficient_ratio(n);
    }
  }
  const Precision wp = p + 32;
  const Real x = spec.argument.with_precision(wp);

  // A nonpositive integer upper parameter terminates the series.
  long terminate = -1;
  for (const Rational& a : spec.upper) {
    if (is_nonpositive_integer(a)) {
      long m = -a.get_num().get_si();
      if (terminate < 0 || m < terminate) terminate = m;
    }
  }
  if (terminate >= 0 || x.is_zero()) {
    Real sum(wp), xn(1L, wp);
    Rational c(1);
    const long last = x.is_zero() ? 0 : terminate;
    for (long n = 0; n <= last; ++n) {
      sum += Real(c, wp) * xn;
      c *= spec.coefficient_ratio(n);
      xn *= x;
    }
    return sum.with_precision(p);
  }

  const long np = static_cast<long>(spec.upper.size());
  const long nq = static_cast<long>(spec.lower.size());
  const Real ax = abs(x);
  if (np > nq + 1) throw DomainError("pFq with p > q+1 diverges for x != 0");
  if (np == nq + 1 && ax > 1L) throw DomainError("pFq with p = q+1 diverges for |x| > 1");

  if (np == nq + 1 && ax == 1L) {
    if (x.sign() < 0) throw DomainError("pFq at x = -1 is not supported");
    Rational excess(0);
    for (const Rational& b : spec.lower) excess += b;
    for (const Rational& a : spec.upper) excess -= a;
    if (excess <= 0) throw DomainError("pFq at x = 1 needs sum(b) - sum(a) > 0");
    auto term = recurrent_term(
        0, [](Precision q) { return Real(1L, q); },
        [&spec](std::int64_t n, Precision q) { return Real(spec.coefficient_ratio(static_cast<long>(n)), q); });
    SeriesSpec series{"pFq(1)", term, nullptr, 0};
    SeriesOptions opt;
    opt.acceleration = AccelScheme::levin_u;
    opt.min_partial_sums = 64;
    return sum_series(series, target_abs_error, p, opt).value;
  }

  // Direct summation with a geometric tail bound once the ratio settles.
  double max_param = 0;
  for (const Rational& a : spec.upper) max_param = std::max(max_param, std::abs(a.get_d()));
  for (const Rational& b : spec.lower) max_param = std::max(max_param, std::abs(b.get_d()));
  const long settle = static_cast<long>(max_param) + 2;
  if (np == nq + 1) {
    const double lx = std::log(ax.to_double());
    const double need = std::log(std::max(target_abs_error.to_double(), 1e-300)) / lx;
    if (need > 1e8) throw ResourceError("pFq direct summation would need more than 1e8 terms");
  }
  const Real half_target = target_abs_error.with_precision(wp) / 2L;
  Real sum(wp + 16), term(1L, wp);
  for (long n = 0; n < 100'000'000; ++n) {
    sum += term;
    const Real ratio_next = abs(Real(spec.coefficient_ratio(n + 1), wp)) * ax;
    const Real ratio = Real(spec.coefficient_ratio(n), wp) * x;
    term *= ratio;
    if (n >= settle) {
      Real rho = np == nq + 1 ? max(ratio_next, ax) : ratio_next;
      if (rho < 1L && abs(term) / (1L - rho) < half_target) {
        sum += term;
        return sum.with_precision(p);
      }
    }
    if (term.is_zero()) return sum.with_precision(p);
  }
  throw NoConvergence("pFq direct summation exhausted its term budget", sum.to_string(20));
}

}  // namespace mahlerlab
