#include "mahlerlab/registry.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "binomial_series.hpp"
#include "mahlerlab/error.hpp"
#include "mahlerlab/finite_field.hpp"
#include "mahlerlab/mahler.hpp"
#include "mahlerlab/modular.hpp"
#include "mahlerlab/special.hpp"
#include "mahlerlab/wz.hpp"

namespace mahlerlab {

using detail::frac;
using detail::target_for;

std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::exact: return "exact";
    case CheckKind::high_precision: return "high-precision";
    case CheckKind::statistical: return "statistical";
  }
  return "unknown";
}

namespace {

int print_digits(Precision p) { return std::min(40, static_cast<int>(static_cast<double>(p.bits) * 0.30103)); }

std::string fmt(const Real& x, Precision p) { return x.to_decimal(print_digits(p)); }

std::string fmt_list(const std::vector<Real>& xs, int digits) {
  std::string out;
  for (const Real& x : xs) {
    if (!out.empty()) out += ", ";
    out += x.to_decimal(digits);
  }
  return out;
}

Precision working(const RunOptions& o) { return o.precision + 16; }

// Shared constants at one precision.
struct Constants {
  Precision p;
  Real pi, pi2, pi3, pi4, log2, zeta3, l4;

  explicit Constants(Precision q, bool need_l = true) : p(q) {
    pi = const_pi(p);
    pi2 = square(pi);
    pi3 = pi2 * pi;
    pi4 = square(pi2);
    log2 = const_log2(p);
    zeta3 = zeta_int(3, p);
    if (need_l) l4 = l_value(newform_f(), Real(4L, p), p);
  }
};

CheckOutcome compare(const Real& lhs, const Real& rhs, Precision out, std::int64_t evals = 0) {
  CheckOutcome o;
  o.lhs = fmt(lhs, out);
  o.rhs = fmt(rhs, out);
  o.deviation = abs(lhs - rhs).with_precision(out);
  o.error_estimate = Real(0L, out);
  o.evaluations = evals;
  return o;
}

// ---- integrals of K(k) K'(k) w(k) over (0,1) ----

// log k, log(1 - k), log(1 - k^2), each accurate at both ends.
Real log_k(const Real& k, const Real& kc) { return k < Real(0.5, k.precision()) ? log(k) : log1p(-kc); }
Real log_1mk(const Real& k, const Real& kc) { return k < Real(0.5, k.precision()) ? log1p(-k) : log(kc); }
Real one_minus_k2(const Real& k, const Real& kc) {
  return k < Real(0.5, k.precision()) ? 1L - square(k) : kc * (2L - kc);
}

Real ell_k_unit(const Real& k, const Real& kc) {
  return ell_k_from_complement(min(sqrt(one_minus_k2(k, kc)), Real(1L, k.precision())));
}

using Weight = std::function<Real(const Real& k, const Real& kc)>;

QuadratureResult kk_integral(const Weight& w, Precision wp) {
  UnitIntegrand f = [w](const Real& k, const Real& kc) { return ell_k_unit(k, kc) * ell_kprime(k) * w(k, kc); };
  return tanh_sinh(f, target_for(wp, 24), wp);
}

CheckOutcome integral_check(const RunOptions& o, const Weight& w, const std::function<Real(const Constants&)>& closed) {
  const Precision wp = working(o);
  const Constants c(wp);
  const QuadratureResult q = kk_integral(w, wp);
  return compare(closed(c), q.value, o.precision, q.evaluations);
}

// ---- binomial double sums ----

// D = sum_n T(n) / (2n+1)^2 with T(n) = sum_{k<=n} (4k+1) c_k^2, rearranged
// as sum_k t_k U_k, U_k = sum_{n>=k} 1/(2n+1)^2 = pi^2/8 - sum_{n<k} 1/(2n+1)^2.
// t_k comes from the exact partial sums.
Real ramanujan_double_sum(Precision p) {
  static std::mutex mu;
  static std::vector<Rational> exact;
  {
    std::lock_guard lock(mu);
    if (exact.empty()) exact = ramanujan_partial_sums(1100);
  }
  struct State {
    std::int64_t n = -1;
    Precision p{0};
    Real u;
  };
  auto st = std::make_shared<State>();
  SeriesSpec spec;
  spec.name = "sum t_k U_k";
  spec.term = [st](std::int64_t k, Precision q) -> Real {
    if (k >= static_cast<std::int64_t>(exact.size())) throw ResourceError("exact partial sums exhausted");
    if (st->p != q || st->n < 0 || st->n > k) {
      st->p = q;
      st->n = 0;
      st->u = square(const_pi(q)) / 8L;
    }
    while (st->n < k) {
      st->u -= 1L / square(Real(2 * st->n + 1, q));
      ++st->n;
    }
    const std::size_t i = static_cast<std::size_t>(k);
    const Rational t = k == 0 ? exact[0] : Rational(exact[i] - exact[i - 1]);
    return Real(t, q) * st->u;
  };
  SeriesOptions opts;
  opts.acceleration = AccelScheme::levin_u;
  return sum_series(spec, target_for(p, 8), p, opts).value;
}

// sum_{n>=0} c_n^2 / (2n+1)
Real odd_reciprocal_sum(Precision p) {
  return detail::sum_central_power(2, [](std::int64_t n) { return frac(1, 2 * n + 1); }, 0, p);
}

// ---- exact helpers ----

CheckOutcome exact_outcome(const Rational& residual, std::int64_t count, const std::string& what) {
  CheckOutcome o;
  const Rational r = abs(residual);
  o.lhs = r.get_str();
  o.rhs = "0";
  o.deviation = Real(r, Precision(64));
  o.error_estimate = Real(0L, Precision(64));
  o.evaluations = count;
  o.note = what;
  return o;
}

CheckOutcome wz_check(const WZPair& pair, long n_max) {
  const WZReport r = wz_pair_verify(pair, n_max);
  Rational residual(0);
  for (const auto& v : r.violations) residual += abs(v.residual);
  std::string note = std::to_string(r.checked) + " relations, n <= " + std::to_string(n_max);
  if (!r.ok()) {
    note += "; " + std::to_string(r.violation_count) + " violations, first at (" +
            std::to_string(r.violations.front().n) + ", " + std::to_string(r.violations.front().k) + ")";
  }
  return exact_outcome(residual, r.checked, note);
}

// ---- statistical helpers ----

CheckOutcome qmc_check(const RunOptions& o, const std::string& poly, const Real& closed) {
  const QuadratureResult q = mahler_numeric(LaurentDescriptor::builtin(poly), o.samples, o.shifts, o.seed);
  CheckOutcome out;
  out.lhs = q.value.to_decimal(std::min(17, print_digits(o.precision)));
  out.rhs = fmt(closed, o.precision);
  out.deviation = abs(q.value.with_precision(o.precision) - closed).with_precision(o.precision);
  out.error_estimate = q.error_estimate.with_precision(o.precision);
  out.evaluations = q.evaluations;
  std::ostringstream note;
  note << o.samples << " x " << o.shifts << " lattice points, sigma " << q.error_estimate.to_string(3);
  if (q.discarded > 0) note << ", " << q.discarded << " singular points skipped";
  out.note = note.str();
  return out;
}

CheckOutcome fourier_outcome(const RunOptions& o, FourierSeries which, long denom) {
  const Precision p = o.precision;
  const Real theta = const_pi(p) / denom;
  const FourierCheck f = fourier_check(which, theta, 400, p);
  CheckOutcome out = compare(f.truncated, f.direct, p, 400);
  out.tolerance = min(Real(1e-3, p), f.tail_bound);
  std::ostringstream note;
  note << "theta = pi/" << denom << ", 400 terms, tail bound " << f.tail_bound.to_string(3) << ", decay ratio "
       << fourier_decay_ratio(which, theta, 400, Precision(64));
  out.note = note.str();
  return out;
}

CheckOutcome lambda_symmetry(const RunOptions& o, const Newform& form) {
  CheckOutcome out;
  Real asym;
  try {
    asym = fricke_check(form, o.precision);
  } catch (const FunctionalEquationViolation& e) {
    asym = Real(e.asymmetry(), o.precision);
    out.note = e.what();
  }
  out.lhs = asym.to_string(3);
  out.rhs = "0";
  out.deviation = asym;
  out.error_estimate = Real(0L, o.precision);
  out.tolerance = ldexp(Real(1L, o.precision), 20 - static_cast<long>(o.precision.bits));
  return out;
}

// ---- the catalogue ----

IdentityCheck hp(std::string id, std::string desc, double floor, std::vector<std::string> tags,
                 std::function<CheckOutcome(const RunOptions&)> run) {
  IdentityCheck c;
  c.id = std::move(id);
  c.description = std::move(desc);
  c.kind = CheckKind::high_precision;
  c.tolerance_floor = floor;
  c.tags = std::move(tags);
  c.run = std::move(run);
  return c;
}

IdentityCheck ex(std::string id, std::string desc, std::vector<std::string> tags,
                 std::function<CheckOutcome(const RunOptions&)> run) {
  IdentityCheck c = hp(std::move(id), std::move(desc), 0.0, std::move(tags), std::move(run));
  c.kind = CheckKind::exact;
  return c;
}

IdentityCheck st(std::string id, std::string desc, std::function<CheckOutcome(const RunOptions&)> run) {
  IdentityCheck c = hp(std::move(id), std::move(desc), 0.0, {"qmc"}, std::move(run));
  c.kind = CheckKind::statistical;
  return c;
}

std::vector<IdentityCheck> build_catalogue() {
  std::vector<IdentityCheck> v;

  // Main theorem and its hypergeometric restatement.
  {
    IdentityCheck c = hp("thm-1.1", "m(R_16): 4 log 2 - sum C(2n,n)^4/(2n 2^8n) = 192 L(f,4)/pi^4 + 7 zeta(3)/pi^2",
                         1e-20, {"series", "l-function"}, [](const RunOptions& o) {
                           const Precision wp = working(o);
                           const Constants c(wp);
                           return compare(m_r16_series(wp), 192L * c.l4 / c.pi4 + 7L * c.zeta3 / c.pi2, o.precision);
                         });
    c.aliases = {"eq-1.4"};
    v.push_back(std::move(c));
  }
  v.push_back(hp("thm-1.1-lprime", "m(R_16) = 8 L'(f,0) - 28 zeta'(-2)", 1e-20, {"series", "l-function"},
                 [](const RunOptions& o) {
                   const Precision wp = working(o);
                   const Real rhs = 8L * l_prime_at_0(newform_f(), wp) - 28L * zeta_prime_minus2(wp);
                   return compare(m_r16_series(wp), rhs, o.precision);
                 }));
  v.push_back(hp("eq-1.5", "6F5(3/2,3/2,3/2,3/2,1,1; 2,2,2,2,2; 1) = 128 log 2 - 6144 L(f,4)/pi^4 - 224 zeta(3)/pi^2",
                 1e-10, {"series", "l-function"}, [](const RunOptions& o) {
                   const Precision wp = working(o);
                   const Constants c(wp);
                   PFQSpec spec;
                   const Rational h = frac(3, 2);
                   spec.upper = {h, h, h, h, Rational(1), Rational(1)};
                   spec.lower = {Rational(2), Rational(2), Rational(2), Rational(2), Rational(2)};
                   spec.argument = Real(1L, wp);
                   const Real lhs = pfq(spec, target_for(wp, 8), wp);
                   const Real rhs = 128L * c.log2 - 6144L * c.l4 / c.pi4 - 224L * c.zeta3 / c.pi2;
                   return compare(lhs, rhs, o.precision);
                 }));

  // Integrals of K K'.
  v.push_back(hp("eq-2.4", "192 L(f,4)/pi = -8 int (1+k^2)/(1-k^2) K K' log k dk", 1e-15, {"quadrature", "l-function"},
                 [](const RunOptions& o) {
                   return integral_check(
                       o, [](const Real& k, const Real& kc) { return -8L * (1L + square(k)) / one_minus_k2(k, kc) * log_k(k, kc); },
                       [](const Constants& c) { return 192L * c.l4 / c.pi; });
                 }));
  v.push_back(hp("eq-2.5", "7 pi zeta(3) = -8 int 2k/(1-k^2) K K' log k dk", 1e-15, {"quadrature"},
                 [](const RunOptions& o) {
                   const Precision wp = working(o);
                   const Constants c(wp, false);
                   const QuadratureResult q = kk_integral(
                       [](const Real& k, const Real& kc) { return -16L * k / one_minus_k2(k, kc) * log_k(k, kc); }, wp);
                   return compare(7L * c.pi * c.zeta3, q.value, o.precision, q.evaluations);
                 }));
  v.push_back(hp("e-wan", "(7/8) pi zeta(3) = int -log(1-k^2)/k K K' dk", 1e-15, {"quadrature"}, [](const RunOptions& o) {
    const Precision wp = working(o);
    const Constants c(wp, false);
    const QuadratureResult q = kk_integral(
        [](const Real& k, const Real& kc) {
          const Real l = k < Real(0.5, k.precision()) ? log1p(-square(k)) : log(kc * (2L - kc));
          return -l / k;
        },
        wp);
    return compare(7L * c.pi * c.zeta3 / 8L, q.value, o.precision, q.evaluations);
  }));
  v.push_back(hp("e-kk2", "(4/pi^2) int k K^2 dk = 7 zeta(3)/pi^2", 1e-15, {"quadrature"}, [](const RunOptions& o) {
    const Precision wp = working(o);
    const Constants c(wp, false);
    UnitIntegrand f = [](const Real& k, const Real& kc) { return k * square(ell_k_unit(k, kc)); };
    const QuadratureResult q = tanh_sinh(f, target_for(wp, 24), wp);
    return compare(7L * c.zeta3 / c.pi2, 4L * q.value / c.pi2, o.precision, q.evaluations);
  }));
  v.push_back(hp("eq-2.6", "192 L(f,4)/pi^4 + 7 zeta(3)/pi^2 = (8/pi^3) int K K' log((1+k)/(1-k)) dk/k", 1e-15,
                 {"quadrature", "l-function"}, [](const RunOptions& o) {
                   const Precision wp = working(o);
                   const Constants c(wp);
                   const QuadratureResult q = kk_integral(
                       [](const Real& k, const Real& kc) { return (log1p(k) - log_1mk(k, kc)) / k; }, wp);
                   return compare(192L * c.l4 / c.pi4 + 7L * c.zeta3 / c.pi2, 8L * q.value / c.pi3, o.precision,
                                  q.evaluations);
                 }));
  v.push_back(hp("eq-2.7", "12 L(f,4)/pi = int K K' log(1+k) dk/k", 1e-15, {"quadrature", "l-function"},
                 [](const RunOptions& o) {
                   return integral_check(
                       o, [](const Real& k, const Real&) { return log1p(k) / k; },
                       [](const Constants& c) { return 12L * c.l4 / c.pi; });
                 }));
  v.push_back(hp("eq-2.8-analytic", "-12 L(f,4)/pi - (7/8) pi zeta(3) = int K K' log(1-k) dk/k", 1e-15,
                 {"quadrature", "l-function"}, [](const RunOptions& o) {
                   return integral_check(
                       o, [](const Real& k, const Real& kc) { return log_1mk(k, kc) / k; },
                       [](const Constants& c) { return -12L * c.l4 / c.pi - 7L * c.pi * c.zeta3 / 8L; });
                 }));
  for (int m = 0; m <= 6; ++m) {
    v.push_back(hp("wan-moment-" + std::to_string(m),
                   "int k^" + std::to_string(m) + " K K' dk = (pi^2/8) Gamma ratio 4F3(...; 1)", 1e-8,
                   {"quadrature", "wan-moments"}, [m](const RunOptions& o) {
                     const Precision wp = working(o);
                     const WanMomentCheck w = wan_moment_check(m, target_for(wp, 16), wp);
                     return compare(w.quadrature, w.closed_form, o.precision, w.evaluations);
                   }));
  }

  // Binomial double sums.
  v.push_back(hp("eq-2.10", "(8/pi^3) int K K' log((1+k)/(1-k)) dk/k = 2 sum T(n)/(2n+1)^2", 1e-10,
                 {"series", "quadrature"}, [](const RunOptions& o) {
                   const Precision wp = working(o);
                   const Constants c(wp, false);
                   const QuadratureResult q = kk_integral(
                       [](const Real& k, const Real& kc) { return (log1p(k) - log_1mk(k, kc)) / k; }, wp);
                   return compare(8L * q.value / c.pi3, 2L * ramanujan_double_sum(wp), o.precision, q.evaluations);
                 }));
  v.push_back(hp("eq-2.11", "14 zeta(3)/pi^2 + sum C(2n,n)^4/(2^8n (2n+1)) = 2 sum T(n)/(2n+1)^2", 1e-10, {"series"},
                 [](const RunOptions& o) {
                   const Precision wp = working(o);
                   const Constants c(wp, false);
                   return compare(14L * c.zeta3 / c.pi2 + odd_reciprocal_sum(wp), 2L * ramanujan_double_sum(wp),
                                  o.precision);
                 }));
  v.push_back(hp("eq-3.2", "4 log 2 - 14 zeta(3)/pi^2 = 1 + sum_{n>=1} (4n+1)/(2n(2n+1)) C(2n,n)^4/2^8n", 1e-10,
                 {"series"}, [](const RunOptions& o) {
                   const Precision wp = working(o);
                   const Constants c(wp, false);
                   const Real s = detail::sum_central_power(
                       2, [](std::int64_t n) { return frac(4 * n + 1, 2 * n * (2 * n + 1)); }, 1, wp);
                   return compare(4L * c.log2 - 14L * c.zeta3 / c.pi2, 1L + s, o.precision);
                 }));
  v.push_back(hp("eq-4.3", "192 L(f,4)/pi^4 - 7 zeta(3)/pi^2 = sum C(2n,n)^4/(2^8n (2n+1))", 1e-10,
                 {"series", "l-function"}, [](const RunOptions& o) {
                   const Precision wp = working(o);
                   const Constants c(wp);
                   return compare(192L * c.l4 / c.pi4 - 7L * c.zeta3 / c.pi2, odd_reciprocal_sum(wp), o.precision);
                 }));

  // R(a), m(4a) and the density kernel.
  v.push_back(hp("eq-3.5", "R(1) = (4/pi^2) chi_3(1) = 7 zeta(3)/(2 pi^2)", 1e-25, {"series"}, [](const RunOptions& o) {
    const Precision wp = working(o);
    const Constants c(wp, false);
    return compare(r_alpha(Real(1L, wp), RAlphaRoute::polylog, wp).value, 7L * c.zeta3 / (2L * c.pi2), o.precision);
  }));
  v.push_back(hp("eq-3.5-vs-3.6", "R(a) by trilogarithm and by int m(4ak) K'(k) dk, a in {0.3, 0.7, 1}", 1e-8,
                 {"quadrature"}, [](const RunOptions& o) {
                   const Precision p(std::min<mpfr_prec_t>(o.precision.bits, 96));
                   std::vector<Real> poly, kint;
                   Real dev(0L, p);
                   std::int64_t evals = 0;
                   for (const char* a : {"0.3", "0.7", "1"}) {
                     const Real alpha = Real::parse(a, p);
                     poly.push_back(r_alpha(alpha, RAlphaRoute::polylog, p).value);
                     const RAlphaResult k = r_alpha(alpha, RAlphaRoute::k_integral, p);
                     kint.push_back(k.value);
                     evals += k.evaluations;
                     dev = max(dev, abs(poly.back() - kint.back()));
                   }
                   CheckOutcome out;
                   out.lhs = fmt_list(poly, 20);
                   out.rhs = fmt_list(kint, 20);
                   out.deviation = dev;
                   out.error_estimate = Real(0L, p);
                   out.evaluations = evals;
                   return out;
                 }));
  v.push_back(hp("eq-3.7", "int int F(|cos 2 pi t cos 2 pi s|) = (4/pi^2) int F(k) K'(k) dk, F = k^m, m = 0..4", 1e-8,
                 {"quadrature"}, [](const RunOptions& o) {
                   const Precision p(std::min<mpfr_prec_t>(o.precision.bits, 96));
                   std::vector<Real> lhs, rhs;
                   Real dev(0L, p);
                   std::int64_t evals = 0;
                   for (int m = 0; m <= 4; ++m) {
                     const DensityCheck d = density_integral_check(m, Real(1e-14, p), p);
                     lhs.push_back(d.torus_side);
                     rhs.push_back(d.kernel_side);
                     dev = max(dev, d.deviation);
                     evals += d.evaluations;
                   }
                   CheckOutcome out;
                   out.lhs = fmt_list(lhs, 20);
                   out.rhs = fmt_list(rhs, 20);
                   out.deviation = dev;
                   out.error_estimate = Real(0L, p);
                   out.evaluations = evals;
                   return out;
                 }));
  v.push_back(hp("fourier-3.8", "K(sin t) cos t Fourier series at t = pi/6", 1e-3, {"fourier"},
                 [](const RunOptions& o) { return fourier_outcome(o, FourierSeries::ksin, 6); }));
  v.push_back(hp("fourier-3.9", "K(cos t) cos t Fourier series at t = pi/4", 1e-3, {"fourier"},
                 [](const RunOptions& o) { return fourier_outcome(o, FourierSeries::kcos, 4); }));
  v.push_back(hp("fourier-3.10", "m(4 sin t) Fourier series at t = pi/3", 1e-3, {"fourier"},
                 [](const RunOptions& o) { return fourier_outcome(o, FourierSeries::m4sin, 3); }));
  v.push_back(hp("lambda-symmetry-f", "Lambda(f,s) = Lambda(f,4-s)", 0.0, {"l-function"},
                 [](const RunOptions& o) { return lambda_symmetry(o, newform_f()); }));
  v.push_back(hp("lambda-symmetry-h", "Lambda(h,s) = Lambda(h,3-s)", 0.0, {"l-function"},
                 [](const RunOptions& o) { return lambda_symmetry(o, newform_h()); }));

  // Exact.
  v.push_back(ex("wz-pair-1", "WZ pair with denominator 2n-2k+1, n <= 500", {"wz"},
                 [](const RunOptions&) { return wz_check(wz_pair_1(), 500); }));
  v.push_back(ex("wz-pair-2", "WZ pair with denominator n+k+1, n <= 500", {"wz"},
                 [](const RunOptions&) { return wz_check(wz_pair_2(), 500); }));
  v.push_back(ex("wz-telescope", "h(n) = h(0) + sum (f(j,j) + g(j-1,j) - g(j-1,0)) for both pairs, n <= 500", {"wz"},
                 [](const RunOptions&) {
                   Rational residual(0);
                   std::int64_t count = 0;
                   for (const WZPair& pair : {wz_pair_1(), wz_pair_2()}) {
                     const WZReport r = telescope_reconstruct(pair, 500);
                     for (const auto& x : r.violations) residual += abs(x.residual);
                     if (r.violation_count > 0 && residual == 0) residual = 1;
                     count += r.checked;
                   }
                   return exact_outcome(residual, count, "both pairs, n <= 500");
                 }));
  v.push_back(ex("wz-2.8-2.9", "three binomial sums agree exactly for n <= 500", {"wz"}, [](const RunOptions&) {
    Rational residual(0);
    for (long n = 0; n <= 500; ++n) {
      const BinomialTriple t = identity_2_8_2_9(n);
      residual += abs(Rational(t.first - t.second)) + abs(Rational(t.second - t.third));
    }
    return exact_outcome(residual, 501, "n = 0..500");
  }));
  v.push_back(ex("ff-4.1", "point count of H_t against the hypergeometric formula, p <= 13, all t", {"finite-field"},
                 [](const RunOptions&) {
                   Rational residual(0);
                   std::int64_t rows = 0;
                   for (long p : {3L, 5L, 7L, 11L, 13L}) {
                     for (const auto& r : verify_4_1(p).rows) {
                       residual += abs(r.residual);
                       ++rows;
                     }
                   }
                   return exact_outcome(residual, rows, "p in {3, 5, 7, 11, 13}, every t in F_p^*");
                 }));
  v.push_back(ex("ff-4.1-extended", "point count formula for 17 <= p <= 47", {"finite-field", "extended"},
                 [](const RunOptions&) {
                   Rational residual(0);
                   std::int64_t rows = 0;
                   for (long p = 17; p <= 47; p += 2) {
                     if (!is_prime(p)) continue;
                     for (const auto& r : verify_4_1(p).rows) {
                       residual += abs(r.residual);
                       ++rows;
                     }
                   }
                   return exact_outcome(residual, rows, "primes 17..47, every t in F_p^*");
                 }));
  v.push_back(ex("ff-ahlgren-ono", "p^3 4F3(1) = -a_p - p for p <= 13", {"finite-field", "q-series"},
                 [](const RunOptions&) {
                   Rational residual(0);
                   std::string lhs, rhs;
                   for (long p : {3L, 5L, 7L, 11L, 13L}) {
                     const Rational a = greene_nfn(p, 3, 1) * Rational(p * p * p);
                     const Rational b(-newform_f().coefficient(p) - p);
                     residual += abs(Rational(a - b));
                     lhs += (lhs.empty() ? "" : ", ") + a.get_str();
                     rhs += (rhs.empty() ? "" : ", ") + b.get_str();
                   }
                   CheckOutcome o = exact_outcome(residual, 5, "p in {3, 5, 7, 11, 13}");
                   o.lhs = lhs;
                   o.rhs = rhs;
                   return o;
                 }));
  v.push_back(ex("qexp-ramanujan", "q psi(q^2)^4 = sum (2n+1) q^((2n+1)(2k+1)) and f = q psi^4(q^2) phi^4(-q^2), order 200",
                 {"q-series"}, [](const RunOptions&) {
                   constexpr long order = 200;
                   const QSeries psi4 = theta_psi(order).substitute_power(2).pow(4);
                   const QSeries lhs = psi4.shifted(1);
                   QSeries divisor(order);
                   for (long n = 0; 2 * n + 1 <= order; ++n) {
                     for (long k = 0; (2 * n + 1) * (2 * k + 1) <= order; ++k) divisor[(2 * n + 1) * (2 * k + 1)] += 2 * n + 1;
                   }
                   const QSeries phi4 = theta_phi(order).negate_q().substitute_power(2).pow(4);
                   const QSeries product = lhs * phi4;
                   const std::vector<BigInt> f = newform_f().coefficients(order);
                   BigInt residual(0);
                   for (long n = 1; n <= order; ++n) {
                     residual += abs(BigInt(lhs[n] - divisor[n]));
                     residual += abs(BigInt(product[n] - f[static_cast<std::size_t>(n - 1)]));
                   }
                   return exact_outcome(Rational(residual), 2 * order, "coefficients 1..200 of both expansions");
                 }));
  v.push_back(ex("qexp-f-coeffs", "a_mn = a_m a_n (coprime, mn <= 100) and a_(p^2) = a_p^2 - p^3 (odd p <= 50)",
                 {"q-series"}, [](const RunOptions&) {
                   const Newform& f = newform_f();
                   const std::vector<BigInt> a = f.coefficients(2500);
                   auto at = [&a](long n) { return a[static_cast<std::size_t>(n - 1)]; };
                   BigInt residual(0);
                   std::int64_t count = 0;
                   for (long m = 2; m <= 50; ++m) {
                     for (long n = m + 1; m * n <= 100; ++n) {
                       if (std::gcd(m, n) != 1) continue;
                       residual += abs(BigInt(at(m * n) - at(m) * at(n)));
                       ++count;
                     }
                   }
                   for (long p = 3; p <= 50; p += 2) {
                     if (!is_prime(p)) continue;
                     residual += abs(BigInt(at(p * p) - (at(p) * at(p) - BigInt(p * p * p))));
                     ++count;
                   }
                   return exact_outcome(Rational(residual), count, "multiplicativity and prime-square relations");
                 }));

  // Statistical.
  v.push_back(st("eq-1.1", "m(x+1/x+y+1/y-4) by QMC = 4G/pi", [](const RunOptions& o) {
    const Precision wp = working(o);
    return qmc_check(o, "p4", 4L * catalan(wp) / const_pi(wp));
  }));
  v.push_back(st("eq-1.2", "m((x+1/x)(y+1/y)(z+1/z)-8) by QMC = 4 L'(h,0)", [](const RunOptions& o) {
    return qmc_check(o, "q8", 4L * l_prime_at_0(newform_h(), working(o)));
  }));
  v.push_back(st("thm-1.1-torus", "m(R_16) by QMC = 192 L(f,4)/pi^4 + 7 zeta(3)/pi^2", [](const RunOptions& o) {
    const Constants c(working(o));
    return qmc_check(o, "r16", 192L * c.l4 / c.pi4 + 7L * c.zeta3 / c.pi2);
  }));
  v.push_back(st("eq-4.4", "m(x+1/x+y+1/y+z+1/z+w+1/w) by QMC = 7 zeta(3)/(2 pi^2)", [](const RunOptions& o) {
    const Constants c(working(o), false);
    return qmc_check(o, "s0", 7L * c.zeta3 / (2L * c.pi2));
  }));
  v.push_back(st("m-r32", "m(R_32) by QMC = log 32 - (8/32^2) 6F5(...; 1/4)", [](const RunOptions& o) {
    const Precision wp = working(o);
    return qmc_check(o, "r32", m_rk_hypergeometric(Real(32L, wp), target_for(wp, 8), wp));
  }));

  for (IdentityCheck& c : v) {
    c.tags.push_back(to_string(c.kind));
    std::sort(c.tags.begin(), c.tags.end());
  }
  return v;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

const std::vector<IdentityCheck>& all_checks() {
  static const std::vector<IdentityCheck> catalogue = build_catalogue();
  return catalogue;
}

std::vector<std::string> suggest_ids(std::string_view id, std::size_t limit) {
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const IdentityCheck& c : all_checks()) {
    std::vector<std::string> names = c.aliases;
    names.push_back(c.id);
    std::size_t best = std::string::npos;
    for (const std::string& n : names) {
      std::size_t d = edit_distance(id, n);
      if (!id.empty() && n.rfind(id, 0) == 0) d = std::min<std::size_t>(d, 1);
      best = std::min(best, d);
    }
    if (best <= 3) scored.emplace_back(best, c.id);
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::string> out;
  for (const auto& [d, name] : scored) {
    if (out.size() >= limit) break;
    out.push_back(name);
  }
  return out;
}

const IdentityCheck& find_check(std::string_view id) {
  for (const IdentityCheck& c : all_checks()) {
    if (c.id == id) return c;
    for (const std::string& a : c.aliases) {
      if (a == id) return c;
    }
  }
  throw NotFound("no identity check named '" + std::string(id) + "'", suggest_ids(id));
}

Real default_tolerance(const IdentityCheck& check, Precision p, const Real& error_estimate) {
  switch (check.kind) {
    case CheckKind::exact: return Real(0L, p);
    case CheckKind::statistical: return max(Real(5e-3, p), 6L * error_estimate.with_precision(p));
    case CheckKind::high_precision: break;
  }
  const double exponent = -(0.3 * static_cast<double>(p.bits) - 10.0);
  const Real scaled = pow(Real(10L, p), Real(exponent, p));
  return max(Real(check.tolerance_floor, p), scaled);
}

CheckResult run_check(std::string_view id, const RunOptions& options) {
  require_precision(options.precision);
  const IdentityCheck& check = find_check(id);
  CheckResult r;
  r.id = check.id;
  r.kind = check.kind;
  r.seed = options.seed;
  r.precision = options.precision;
  r.tolerance = default_tolerance(check, options.precision, Real(0L, options.precision));
  const auto start = std::chrono::steady_clock::now();
  try {
    CheckOutcome o = check.run(options);
    r.lhs = std::move(o.lhs);
    r.rhs = std::move(o.rhs);
    r.evaluations = o.evaluations;
    r.note = std::move(o.note);
    r.tolerance = o.tolerance ? o.tolerance->with_precision(options.precision)
                              : default_tolerance(check, options.precision, o.error_estimate);
    r.deviation = o.deviation.with_precision(options.precision);
    r.pass = r.deviation->is_finite() && *r.deviation <= r.tolerance;
  } catch (const std::exception& e) {
    r.pass = false;
    r.note = e.what();
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

bool matches_filter(const IdentityCheck& check, const std::set<std::string>& filter) {
  if (filter.empty()) return true;
  return std::any_of(check.tags.begin(), check.tags.end(), [&](const std::string& t) { return filter.count(t) > 0; }) ||
         filter.count(check.id) > 0;
}

std::vector<CheckResult> run_all(const std::set<std::string>& filter, const RunOptions& options) {
  std::vector<const IdentityCheck*> selected;
  for (const IdentityCheck& c : all_checks()) {
    if (matches_filter(c, filter)) selected.push_back(&c);
  }
  std::vector<CheckResult> results(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) results[i] = run_check(selected[i]->id, options);
  };
  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(selected.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace mahlerlab
