#include "mahlerlab/mahler.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mahlerlab/error.hpp"
#include "mahlerlab/series.hpp"
#include "mahlerlab/special.hpp"
#include "binomial_series.hpp"

namespace mahlerlab {

using detail::central_power_term;
using detail::frac;
using detail::target_for;

namespace {

using Terms = std::map<std::vector<int>, long>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Terms multiply(const Terms& a, const Terms& b) {
  Terms out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Terms add(Terms a, const Terms& b) {
  for (const auto& [e, c] : b) a[e] += c;
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  return a;
}

// x_i + 1/x_i in `dim` variables.
Terms laurent_cos(int dim, int i) {
  std::vector<int> plus(static_cast<std::size_t>(dim), 0), minus(static_cast<std::size_t>(dim), 0);
  plus[static_cast<std::size_t>(i)] = 1;
  minus[static_cast<std::size_t>(i)] = -1;
  return Terms{{plus, 1}, {minus, 1}};
}

Terms constant(int dim, long c) {
  if (c == 0) return {};
  return Terms{{std::vector<int>(static_cast<std::size_t>(dim), 0), c}};
}

double c2(double theta) { return 2.0 * std::cos(kTwoPi * theta); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_long(std::string_view s, long& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

}  // namespace

void LaurentDescriptor::validate() const {
  if (dimension < 1 || dimension > 4) throw InvalidArgument("descriptor dimension must be 1..4");
  bool nonzero = false;
  for (const auto& [e, c] : terms) {
    if (static_cast<int>(e.size()) != dimension) throw InvalidArgument("exponent vector has the wrong length");
    for (int x : e) {
      if (std::abs(x) > kMaxLaurentExponent) throw InvalidArgument("exponent exceeds 8 in absolute value");
    }
    nonzero = nonzero || c != 0;
  }
  if (!nonzero) throw InvalidArgument("descriptor '" + name + "' has no nonzero term");
}

std::complex<double> LaurentDescriptor::evaluate(std::span<const double> theta) const {
  std::complex<double> s(0.0, 0.0);
  for (const auto& [e, c] : terms) {
    double phase = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) phase += e[i] * theta[i];
    s += static_cast<double>(c) * std::polar(1.0, kTwoPi * phase);
  }
  return s;
}

std::vector<std::string> builtin_descriptor_names() {
  return {"p4", "p:<k>", "q8", "q:<k>", "r16", "r:<k>", "s0", "s:<k>", "ra:<a>"};
}

LaurentDescriptor LaurentDescriptor::builtin(std::string_view name) {
  name = trim(name);
  std::size_t split = 0;
  while (split < name.size() && std::isalpha(static_cast<unsigned char>(name[split]))) ++split;
  const std::string family(name.substr(0, split));
  std::string_view rest = name.substr(split);
  if (!rest.empty() && rest.front() == ':') rest.remove_prefix(1);
  long k = 0;
  if (!parse_long(rest, k)) throw InvalidArgument("not a built-in polynomial: '" + std::string(name) + "'");

  LaurentDescriptor d;
  d.name = std::string(name);
  const double kd = static_cast<double>(k);
  if (family == "p") {
    d.dimension = 2;
    d.terms = add(add(laurent_cos(2, 0), laurent_cos(2, 1)), constant(2, -k));
    d.reduced = [kd](std::span<const double> t) { return c2(t[0]) + c2(t[1]) - kd; };
  } else if (family == "q") {
    d.dimension = 3;
    d.terms = add(multiply(multiply(laurent_cos(3, 0), laurent_cos(3, 1)), laurent_cos(3, 2)), constant(3, -k));
    d.reduced = [kd](std::span<const double> t) { return c2(t[0]) * c2(t[1]) * c2(t[2]) - kd; };
  } else if (family == "r") {
    d.dimension = 4;
    Terms prod = laurent_cos(4, 0);
    for (int i = 1; i < 4; ++i) prod = multiply(prod, laurent_cos(4, i));
    d.terms = add(prod, constant(4, -k));
    d.reduced = [kd](std::span<const double> t) { return c2(t[0]) * c2(t[1]) * c2(t[2]) * c2(t[3]) - kd; };
  } else if (family == "s") {
    d.dimension = 4;
    Terms sum = constant(4, -k);
    for (int i = 0; i < 4; ++i) sum = add(sum, laurent_cos(4, i));
    d.terms = sum;
    d.reduced = [kd](std::span<const double> t) { return c2(t[0]) + c2(t[1]) + c2(t[2]) + c2(t[3]) - kd; };
  } else if (family == "ra") {
    // Variables ordered (x, y, u, z).
    d.dimension = 4;
    Terms xy = multiply(laurent_cos(4, 0), laurent_cos(4, 1));
    Terms uz = multiply(multiply(laurent_cos(4, 2), laurent_cos(4, 3)), constant(4, k));
    d.terms = add(uz, xy);
    d.reduced = [kd](std::span<const double> t) { return kd * c2(t[2]) * c2(t[3]) + c2(t[0]) * c2(t[1]); };
  } else {
    throw InvalidArgument("unknown built-in family '" + family + "'");
  }
  d.validate();
  return d;
}

LaurentDescriptor LaurentDescriptor::parse(std::string_view text) {
  const std::string_view t = trim(text);
  if (!t.empty() && std::isalpha(static_cast<unsigned char>(t.front()))) return builtin(t);

  LaurentDescriptor d;
  d.name = "user";
  d.dimension = 0;
  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), ';', '\n');
  std::istringstream in(normalized);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<long> values;
    std::string tok;
    while (fields >> tok) {
      long v = 0;
      if (!parse_long(tok, v)) {
        throw InvalidArgument("descriptor line " + std::to_string(line_no) + ": '" + tok + "' is not an integer");
      }
      values.push_back(v);
    }
    if (values.empty()) continue;
    const int dim = static_cast<int>(values.size()) - 1;
    if (dim < 1) throw InvalidArgument("descriptor line " + std::to_string(line_no) + " has no exponents");
    if (d.dimension == 0) d.dimension = dim;
    if (dim != d.dimension) throw InvalidArgument("descriptor line " + std::to_string(line_no) + " has inconsistent dimension");
    std::vector<int> e(values.begin() + 1, values.end());
    d.terms[e] += values[0];
  }
  std::erase_if(d.terms, [](const auto& kv) { return kv.second == 0; });
  d.validate();
  return d;
}

QuadratureResult mahler_numeric(const LaurentDescriptor& poly, std::uint64_t samples, int shifts, std::uint64_t seed) {
  poly.validate();
  TorusIntegrand f;
  f.dimension = poly.dimension;
  f.singular_set_note = "zero set of " + poly.name;
  if (poly.reduced) {
    auto r = poly.reduced;
    f.evaluate = [r](std::span<const double> t) { return std::log(std::abs(r(t))); };
  } else {
    f.evaluate = [&poly](std::span<const double> t) { return std::log(std::abs(poly.evaluate(t))); };
  }
  return torus_qmc(f, samples, shifts, seed);
}

Real m_rk_hypergeometric(const Real& k, const Real& target_abs_error, Precision p) {
  require_precision(p);
  const Precision wp = p + 16;
  const Real ak = abs(k.with_precision(wp));
  if (ak < 16L) throw DomainError("the 6F5 formula requires |k| >= 16, got " + k.to_string(12));
  PFQSpec spec;
  const Rational three_halves = frac(3, 2);
  spec.upper = {three_halves, three_halves, three_halves, three_halves, Rational(1), Rational(1)};
  spec.lower = {Rational(2), Rational(2), Rational(2), Rational(2), Rational(2)};
  const Real k2 = square(ak);
  // At |k| = 16 this is exactly 1 and pfq takes the accelerated unit path.
  spec.argument = Real(256L, wp) / k2;
  const Real scale = Real(8L, wp) / k2;
  const Real f = pfq(spec, target_abs_error.with_precision(wp) / scale, wp);
  return (log(ak) - scale * f).with_precision(p);
}

Real m_r16_series(Precision p) {
  require_precision(p);
  const Real s = detail::sum_central_power(2, [](std::int64_t n) { return frac(1, 2 * n); }, 1, p + 8);
  return (4L * const_log2(p + 8) - s).with_precision(p);
}

Real m_alpha(const Real& alpha, MAlphaRoute route, Precision p) {
  require_precision(p);
  const Precision wp = p + 16;
  const Real a = alpha.with_precision(wp);
  if (a < 0L || a > 1L) throw DomainError("m_alpha requires 0 <= a <= 1, got " + alpha.to_string(12));
  if (a.is_zero()) return Real(0L, p);

  if (route == MAlphaRoute::series) {
    // m(4a) = a sum_n c_n a^(2n) / (2n+1); term ratios are below a^2.
    const Real a2 = square(a);
    SeriesSpec spec;
    spec.name = "m(4a) series";
    auto weight = [](std::int64_t n) { return frac(1, 2 * n + 1); };
    spec.term = central_power_term(1, weight, 0, a2);
    SeriesOptions opts;
    if (a2 < 1L) {
      const double terms = static_cast<double>(wp.bits) * std::log(2.0) / -std::log(a2.to_double());
      if (!(terms < 2e6))
        throw ResourceError("m(4a) series needs about " + std::to_string(static_cast<long long>(std::min(terms, 1e18))) +
                            " terms this close to a = 1; use the integral route");
      // Separate instance: the recurrence cache is keyed on precision.
      auto term = central_power_term(1, weight, 0, a2);
      const Real ratio = a2 / (1L - a2);
      spec.tail_bound = [term, ratio](std::int64_t n, Precision q) -> std::optional<Real> {
        return abs(term(n, q)) * ratio.with_precision(q);
      };
    } else {
      // a = 1: terms decay like n^-2, extrapolate.
      opts.acceleration = AccelScheme::levin_u;
    }
    const SeriesResult s = sum_series(spec, target_for(wp, 8), wp, opts);
    return (a * s.value).with_precision(p);
  }

  // (2/pi) a int_0^1 K(a x) dx, with 1 - a x = (1 - a) + a (1 - x).
  const Real one_minus_a = 1L - a;
  UnitIntegrand f = [a, one_minus_a](const Real& x, const Real& xc) {
    const Real ax = a.with_precision(x.precision()) * x;
    const Real lo = one_minus_a.with_precision(x.precision()) + a * xc;
    // Rounding can push the product a hair above 1 when a x is tiny.
    return ell_k_from_complement(min(sqrt(lo * (1L + ax)), Real(1L, x.precision())));
  };
  const QuadratureResult q = tanh_sinh(f, target_for(wp, 12), wp);
  return (2L * a * q.value / const_pi(wp)).with_precision(p);
}

RAlphaResult r_alpha(const Real& alpha, RAlphaRoute route, Precision p, const RAlphaOptions& options) {
  require_precision(p);
  const Precision wp = p + 16;
  if (route == RAlphaRoute::torus) {
    const double a = alpha.to_double();
    TorusIntegrand f;
    f.dimension = 4;
    f.singular_set_note = "a cos cos + cos cos = 0";
    f.evaluate = [a](std::span<const double> t) {
      return std::log(std::abs(a * c2(t[2]) * c2(t[3]) + c2(t[0]) * c2(t[1])));
    };
    const QuadratureResult q = torus_qmc(f, options.samples, options.shifts, options.seed);
    return RAlphaResult{q.value.with_precision(p), q.error_estimate.with_precision(p), q.evaluations};
  }

  const Real a = alpha.with_precision(wp);
  if (a < 0L || a > 1L) {
    throw DomainError("this R(a) route requires 0 <= a <= 1, got " + alpha.to_string(12));
  }
  const Real four_over_pi2 = 4L / square(const_pi(wp));
  if (route == RAlphaRoute::polylog) {
    if (a.is_zero()) return RAlphaResult{Real(0L, p), Real(0L, p), 0};
    return RAlphaResult{(four_over_pi2 * legendre_chi3(a)).with_precision(p), Real(0L, p), 0};
  }

  UnitIntegrand f = [a, p](const Real& x, const Real&) {
    return m_alpha(a.with_precision(x.precision()) * x, MAlphaRoute::integral, p) * ell_kprime(x);
  };
  const QuadratureResult q = tanh_sinh(f, target_for(p, 16), p);
  return RAlphaResult{(four_over_pi2 * q.value).with_precision(p), (four_over_pi2 * q.error_estimate).with_precision(p),
                      q.evaluations};
}

namespace {

void require_fourier_args(const Real& theta, long terms) {
  if (!(theta > 0L) || !(theta < const_pi(theta.precision()) / 2L)) {
    throw DomainError("Fourier checks require 0 < theta < pi/2");
  }
  if (terms < 8) throw InvalidArgument("Fourier checks need at least 8 terms");
}

// Truncated series after 1, 2, ..., count terms (n = 0 .. count-1).
std::vector<Real> fourier_partials(FourierSeries which, const Real& theta, long count, Precision p) {
  std::vector<Real> out;
  out.reserve(static_cast<std::size_t>(count));
  const Real half_pi = const_pi(p) / 2L;
  Real c(1L, p);
  Real s = which == FourierSeries::m4sin ? const_log2(p) : Real(0L, p);
  for (long n = 0; n < count; ++n) {
    const Real a = theta * (4 * n);
    const Real b = theta * (4 * n + 2);
    switch (which) {
      case FourierSeries::ksin: s += half_pi * c * (sin(a) + sin(b)); break;
      case FourierSeries::kcos: s += half_pi * c * (cos(a) + cos(b)); break;
      case FourierSeries::m4sin:
        if (n > 0) s -= c * cos(a) / (4 * n);
        s -= c * cos(b) / (4 * n + 2);
        break;
    }
    out.push_back(s);
    c *= Real(frac((2 * n + 1) * (2 * n + 1), 4 * (n + 1) * (n + 1)), p);
  }
  return out;
}

Real fourier_direct(FourierSeries which, const Real& theta, Precision p) {
  switch (which) {
    case FourierSeries::ksin: return ell_k(sin(theta)) * cos(theta);
    case FourierSeries::kcos: return ell_k(cos(theta)) * cos(theta);
    case FourierSeries::m4sin: break;
  }
  return m_alpha(sin(theta), MAlphaRoute::integral, p);
}

}  // namespace

FourierCheck fourier_check(FourierSeries which, const Real& theta, long terms, Precision p) {
  require_precision(p);
  const Real t = theta.with_precision(p);
  require_fourier_args(t, terms);
  FourierCheck r;
  r.truncated = fourier_partials(which, t, terms, p).back();
  r.direct = fourier_direct(which, t, p);
  r.deviation = abs(r.truncated - r.direct);
  const Real n(terms, p);
  if (which == FourierSeries::m4sin) {
    r.tail_bound = 1L / (2L * const_pi(p) * (n - 1L));
  } else {
    r.tail_bound = 1L / (n * abs(sin(2L * t)));
  }
  return r;
}

double fourier_decay_ratio(FourierSeries which, const Real& theta, long terms, Precision p) {
  require_precision(p);
  const Real t = theta.with_precision(p);
  require_fourier_args(t, terms);
  const std::vector<Real> partial = fourier_partials(which, t, 2 * terms, p);
  const Real direct = fourier_direct(which, t, p);
  auto window_max = [&](long end) {
    double m = 0.0;
    for (long i = std::max(1L, end - 7); i <= end; ++i) {
      m = std::max(m, abs(partial[static_cast<std::size_t>(i - 1)] - direct).to_double());
    }
    return m;
  };
  const double first = window_max(terms);
  return first == 0.0 ? 0.0 : window_max(2 * terms) / first;
}

DensityCheck density_integral_check(int m, const Real& tolerance, Precision p) {
  require_precision(p);
  if (m < 0 || m > 6) throw InvalidArgument("density_integral_check supports 0 <= m <= 6");
  const Precision wp = p + 16;
  const Real tol = tolerance.with_precision(wp);
  const Real half_pi = const_pi(wp) / 2L;
  DensityCheck r;

  // By symmetry the torus average equals the average of
  // F(cos(pi u/2) cos(pi v/2)) over the unit square.
  auto cosine = [half_pi](const Real& u, const Real& uc) {
    const Real hp = half_pi.with_precision(u.precision());
    return u < Real(0.5, u.precision()) ? cos(hp * u) : sin(hp * uc);
  };
  std::int64_t evals = 0;
  const Real inner_tol = ldexp(tol, -2);
  UnitIntegrand outer = [&](const Real& u, const Real& uc) {
    const Real cu = cosine(u, uc);
    UnitIntegrand inner = [&](const Real& v, const Real& vc) { return pow(cu * cosine(v, vc), static_cast<long>(m)); };
    const QuadratureResult q = tanh_sinh(inner, inner_tol, wp);
    evals += q.evaluations;
    return q.value;
  };
  r.torus_side = tanh_sinh(outer, ldexp(tol, -1), wp).value;

  UnitIntegrand kernel = [m](const Real& k, const Real&) { return pow(k, static_cast<long>(m)) * ell_kprime(k); };
  const QuadratureResult q = tanh_sinh(kernel, ldexp(tol, -1), wp);
  evals += q.evaluations;
  r.kernel_side = 4L * q.value / square(const_pi(wp));
  r.deviation = abs(r.torus_side - r.kernel_side);
  r.torus_side = r.torus_side.with_precision(p);
  r.kernel_side = r.kernel_side.with_precision(p);
  r.deviation = r.deviation.with_precision(p);
  r.evaluations = evals;
  return r;
}

WanMomentCheck wan_moment_check(int m, const Real& tolerance, Precision p) {
  require_precision(p);
  if (m < 0 || m > 6) throw InvalidArgument("wan_moment_check supports 0 <= m <= 6");
  const Precision wp = p + 16;
  WanMomentCheck r;
  UnitIntegrand f = [m](const Real& k, const Real& kc) {
    const Real kp = min(sqrt(kc * (2L - kc)), Real(1L, k.precision()));
    return pow(k, static_cast<long>(m)) * ell_k_from_complement(kp) * ell_kprime(k);
  };
  const QuadratureResult q = tanh_sinh(f, ldexp(tolerance.with_precision(wp), -1), wp);
  r.quadrature = q.value;
  r.evaluations = q.evaluations;

  const Rational half = frac(1, 2), a = frac(m + 1, 2), b = frac(m + 2, 2);
  PFQSpec spec;
  spec.upper = {half, half, a, a};
  spec.lower = {Rational(1), b, b};
  spec.argument = Real(1L, wp);
  const Real f43 = pfq(spec, ldexp(tolerance.with_precision(wp), -4), wp);
  const Real ratio = square(gamma_half_int(m + 1, wp) / gamma_half_int(m + 2, wp));
  r.closed_form = square(const_pi(wp)) / 8L * ratio * f43;
  r.deviation = abs(r.quadrature - r.closed_form).with_precision(p);
  r.quadrature = r.quadrature.with_precision(p);
  r.closed_form = r.closed_form.with_precision(p);
  return r;
}

}  // namespace mahlerlab
