#include "mahlerlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "mahlerlab/error.hpp"

namespace mahlerlab {

namespace {

// f(x) w at the node pair +-t; returns the sum of both contributions.
Real node_pair(const UnitIntegrand& f, const Real& t, const Real& pi, Precision wp, std::int64_t& evals) {
  const Real u = pi * sinh(t);
  const Real e = exp(u);
  const Real one_plus = 1L + e;
  const Real x = e / one_plus;    // abscissa at +t
  const Real xc = 1L / one_plus;  // 1 - x
  const Real w = pi * cosh(t) * x * xc;
  auto eval = [&](const Real& a, const Real& ac) {
    Real v = f(a, ac).with_precision(wp);
    ++evals;
    if (!v.is_finite()) {
      throw IntegrandError("integrand returned " + v.to_string(5) + " at x = " + a.to_string(20), a.to_string(40));
    }
    return v;
  };
  if (t.is_zero()) return eval(x, xc) * w;
  return (eval(x, xc) + eval(xc, x)) * w;
}

}  // namespace

QuadratureResult tanh_sinh(const UnitIntegrand& f, const Real& tolerance, Precision p,
                           const TanhSinhOptions& options) {
  require_precision(p);
  const Precision wp = p + 16;
  const Real pi = const_pi(wp);
  // Beyond t_max the weights fall below 2^-(2P+40).
  const Real t_max = asinh(Real(2.0 * (static_cast<double>(p.bits) + 20) * std::log(2.0) / M_PI, wp));
  QuadratureResult result;
  result.value = Real(wp);
  result.error_estimate = Real(std::numeric_limits<double>::infinity(), wp);

  Real raw(wp);  // sum of f w over all nodes so far, without the step factor
  Real previous;
  for (int level = 0; level <= options.max_level; ++level) {
    const Real h = ldexp(Real(1L, wp), -level);
    const long stride = level == 0 ? 1 : 2;
    const long start = level == 0 ? 0 : 1;
    for (long j = start;; j += stride) {
      const Real t = h * j;
      if (t > t_max) break;
      raw += node_pair(f, t, pi, wp, result.evaluations);
    }
    Real estimate = raw * h;
    if (level > 0) {
      result.error_estimate = abs(estimate - previous);
      result.value = estimate;
      if (level >= options.min_level && result.error_estimate < tolerance) {
        result.converged = true;
        result.value = result.value.with_precision(p);
        return result;
      }
    }
    previous = std::move(estimate);
  }
  result.value = result.value.with_precision(p);
  if (options.throw_on_failure) {
    throw NoConvergence("tanh-sinh did not reach tolerance " + tolerance.to_string(3) + " by level " +
                            std::to_string(options.max_level) + " (last difference " +
                            result.error_estimate.to_string(3) + ")",
                        result.value.to_string(result.value.round_trip_digits()));
  }
  return result;
}

QuadratureResult tanh_sinh_interval(const std::function<Real(const Real&)>& g, const Real& a, const Real& b,
                                    const Real& tolerance, Precision p, const TanhSinhOptions& options) {
  const Precision wp = p + 16;
  const Real lo = a.with_precision(wp), len = b.with_precision(wp) - a.with_precision(wp);
  QuadratureResult r = tanh_sinh(
      [&](const Real& x, const Real&) { return g(lo + len * x) * len; }, tolerance, p, options);
  return r;
}

std::span<const std::uint64_t> lattice_generator() {
  // Component-by-component search minimizing the averaged product-weight
  // P_2 criterion over N = 2^10 .. 2^20 (embedded for powers of two).
  static constexpr std::array<std::uint64_t, 4> z{1, 365293, 359257, 427961};
  return z;
}

QuadratureResult torus_qmc(const TorusIntegrand& f, std::uint64_t samples, int shifts, std::uint64_t seed) {
  if (f.dimension < 1 || f.dimension > 4) throw InvalidArgument("torus dimension must be 1..4");
  if (!f.evaluate) throw InvalidArgument("torus integrand has no evaluate function");
  if (samples < (1u << 10) || (samples & (samples - 1)) != 0) {
    throw InvalidArgument("QMC samples must be a power of two >= 1024");
  }
  if (samples > (std::uint64_t{1} << 30)) throw ResourceError("QMC samples above 2^30");
  if (shifts < 8) throw InvalidArgument("QMC needs at least 8 shifts");
  const auto z = lattice_generator();
  const int d = f.dimension;
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<double> means;
  means.reserve(static_cast<std::size_t>(shifts));
  std::int64_t discarded = 0;
  const double inv_n = 1.0 / static_cast<double>(samples);
  std::array<double, 4> theta{};
  for (int s = 0; s < shifts; ++s) {
    std::array<double, 4> shift{};
    for (int k = 0; k < d; ++k) shift[static_cast<std::size_t>(k)] = uniform();
    // Neumaier-compensated sum.
    double sum = 0.0, comp = 0.0;
    std::uint64_t kept = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
      for (int k = 0; k < d; ++k) {
        const std::uint64_t num = (i * z[static_cast<std::size_t>(k)]) & (samples - 1);
        double v = static_cast<double>(num) * inv_n + shift[static_cast<std::size_t>(k)];
        if (v >= 1.0) v -= 1.0;
        theta[static_cast<std::size_t>(k)] = v;
      }
      const double y = f.evaluate(std::span<const double>(theta.data(), static_cast<std::size_t>(d)));
      if (std::isinf(y) && y < 0) {
        ++discarded;
        continue;
      }
      if (!std::isfinite(y)) {
        throw IntegrandError("torus integrand returned a non-finite value", std::to_string(theta[0]));
      }
      const double t = sum + y;
      comp += std::abs(sum) >= std::abs(y) ? (sum - t) + y : (y - t) + sum;
      sum = t;
      ++kept;
    }
    if (kept == 0) throw IntegrandError("every QMC sample hit a zero of the integrand", "");
    means.push_back((sum + comp) / static_cast<double>(kept));
  }
  std::vector<double> sorted = means;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  double mean = 0.0;
  for (double v : means) mean += v;
  mean /= static_cast<double>(m);
  double var = 0.0;
  for (double v : means) var += (v - mean) * (v - mean);
  var /= static_cast<double>(m - 1);

  QuadratureResult r;
  r.value = Real(median, Precision(64));
  r.error_estimate = Real(std::sqrt(var / static_cast<double>(m)), Precision(64));
  r.evaluations = static_cast<std::int64_t>(samples) * shifts;
  r.converged = true;
  r.discarded = discarded;
  r.discard_fraction = static_cast<double>(discarded) / static_cast<double>(r.evaluations);
  return r;
}

}  // namespace mahlerlab
