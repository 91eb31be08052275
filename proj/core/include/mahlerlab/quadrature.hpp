#ifndef MAHLERLAB_QUADRATURE_HPP
#define MAHLERLAB_QUADRATURE_HPP

// Double-exponential (tanh-sinh) quadrature on (0,1) and randomized
// rank-1 lattice integration over the unit torus.

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "mahlerlab/real.hpp"

namespace mahlerlab {

struct QuadratureResult {
  Real value;
  Real error_estimate;
  std::int64_t evaluations = 0;
  bool converged = false;
  /// QMC only: sample points where the integrand was -inf.
  std::int64_t discarded = 0;
  double discard_fraction = 0.0;
};

/// Integrand on (0,1). Receives the abscissa x and its complement 1 - x,
/// each carried to full relative precision, so integrands with a singularity
/// at 1 should use the second argument.
using UnitIntegrand = std::function<Real(const Real& x, const Real& one_minus_x)>;

struct TanhSinhOptions {
  int max_level = 12;
  /// Minimum level before the convergence test is trusted.
  int min_level = 3;
  /// On failure throw NoConvergence (default) or return converged = false.
  bool throw_on_failure = true;
};

/// Integrates f over (0,1) with level-halving step sizes until two successive
/// levels differ by less than `tolerance`. The error estimate is that
/// difference. Throws IntegrandError if f returns NaN or +-inf.
QuadratureResult tanh_sinh(const UnitIntegrand& f, const Real& tolerance, Precision p,
                           const TanhSinhOptions& options = {});

/// Integrates g over (a, b) by mapping onto (0,1).
QuadratureResult tanh_sinh_interval(const std::function<Real(const Real&)>& g, const Real& a, const Real& b,
                                    const Real& tolerance, Precision p, const TanhSinhOptions& options = {});

/// Integrand on [0,1)^dimension evaluated in double precision.
struct TorusIntegrand {
  int dimension = 1;
  std::function<double(std::span<const double>)> evaluate;
  std::string singular_set_note;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// Rank-1 lattice rule with `samples` points (a power of two, >= 2^10) and
/// `shifts` (>= 8) independent random shifts drawn from a seeded mt19937_64.
/// The value is the median of the per-shift means, the error estimate the
/// standard deviation of those means divided by sqrt(shifts). Points where
/// the integrand is -inf are skipped and counted.
QuadratureResult torus_qmc(const TorusIntegrand& f, std::uint64_t samples, int shifts,
                           std::uint64_t seed = kDefaultSeed);

/// Generating vector used by torus_qmc (dimension 1..4).
std::span<const std::uint64_t> lattice_generator();

}  // namespace mahlerlab

#endif  // MAHLERLAB_QUADRATURE_HPP
