#ifndef MAHLERLAB_SERIES_HPP
#define MAHLERLAB_SERIES_HPP

// Summation of convergent series with tail bounds, sequence acceleration
// (Levin u, Richardson, Wynn epsilon) and accelerated alternating sums.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mahlerlab/real.hpp"

namespace mahlerlab {

/// An infinite series sum_{n >= first_index} term(n).
///
/// `term(n, p)` evaluates the n-th term at precision p. Terms are requested in
/// ascending order, so stateful term functions (see `recurrent_term`) are
/// cheap. `tail_bound(n, p)`, when present, bounds |sum_{m > n} term(m)| and
/// must be nonincreasing in n.
struct SeriesSpec {
  std::string name;
  std::function<Real(std::int64_t, Precision)> term;
  std::function<std::optional<Real>(std::int64_t, Precision)> tail_bound;
  std::int64_t first_index = 0;
};

enum class AccelScheme { levin_u, richardson, wynn_epsilon };

std::string to_string(AccelScheme scheme);
/// Accepts "levin-u", "richardson", "wynn-epsilon".
AccelScheme parse_accel_scheme(std::string_view name);

struct SeriesOptions {
  /// Direct summation gives up after this many terms.
  std::int64_t max_terms = 10'000'000;
  /// When set, partial sums are extrapolated with this scheme instead of
  /// waiting for the tail bound.
  std::optional<AccelScheme> acceleration;
  /// Minimum number of partial sums fed to the accelerator.
  std::int64_t min_partial_sums = 64;
  /// Upper limit on partial sums collected for acceleration.
  std::int64_t max_partial_sums = 1024;
};

struct SeriesResult {
  Real value;
  /// Truncation estimate (tail bound or extrapolation error estimate).
  Real error_estimate;
  std::int64_t terms = 0;
  bool accelerated = false;
};

/// Sums `spec` to within `target_abs_error`.
///
/// Direct mode adds terms in ascending order into a wider accumulator until
/// the tail bound drops below half the target. Accelerated mode computes
/// partial sums at roughly twice the working precision (extrapolation loses
/// digits) and doubles the number of partial sums until the extrapolation
/// error estimate meets the target.
///
/// Throws NoConvergence carrying the best estimate if the target is not met.
SeriesResult sum_series(const SeriesSpec& spec, const Real& target_abs_error, Precision p,
                        const SeriesOptions& options = {});

struct Extrapolation {
  Real value;
  Real error_estimate;
  /// Set when successive extrapolants never settled down (oscillating or
  /// non-smooth input).
  bool low_confidence = false;
  /// Order of the transform that produced `value`.
  int order = 0;
};

/// Extrapolates the limit of a sequence of partial sums S_0, S_1, ...
/// (S_n = sum of the first n+1 terms). Requires at least 8 values.
///
/// The error estimate is the smallest difference between successive
/// extrapolants. Work is done at the precision of the inputs plus 32 guard
/// bits; callers wanting many digits should supply high-precision sums.
Extrapolation accelerate(std::span<const Real> partial_sums, AccelScheme scheme);

/// sum_{k>=0} (-1)^k a_k for a_k given by `magnitude(k, p)`, using the
/// Cohen-Rodriguez Villegas-Zagier weights. Converges like 5.83^-n when a_k is
/// a moment sequence (e.g. 1/(2k+1)^s, 1/(k+1)).
Real sum_alternating(const std::function<Real(std::int64_t, Precision)>& magnitude, Precision p);

/// Wraps a term defined by first value and ratio t(n+1)/t(n) into a term
/// function that is O(1) per step when called in ascending order. Random
/// access falls back to replaying the recurrence.
std::function<Real(std::int64_t, Precision)> recurrent_term(
    std::int64_t first_index, std::function<Real(Precision)> first,
    std::function<Real(std::int64_t, Precision)> ratio);

}  // namespace mahlerlab

#endif  // MAHLERLAB_SERIES_HPP
