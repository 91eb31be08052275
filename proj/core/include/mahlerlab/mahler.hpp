#ifndef MAHLERLAB_MAHLER_HPP
#define MAHLERLAB_MAHLER_HPP

// Mahler measures: torus integration of Laurent polynomials, the 6F5 formula
// for (x+1/x)(y+1/y)(z+1/z)(w+1/w) - k, and the auxiliary functions m(4a)
// and R(a) with their series, integral and torus representations.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mahlerlab/quadrature.hpp"
#include "mahlerlab/real.hpp"

namespace mahlerlab {

inline constexpr int kMaxLaurentExponent = 8;

/// A Laurent polynomial in up to four variables with integer coefficients.
struct LaurentDescriptor {
  std::string name;
  int dimension = 1;
  std::map<std::vector<int>, long> terms;
  /// Set for the built-ins, which are real on the torus: P as an expression
  /// in cos(2 pi theta_i). Empty for user polynomials.
  std::function<double(std::span<const double>)> reduced;

  /// Throws InvalidArgument if the descriptor is empty, the dimension is
  /// outside 1..4, or an exponent exceeds 8 in absolute value.
  void validate() const;

  /// P(e^(2 pi i theta_1), ..., e^(2 pi i theta_d)).
  std::complex<double> evaluate(std::span<const double> theta) const;

  /// Built-ins: "p4", "p:k" (x+1/x+y+1/y-k), "q8", "q:k"
  /// ((x+1/x)(y+1/y)(z+1/z)-k), "r16", "r:k" (four-fold product minus k),
  /// "s0", "s:k" (x+1/x+y+1/y+z+1/z+w+1/w-k), "ra:a" (a(u+1/u)(z+1/z) +
  /// (x+1/x)(y+1/y)). k and a are integers.
  static LaurentDescriptor builtin(std::string_view name);

  /// Lines (or ';'-separated entries) "coefficient e_1 ... e_d". Blank lines
  /// and '#' comments are ignored. A bare built-in name is also accepted.
  static LaurentDescriptor parse(std::string_view text);
};

/// Names accepted by LaurentDescriptor::builtin, with placeholder forms.
std::vector<std::string> builtin_descriptor_names();

/// torus_qmc of log|P|. Built-ins use their reduced integrand.
QuadratureResult mahler_numeric(const LaurentDescriptor& poly, std::uint64_t samples, int shifts = 16,
                                std::uint64_t seed = kDefaultSeed);

/// m((x+1/x)(y+1/y)(z+1/z)(w+1/w) - k) = log|k| - (8/k^2) 6F5(3/2 x4, 1, 1; 2 x5; 256/k^2)
/// for |k| >= 16. At |k| = 16 the series is summed at argument 1 with
/// acceleration. Throws DomainError for |k| < 16.
Real m_rk_hypergeometric(const Real& k, const Real& target_abs_error, Precision p);

/// 4 log 2 - sum_{n>=1} C(2n,n)^4 / (2n 2^(8n)), accelerated.
Real m_r16_series(Precision p);

enum class MAlphaRoute { series, integral };

/// m(4a) = m(4a + x + 1/x + y + 1/y) for 0 <= a <= 1.
/// series: 4 sum C(2n,n)^2 (a/4)^(2n+1) / (2n+1); about P / (2 log2(1/a))
/// terms for a < 1, accelerated at a = 1. Throws ResourceError when that
/// estimate exceeds 2e6 (a within roughly P/4e6 of 1, but not equal to 1).
/// integral: (2/pi) int_0^a K(k) dk by tanh-sinh.
Real m_alpha(const Real& alpha, MAlphaRoute route, Precision p);

enum class RAlphaRoute { polylog, k_integral, torus };

struct RAlphaOptions {
  std::uint64_t samples = 1u << 20;
  int shifts = 16;
  std::uint64_t seed = kDefaultSeed;
};

struct RAlphaResult {
  Real value;
  Real error_estimate;  // zero for the polylog route
  std::int64_t evaluations = 0;
};

/// R(a) = m(a(u+1/u)(z+1/z) + (x+1/x)(y+1/y)).
/// polylog: (4/pi^2) chi_3(a), 0 <= a <= 1.
/// k_integral: (4/pi^2) int_0^1 m(4ak) K'(k) dk, 0 <= a <= 1.
/// torus: four-dimensional QMC in double precision, any real a.
RAlphaResult r_alpha(const Real& alpha, RAlphaRoute route, Precision p, const RAlphaOptions& options = {});

enum class FourierSeries { ksin, kcos, m4sin };

struct FourierCheck {
  Real truncated;
  Real direct;
  Real deviation;
  /// Bound on the omitted tail from C(2n,n)^2 / 2^(4n) <= 1/(pi n).
  Real tail_bound;
};

/// Compares the first `terms` Fourier terms with the function evaluated
/// directly, for 0 < theta < pi/2 and terms >= 8.
///   ksin:  K(sin t) cos t = (pi/2) sum c_n (sin 4nt + sin (4n+2)t)
///   kcos:  K(cos t) cos t = (pi/2) sum c_n (cos 4nt + cos (4n+2)t)
///   m4sin: m(4 sin t) = log 2 - sum_{n>=1} c_n cos(4nt)/(4n) - sum c_n cos((4n+2)t)/(4n+2)
FourierCheck fourier_check(FourierSeries which, const Real& theta, long terms, Precision p);

/// Ratio of the largest deviation over terms in (2N - 8, 2N] to the largest
/// over (N - 8, N]. Near 1/2 or smaller when the error decays like 1/N.
double fourier_decay_ratio(FourierSeries which, const Real& theta, long terms, Precision p);

struct DensityCheck {
  Real torus_side;  // int int F(|cos 2 pi t cos 2 pi s|) ds dt
  Real kernel_side;  // (4/pi^2) int F(k) K'(k) dk
  Real deviation;
  std::int64_t evaluations = 0;
};

/// Both sides of the density identity for F(k) = k^m, 0 <= m <= 6.
DensityCheck density_integral_check(int m, const Real& tolerance, Precision p);

struct WanMomentCheck {
  Real quadrature;  // int_0^1 k^m K K' dk
  Real closed_form;  // (pi^2/8) Gamma((m+1)/2)^2 / Gamma((m+2)/2)^2 4F3(...; 1)
  Real deviation;
  std::int64_t evaluations = 0;
};

/// Moment formula for int_0^1 k^m K(k) K'(k) dk, 0 <= m <= 6.
WanMomentCheck wan_moment_check(int m, const Real& tolerance, Precision p);

}  // namespace mahlerlab

#endif  // MAHLERLAB_MAHLER_HPP
