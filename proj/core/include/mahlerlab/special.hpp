#ifndef MAHLERLAB_SPECIAL_HPP
#define MAHLERLAB_SPECIAL_HPP

// Elliptic integrals, gamma at (half-)integers, zeta values, Catalan's
// constant, Legendre chi_3, E_1 and generalized hypergeometric series.
// All functions work at the precision of their Real arguments unless a
// Precision is passed explicitly.

#include <vector>

#include "mahlerlab/real.hpp"

namespace mahlerlab {

/// Arithmetic-geometric mean. Throws InvalidArgument unless a, b > 0.
Real agm(const Real& a, const Real& b);

/// K(k) = pi / (2 agm(1, sqrt(1-k^2))), 0 <= k < 1.
Real ell_k(const Real& k);
/// K'(k) = K(sqrt(1-k^2)) = pi / (2 agm(1, k)), 0 < k <= 1.
Real ell_kprime(const Real& k);
/// K(k) given the complementary modulus k' = sqrt(1-k^2) directly; avoids
/// forming 1-k^2 when k is within rounding of 1.
Real ell_k_from_complement(const Real& kprime);

/// Gamma(twice_s / 2) for twice_s >= 1.
Real gamma_half_int(long twice_s, Precision p);

/// zeta(s) for integer s >= 2 (Euler-Maclaurin).
Real zeta_int(long s, Precision p);
/// zeta'(-2) = -zeta(3) / (4 pi^2).
Real zeta_prime_minus2(Precision p);
/// Catalan's constant G = sum (-1)^n / (2n+1)^2.
Real catalan(Precision p);

/// sum_{n>=0} alpha^(2n+1) / (2n+1)^3 for 0 <= alpha <= 1.
Real legendre_chi3(const Real& alpha);

/// E_1(x) = int_x^inf e^-t / t dt for x > 0.
Real exp_integral_e1(const Real& x);

/// Gamma(s) for real s not a nonpositive integer.
Real gamma_real(const Real& s);
/// Upper incomplete gamma Gamma(a, x) for x > 0. Integer a >= 1 uses the
/// finite sum, a = 0 uses E_1.
Real gamma_upper(const Real& a, const Real& x);

/// Bernoulli number B_n (B_1 = -1/2). Cached; thread-safe.
Rational bernoulli(long n);

/// Parameters of pFq(a_1..a_p; b_1..b_q; x).
struct PFQSpec {
  std::vector<Rational> upper;
  std::vector<Rational> lower;
  Real argument;

  /// Exact coefficient prod (a_i)_n / prod (b_j)_n / n!, without x^n.
  Rational coefficient(long n) const;
  /// Exact ratio coefficient(n+1) / coefficient(n).
  Rational coefficient_ratio(long n) const;
};

/// Evaluates the series to within target_abs_error at precision p.
/// |x| < 1 (or p <= q) sums directly with a ratio tail bound; x = 1 with
/// sum(b) - sum(a) > 0 sums at least 64 terms and extrapolates with Levin u.
/// Throws DomainError for divergent combinations, ResourceError if direct
/// summation would need more than 1e8 terms.
Real pfq(const PFQSpec& spec, const Real& target_abs_error, Precision p);

}  // namespace mahlerlab

#endif  // MAHLERLAB_SPECIAL_HPP
