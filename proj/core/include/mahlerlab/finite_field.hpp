#ifndef MAHLERLAB_FINITE_FIELD_HPP
#define MAHLERLAB_FINITE_FIELD_HPP

// Characters of F_p^*, Greene hypergeometric functions, and point counts on
// H_t : (x^2+1)(y^2+1)(z^2+1)(w^2+1) - 16 t x y z w = 0.

#include <complex>
#include <vector>

#include "mahlerlab/real.hpp"

namespace mahlerlab {

/// Deterministic trial division (n < 2^40).
bool is_prime(long n);
/// Throws InvalidArgument unless p is an odd prime below 10^6.
void require_odd_prime(long p);

/// Quadratic residue symbol (a / p) for an odd prime p.
int legendre(long a, long p);

/// The p-1 multiplicative characters chi_j(g^a) = exp(2 pi i j a / (p-1)),
/// with chi_j(0) = 0, evaluated in extended precision.
class CharTable {
 public:
  using Complex = std::complex<long double>;

  explicit CharTable(long p);

  long prime() const { return p_; }
  long generator() const { return g_; }
  long order() const { return p_ - 1; }
  /// Index of the quadratic character.
  long phi_index() const { return (p_ - 1) / 2; }

  /// Discrete logarithm of x != 0 mod p to base g.
  long index_of(long x) const;
  Complex value(long j, long x) const;
  /// J(chi_a, chi_b) = sum_x chi_a(x) chi_b(1-x).
  Complex jacobi(long a, long b) const;

 private:
  long p_;
  long g_;
  std::vector<long> log_;    // log_[x] for 1 <= x < p
  std::vector<Complex> root_;  // root_[m] = exp(2 pi i m / (p-1))
};

/// p^n times the Greene function {n+1}F{n}(phi, ..., phi; eps, ..., eps; x),
/// which is an integer; returned with the power of p divided back out.
/// n must be 1 or 3. x = 0 gives 0. Throws InternalConsistencyError if the
/// character sum is not within 1e-6 of an integer.
Rational greene_nfn(long p, int n, long x);

struct PointCount {
  long prime = 0;
  long parameter = 0;
  long count = 0;
};

/// Affine points of H_t over F_p, O(p^3). p <= 199, else ResourceError.
PointCount count_points(long p, long t);
/// O(p^4) enumeration, for cross-checking small primes (p <= 31).
PointCount count_points_exhaustive(long p, long t);

/// Constant-term convention for the point-count formula.
enum class PointFormula {
  /// ... - 3p - 8(phi(-1)+1) + 1: matches the point count for every odd p.
  minus_constant,
  /// ... - 3p + 8(phi(-1)+1) + 1: off by -32 when p = 1 mod 4.
  plus_constant,
};

struct PointFormulaRow {
  long t = 0;
  long count = 0;
  Rational formula;
  Rational residual;  // count - formula
};

struct PointFormulaReport {
  long prime = 0;
  std::vector<PointFormulaRow> rows;

  bool all_zero() const;
};

/// Right side of the hypergeometric point-count formula at (p, t).
Rational point_formula(long p, long t, PointFormula variant = PointFormula::minus_constant, long constant_offset = 0);

/// Compares count_points with point_formula for every t in F_p^*. p <= 50.
PointFormulaReport verify_4_1(long p, PointFormula variant = PointFormula::minus_constant, long constant_offset = 0);

}  // namespace mahlerlab

#endif  // MAHLERLAB_FINITE_FIELD_HPP
