#ifndef MAHLERLAB_REAL_HPP
#define MAHLERLAB_REAL_HPP

// Arbitrary-precision real numbers (an owning wrapper around mpfr_t) and the
// exact integer/rational types used throughout the library.

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace mahlerlab {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Working precision in bits.
struct Precision {
  mpfr_prec_t bits = 128;

  constexpr Precision() = default;
  constexpr explicit Precision(mpfr_prec_t b) : bits(b) {}

  /// Bits needed to carry `digits` significant decimal digits plus guard bits.
  static constexpr Precision from_digits(int digits, int guard = 32) {
    return Precision(static_cast<mpfr_prec_t>(digits * 3.33 + 0.999) + guard);
  }

  constexpr Precision operator+(mpfr_prec_t extra) const { return Precision(bits + extra); }
  constexpr auto operator<=>(const Precision&) const = default;
};

inline namespace literals {
constexpr Precision operator""_bits(unsigned long long b) {
  return Precision(static_cast<mpfr_prec_t>(b));
}
}  // namespace literals

inline constexpr mpfr_prec_t kMinPrecisionBits = 32;
inline constexpr mpfr_prec_t kMaxPrecisionBits = 1 << 16;

/// Throws InvalidArgument unless 32 <= p.bits <= 65536.
void require_precision(Precision p);

/// A real number carried at a fixed binary precision. Binary operations
/// produce a result at the larger of the operand precisions; all rounding is
/// to nearest. Values are immutable in the sense that every arithmetic
/// operator returns a fresh object; compound assignment is provided for
/// accumulators.
class Real {
 public:
  Real();
  explicit Real(Precision p);
  Real(long v, Precision p);
  Real(int v, Precision p) : Real(static_cast<long>(v), p) {}
  Real(double v, Precision p);
  Real(const BigInt& v, Precision p);
  Real(const Rational& v, Precision p);

  /// Parses a decimal string ("1.25", "-3e-7", "inf"). Throws InvalidArgument.
  static Real parse(std::string_view text, Precision p);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Precision precision() const { return Precision(mpfr_get_prec(value_)); }

  /// Copy rounded to precision `p`.
  Real with_precision(Precision p) const;

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(value_, MPFR_RNDN); }

  /// Scientific notation with `digits` significant digits.
  std::string to_string(int digits) const;
  /// Fixed notation with `digits` significant digits (falls back to
  /// scientific for very large or small magnitudes).
  std::string to_decimal(int digits) const;
  /// Digits needed to round-trip at this precision: ceil(P * log10 2) + 2.
  int round_trip_digits() const;

  bool is_nan() const { return mpfr_nan_p(value_) != 0; }
  bool is_inf() const { return mpfr_inf_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  /// Binary exponent e with 0.5 <= |x| / 2^e < 1; LONG_MIN for zero.
  long exponent() const;

  Real operator-() const;

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator+=(long rhs);
  Real& operator-=(long rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator-(long a, const Real& b);
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(long a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.value_, b) == 0 && !a.is_nan(); }
  friend std::partial_ordering operator<=>(const Real& a, long b);

 private:
  mpfr_t value_;
};

std::ostream& operator<<(std::ostream& os, const Real& x);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real square(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real exp(const Real& x);
Real expm1(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real asin(const Real& x);
Real atan(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real asinh(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
/// x * 2^e, exact.
Real ldexp(const Real& x, long e);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
/// Nearest integer as a BigInt (ties away from zero).
BigInt round_to_integer(const Real& x);

/// pi with relative error <= 2^(2-P). Throws InvalidArgument for P < 32.
Real const_pi(Precision p);
Real const_log2(Precision p);
/// Euler's constant gamma = 0.5772...
Real const_euler(Precision p);

}  // namespace mahlerlab

#endif  // MAHLERLAB_REAL_HPP
