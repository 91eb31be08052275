#include "mahlerlab/real.hpp"

#include <climits>
#include <cmath>
#include <memory>
#include <ostream>

#include "mahlerlab/error.hpp"

namespace mahlerlab {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;
constexpr mpfr_prec_t kDefaultBits = 64;

mpfr_prec_t wider(const Real& a, const Real& b) {
  return std::max(mpfr_get_prec(a.get()), mpfr_get_prec(b.get()));
}

template <typename Op>
Real unary(const Real& x, Op op) {
  Real r(x.precision());
  op(r.get(), x.get(), kRnd);
  return r;
}

struct MpfrString {
  char* s = nullptr;
  ~MpfrString() {
    if (s) mpfr_free_str(s);
  }
};

}  // namespace

void require_precision(Precision p) {
  if (p.bits < kMinPrecisionBits || p.bits > kMaxPrecisionBits) {
    throw InvalidArgument("precision must lie in [32, 65536] bits, got " + std::to_string(p.bits));
  }
}

Real::Real() {
  mpfr_init2(value_, kDefaultBits);
  mpfr_set_zero(value_, 1);
}

Real::Real(Precision p) {
  mpfr_init2(value_, p.bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(long v, Precision p) {
  mpfr_init2(value_, p.bits);
  mpfr_set_si(value_, v, kRnd);
}

Real::Real(double v, Precision p) {
  mpfr_init2(value_, p.bits);
  mpfr_set_d(value_, v, kRnd);
}

Real::Real(const BigInt& v, Precision p) {
  mpfr_init2(value_, p.bits);
  mpfr_set_z(value_, v.get_mpz_t(), kRnd);
}

Real::Real(const Rational& v, Precision p) {
  mpfr_init2(value_, p.bits);
  mpfr_set_q(value_, v.get_mpq_t(), kRnd);
}

Real Real::parse(std::string_view text, Precision p) {
  Real r(p);
  std::string s(text);
  if (s.empty()) throw InvalidArgument("empty decimal number");
  char* end = nullptr;
  mpfr_strtofr(r.value_, s.c_str(), &end, 10, kRnd);
  if (end == s.c_str() || *end != '\0') throw InvalidArgument("not a decimal number: '" + s + "'");
  return r;
}

Real::Real(const Real& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, kRnd);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, kRnd);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::with_precision(Precision p) const {
  Real r(p);
  mpfr_set(r.value_, value_, kRnd);
  return r;
}

std::string Real::to_string(int digits) const {
  if (is_nan()) return "nan";
  if (is_inf()) return sign() < 0 ? "-inf" : "inf";
  digits = std::max(digits, 1);
  std::string fmt = "%." + std::to_string(digits - 1) + "Re";
  int n = mpfr_snprintf(nullptr, 0, fmt.c_str(), value_);
  std::string out(static_cast<std::size_t>(n) + 1, '\0');
  mpfr_snprintf(out.data(), out.size(), fmt.c_str(), value_);
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string Real::to_decimal(int digits) const {
  if (!is_finite()) return to_string(digits);
  if (is_zero()) return "0";
  // Decimal exponent of the leading digit.
  long e10 = static_cast<long>(std::floor((exponent() - 1) * 0.30102999566398120));
  if (e10 > 30 || e10 < -8) return to_string(digits);
  long frac = std::max<long>(0, digits - 1 - e10);
  std::string fmt = "%." + std::to_string(frac) + "Rf";
  int n = mpfr_snprintf(nullptr, 0, fmt.c_str(), value_);
  std::string out(static_cast<std::size_t>(n) + 1, '\0');
  mpfr_snprintf(out.data(), out.size(), fmt.c_str(), value_);
  out.resize(static_cast<std::size_t>(n));
  return out;
}

int Real::round_trip_digits() const {
  return static_cast<int>(std::ceil(static_cast<double>(precision().bits) * 0.30102999566398120)) + 2;
}

long Real::exponent() const {
  if (is_zero() || !is_finite()) return LONG_MIN;
  return mpfr_get_exp(value_);
}

Real Real::operator-() const { return unary(*this, mpfr_neg); }

Real& Real::operator+=(const Real& rhs) {
  if (mpfr_get_prec(rhs.value_) > mpfr_get_prec(value_)) mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), kRnd);
  mpfr_add(value_, value_, rhs.value_, kRnd);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  if (mpfr_get_prec(rhs.value_) > mpfr_get_prec(value_)) mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), kRnd);
  mpfr_sub(value_, value_, rhs.value_, kRnd);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  if (mpfr_get_prec(rhs.value_) > mpfr_get_prec(value_)) mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), kRnd);
  mpfr_mul(value_, value_, rhs.value_, kRnd);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  if (mpfr_get_prec(rhs.value_) > mpfr_get_prec(value_)) mpfr_prec_round(value_, mpfr_get_prec(rhs.value_), kRnd);
  mpfr_div(value_, value_, rhs.value_, kRnd);
  return *this;
}

Real& Real::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, kRnd);
  return *this;
}
Real& Real::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, kRnd);
  return *this;
}
Real& Real::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, kRnd);
  return *this;
}
Real& Real::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, kRnd);
  return *this;
}

Real operator+(const Real& a, const Real& b) {
  Real r(Precision(wider(a, b)));
  mpfr_add(r.value_, a.value_, b.value_, kRnd);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(Precision(wider(a, b)));
  mpfr_sub(r.value_, a.value_, b.value_, kRnd);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(Precision(wider(a, b)));
  mpfr_mul(r.value_, a.value_, b.value_, kRnd);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(Precision(wider(a, b)));
  mpfr_div(r.value_, a.value_, b.value_, kRnd);
  return r;
}

Real operator+(const Real& a, long b) {
  Real r(a.precision());
  mpfr_add_si(r.value_, a.value_, b, kRnd);
  return r;
}
Real operator-(const Real& a, long b) {
  Real r(a.precision());
  mpfr_sub_si(r.value_, a.value_, b, kRnd);
  return r;
}
Real operator*(const Real& a, long b) {
  Real r(a.precision());
  mpfr_mul_si(r.value_, a.value_, b, kRnd);
  return r;
}
Real operator/(const Real& a, long b) {
  Real r(a.precision());
  mpfr_div_si(r.value_, a.value_, b, kRnd);
  return r;
}
Real operator-(long a, const Real& b) {
  Real r(b.precision());
  mpfr_si_sub(r.value_, a, b.value_, kRnd);
  return r;
}
Real operator/(long a, const Real& b) {
  Real r(b.precision());
  mpfr_si_div(r.value_, a, b.value_, kRnd);
  return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (a.is_nan() || b.is_nan()) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const Real& a, long b) {
  if (a.is_nan()) return std::partial_ordering::unordered;
  int c = mpfr_cmp_si(a.value_, b);
  return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
  return os << x.to_string(std::min(x.round_trip_digits(), 40));
}

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real square(const Real& x) { return unary(x, mpfr_sqr); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real log1p(const Real& x) { return unary(x, mpfr_log1p); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real expm1(const Real& x) { return unary(x, mpfr_expm1); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real asin(const Real& x) { return unary(x, mpfr_asin); }
Real atan(const Real& x) { return unary(x, mpfr_atan); }
Real sinh(const Real& x) { return unary(x, mpfr_sinh); }
Real cosh(const Real& x) { return unary(x, mpfr_cosh); }
Real asinh(const Real& x) { return unary(x, mpfr_asinh); }

Real pow(const Real& x, const Real& y) {
  Real r(Precision(wider(x, y)));
  mpfr_pow(r.get(), x.get(), y.get(), kRnd);
  return r;
}

Real pow(const Real& x, long n) {
  Real r(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, kRnd);
  return r;
}

Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, kRnd);
  return r;
}

Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

BigInt round_to_integer(const Real& x) {
  if (!x.is_finite()) throw DomainError("cannot round a non-finite value to an integer");
  BigInt z;
  Real t(Precision(std::max<mpfr_prec_t>(x.precision().bits, 64)));
  mpfr_round(t.get(), x.get());
  mpfr_get_z(z.get_mpz_t(), t.get(), kRnd);
  return z;
}

Real const_pi(Precision p) {
  require_precision(p);
  Real r(p);
  mpfr_const_pi(r.get(), kRnd);
  return r;
}

Real const_log2(Precision p) {
  require_precision(p);
  Real r(p);
  mpfr_const_log2(r.get(), kRnd);
  return r;
}

Real const_euler(Precision p) {
  require_precision(p);
  Real r(p);
  mpfr_const_euler(r.get(), kRnd);
  return r;
}

}  // namespace mahlerlab
