#ifndef MAHLERLAB_MODULAR_HPP
#define MAHLERLAB_MODULAR_HPP

// Integer q-series, eta products, theta functions, and L-values of the
// eta-product newforms f = eta(2t)^4 eta(4t)^4 (weight 4, level 8) and
// h = eta(4t)^6 (weight 3, level 16).

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "mahlerlab/real.hpp"

namespace mahlerlab {

/// Power series sum_{n=0}^{order} c_n q^n with exact integer coefficients.
/// Products are truncated to the smaller operand order.
class QSeries {
 public:
  QSeries() = default;
  /// Zero series carried to `order`.
  explicit QSeries(long order);
  explicit QSeries(std::vector<BigInt> coefficients);

  long order() const { return static_cast<long>(c_.size()) - 1; }
  const BigInt& operator[](long n) const { return c_.at(static_cast<std::size_t>(n)); }
  BigInt& operator[](long n) { return c_.at(static_cast<std::size_t>(n)); }
  const std::vector<BigInt>& coefficients() const { return c_; }

  QSeries truncated(long order) const;
  /// q -> q^m.
  QSeries substitute_power(long m) const;
  /// q -> -q.
  QSeries negate_q() const;
  /// Multiplication by q^k (k >= 0), keeping the order.
  QSeries shifted(long k) const;
  QSeries pow(long e) const;

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  friend bool operator==(const QSeries& a, const QSeries& b) { return a.c_ == b.c_; }

 private:
  std::vector<BigInt> c_;
};

/// eta(m tau) / q^(m/24) = prod_{n>=1} (1 - q^(m n)) to order N.
struct EtaExpansion {
  QSeries series;
  Rational q_exponent;  // m / 24
};
EtaExpansion eta_qexp(long m, long order);

/// psi(q) = sum_{n>=0} q^(n(n+1)/2).
QSeries theta_psi(long order);
/// phi(q) = sum_{n in Z} q^(n^2).
QSeries theta_phi(long order);

/// Static description of a newform given as an eta quotient recipe.
struct NewformSpec {
  std::string name;
  int weight = 0;
  int level = 1;
  int fricke_sign = 1;
  /// Returns the q-expansion a_0 .. a_order (a_0 = 0).
  std::function<QSeries(long order)> coefficients;
  std::string character_note;
};

NewformSpec newform_f_spec();
NewformSpec newform_h_spec();

/// Maximum coefficient index the cache may grow to.
inline constexpr long kMaxCoefficientIndex = 1'000'000;

/// A newform with a growable coefficient cache. Thread-safe.
class Newform {
 public:
  explicit Newform(NewformSpec spec);

  const NewformSpec& spec() const { return spec_; }

  /// Exact a_n for n >= 1. Grows the cache by doubling; throws ResourceError
  /// beyond kMaxCoefficientIndex.
  BigInt coefficient(long n) const;
  /// a_1 .. a_n, growing the cache if needed.
  std::vector<BigInt> coefficients(long n) const;
  long cached_order() const;

  /// Reads "n a_n" lines. Entries must be contiguous from 1 and agree with
  /// the recipe on a prefix; otherwise InvalidArgument.
  void load_cache(const std::string& path) const;
  void save_cache(const std::string& path) const;

  /// Set after a successful fricke_check.
  bool sign_validated() const { return validated_.load(); }
  void mark_sign_validated() const { validated_.store(true); }

 private:
  void ensure(long n) const;

  NewformSpec spec_;
  mutable std::mutex mu_;
  mutable std::vector<BigInt> cache_;  // index n holds a_n; cache_[0] = 0
  mutable std::atomic<bool> validated_{false};
};

/// Shared instances of f and h.
const Newform& newform_f();
const Newform& newform_h();

BigInt newform_coefficient(const Newform& form, long n);

/// Completed L-function Lambda(s) = (sqrt(N)/2pi)^s Gamma(s) L(s) via the
/// Mellin split at u = t0 / sqrt(N): sum a_n [x^-s Gamma(s, x t0) +
/// eps x^(s-k) Gamma(k-s, x/t0)], x = 2 pi n / sqrt(N).
Real completed_l(const Newform& form, const Real& s, Precision p, const Real& t0);

/// L(form, s) for real s > 0 with absolute error about 2^(16-P).
Real l_value(const Newform& form, const Real& s, Precision p);

/// L'(form, 0) = eps Lambda(k). Validates the sign with fricke_check once.
Real l_prime_at_0(const Newform& form, Precision p);

/// max over s in {2.25, 2.5, 3} of |Lambda(s) - eps Lambda(k - s)| with the
/// split moved off the symmetric point. Throws FunctionalEquationViolation
/// when the asymmetry exceeds 2^(20-P).
Real fricke_check(const Newform& form, Precision p);

}  // namespace mahlerlab

#endif  // MAHLERLAB_MODULAR_HPP
