#include "mahlerlab/modular.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mahlerlab/error.hpp"
#include "mahlerlab/special.hpp"

namespace mahlerlab {

QSeries::QSeries(long order) {
  if (order < 0) throw InvalidArgument("q-series order must be nonnegative");
  c_.assign(static_cast<std::size_t>(order) + 1, BigInt(0));
}

QSeries::QSeries(std::vector<BigInt> coefficients) : c_(std::move(coefficients)) {
  if (c_.empty()) throw InvalidArgument("q-series needs at least one coefficient");
}

QSeries QSeries::truncated(long order) const {
  if (order > this->order()) throw InvalidArgument("cannot extend a truncated q-series");
  return QSeries(std::vector<BigInt>(c_.begin(), c_.begin() + order + 1));
}

QSeries QSeries::substitute_power(long m) const {
  if (m < 1) throw InvalidArgument("substitution power must be positive");
  QSeries r(order());
  for (long n = 0; n * m <= order(); ++n) r[n * m] = c_[static_cast<std::size_t>(n)];
  return r;
}

QSeries QSeries::negate_q() const {
  QSeries r(*this);
  for (long n = 1; n <= order(); n += 2) r[n] = -r[n];
  return r;
}

QSeries QSeries::shifted(long k) const {
  if (k < 0) throw InvalidArgument("shift must be nonnegative");
  QSeries r(order());
  for (long n = 0; n + k <= order(); ++n) r[n + k] = c_[static_cast<std::size_t>(n)];
  return r;
}

QSeries QSeries::pow(long e) const {
  if (e < 0) throw InvalidArgument("negative q-series power");
  QSeries result(order());
  result[0] = 1;
  QSeries base(*this);
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  const long n = std::min(a.order(), b.order());
  QSeries r(n);
  for (long i = 0; i <= n; ++i) r[i] = a[i] + b[i];
  return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  const long n = std::min(a.order(), b.order());
  QSeries r(n);
  for (long i = 0; i <= n; ++i) r[i] = a[i] - b[i];
  return r;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  const long n = std::min(a.order(), b.order());
  // Walk the nonzero entries of the sparser factor.
  auto nonzero = [n](const QSeries& s) {
    std::vector<long> idx;
    for (long i = 0; i <= n; ++i) {
      if (s[i] != 0) idx.push_back(i);
    }
    return idx;
  };
  std::vector<long> ia = nonzero(a), ib = nonzero(b);
  const bool swap = ib.size() < ia.size();
  const QSeries& outer = swap ? b : a;
  const QSeries& inner = swap ? a : b;
  const std::vector<long>& outer_idx = swap ? ib : ia;
  const std::vector<long>& inner_idx = swap ? ia : ib;
  QSeries r(n);
  for (long i : outer_idx) {
    const mpz_srcptr x = outer[i].get_mpz_t();
    for (long j : inner_idx) {
      if (i + j > n) break;
      mpz_addmul(r[i + j].get_mpz_t(), x, inner[j].get_mpz_t());
    }
  }
  return r;
}

EtaExpansion eta_qexp(long m, long order) {
  if (m < 1 || order < 1) throw InvalidArgument("eta_qexp needs m >= 1 and order >= 1");
  // Euler: prod (1 - q^n) = sum_k (-1)^k q^(k(3k-1)/2), k over Z.
  QSeries base(order);
  base[0] = 1;
  for (long k = 1; m * (k * (3 * k - 1) / 2) <= order; ++k) {
    const int sign = k % 2 == 0 ? 1 : -1;
    base[m * (k * (3 * k - 1) / 2)] = sign;
    if (m * (k * (3 * k + 1) / 2) <= order) base[m * (k * (3 * k + 1) / 2)] = sign;
  }
  return EtaExpansion{std::move(base), Rational(m, 24)};
}

QSeries theta_psi(long order) {
  if (order < 1) throw InvalidArgument("theta_psi needs order >= 1");
  QSeries r(order);
  for (long n = 0; n * (n + 1) / 2 <= order; ++n) r[n * (n + 1) / 2] = 1;
  return r;
}

QSeries theta_phi(long order) {
  if (order < 1) throw InvalidArgument("theta_phi needs order >= 1");
  QSeries r(order);
  r[0] = 1;
  for (long n = 1; n * n <= order; ++n) r[n * n] = 2;
  return r;
}

namespace {

// prod (1 - x^n)^3 = sum_k (-1)^k (2k+1) x^(k(k+1)/2).
QSeries jacobi_cube(long order) {
  QSeries r(order);
  for (long k = 0; k * (k + 1) / 2 <= order; ++k) r[k * (k + 1) / 2] = (k % 2 == 0 ? 1 : -1) * (2 * k + 1);
  return r;
}

// prod (1 - x^n)^e as a dense series, built from the sparse pentagonal and
// Jacobi expansions so that every product has one sparse factor.
QSeries eta_power(long e, long order) {
  QSeries r(order);
  r[0] = 1;
  for (; e >= 3; e -= 3) r = r * jacobi_cube(order);
  for (; e >= 1; --e) r = r * eta_qexp(1, order).series;
  return r;
}

}  // namespace

NewformSpec newform_f_spec() {
  NewformSpec s;
  s.name = "f";
  s.weight = 4;
  s.level = 8;
  s.fricke_sign = 1;
  s.coefficients = [](long order) {
    // eta(2t)^4 eta(4t)^4 = q * G(q^2) with G(x) = prod (1-x^n)^4 (1-x^2n)^4.
    const long m = std::max((order - 1) / 2, 1L);
    QSeries g = eta_power(4, m) * jacobi_cube(m).substitute_power(2) * eta_qexp(2, m).series;
    QSeries r(order);
    for (long n = 0; 2 * n + 1 <= order; ++n) r[2 * n + 1] = g[n];
    return r;
  };
  s.character_note = "trivial character";
  return s;
}

NewformSpec newform_h_spec() {
  NewformSpec s;
  s.name = "h";
  s.weight = 3;
  s.level = 16;
  s.fricke_sign = 1;
  s.coefficients = [](long order) {
    // eta(4t)^6 = q * G(q^4) with G(x) = prod (1-x^n)^6.
    const long m = std::max((order - 1) / 4, 1L);
    QSeries g = eta_power(6, m);
    QSeries r(order);
    for (long n = 0; 4 * n + 1 <= order; ++n) r[4 * n + 1] = g[n];
    return r;
  };
  s.character_note = "odd weight: nebentypus chi_-4";
  return s;
}

Newform::Newform(NewformSpec spec) : spec_(std::move(spec)) {
  if (!spec_.coefficients) throw InvalidArgument("newform spec has no coefficient recipe");
  if (spec_.weight < 1 || spec_.level < 1) throw InvalidArgument("newform weight and level must be positive");
  if (spec_.fricke_sign != 1 && spec_.fricke_sign != -1) throw InvalidArgument("fricke sign must be +1 or -1");
}

void Newform::ensure(long n) const {
  if (n > kMaxCoefficientIndex) {
    throw ResourceError("coefficient a_" + std::to_string(n) + " is beyond the cache limit of " +
                        std::to_string(kMaxCoefficientIndex));
  }
  if (static_cast<long>(cache_.size()) > n) return;
  long target = std::max<long>(64, 2 * static_cast<long>(cache_.size()));
  target = std::min(std::max(target, n), kMaxCoefficientIndex);
  QSeries s = spec_.coefficients(target);
  if (s[1] != 1) throw InternalConsistencyError("newform " + spec_.name + " is not normalized (a_1 != 1)");
  cache_ = s.coefficients();
}

BigInt Newform::coefficient(long n) const {
  if (n < 1) throw InvalidArgument("coefficient index must be >= 1");
  std::lock_guard lock(mu_);
  ensure(n);
  return cache_[static_cast<std::size_t>(n)];
}

std::vector<BigInt> Newform::coefficients(long n) const {
  std::lock_guard lock(mu_);
  ensure(n);
  return std::vector<BigInt>(cache_.begin() + 1, cache_.begin() + n + 1);
}

long Newform::cached_order() const {
  std::lock_guard lock(mu_);
  return static_cast<long>(cache_.size()) - 1;
}

void Newform::load_cache(const std::string& path) const {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open coefficient cache '" + path + "'");
  std::vector<BigInt> values{BigInt(0)};
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    long n;
    std::string a;
    if (!(ls >> n)) continue;  // blank line
    if (!(ls >> a) || n != static_cast<long>(values.size())) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected 'n a_n' with contiguous n");
    }
    BigInt v;
    if (v.set_str(a, 10) != 0) throw InvalidArgument(path + ":" + std::to_string(lineno) + ": bad integer");
    values.push_back(v);
  }
  if (values.size() < 2) throw InvalidArgument("coefficient cache '" + path + "' is empty");
  const long check = std::min<long>(static_cast<long>(values.size()) - 1, 50);
  QSeries ref = spec_.coefficients(check);
  for (long n = 1; n <= check; ++n) {
    if (values[static_cast<std::size_t>(n)] != ref[n]) {
      throw InvalidArgument("coefficient cache '" + path + "' disagrees with the recipe at n = " + std::to_string(n));
    }
  }
  std::lock_guard lock(mu_);
  if (values.size() > cache_.size()) cache_ = std::move(values);
}

void Newform::save_cache(const std::string& path) const {
  std::lock_guard lock(mu_);
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write coefficient cache '" + path + "'");
  for (std::size_t n = 1; n < cache_.size(); ++n) out << n << ' ' << cache_[n].get_str() << '\n';
}

const Newform& newform_f() {
  static const Newform f(newform_f_spec());
  return f;
}

const Newform& newform_h() {
  static const Newform h(newform_h_spec());
  return h;
}

BigInt newform_coefficient(const Newform& form, long n) { return form.coefficient(n); }

Real completed_l(const Newform& form, const Real& s, Precision p, const Real& t0) {
  require_precision(p);
  if (!(t0 > 0L)) throw InvalidArgument("split parameter must be positive");
  const Precision wp = p + 32;
  const NewformSpec& spec = form.spec();
  const long k = spec.weight;
  const Real ss = s.with_precision(wp);
  const Real tt = t0.with_precision(wp);
  const Real step = 2L * const_pi(wp) / sqrt(Real(static_cast<long>(spec.level), wp));
  // Each half decays like exp(-x min(t0, 1/t0)).
  const double decay = std::min(tt.to_double(), 1.0 / tt.to_double()) * step.to_double();
  const long n_max = static_cast<long>(std::ceil((static_cast<double>(p.bits) + 48) * std::log(2.0) / decay)) + 4;
  const std::vector<BigInt> a = form.coefficients(n_max);
  const Real ks = Real(k, wp) - ss;
  Real sum(wp);
  for (long n = 1; n <= n_max; ++n) {
    const BigInt& an = a[static_cast<std::size_t>(n - 1)];
    if (an == 0) continue;
    const Real x = step * n;
    Real term = pow(x, -ss) * gamma_upper(ss, x * tt);
    Real mirror = pow(x, -ks) * gamma_upper(ks, x / tt);
    if (spec.fricke_sign < 0) mirror = -mirror;
    sum += Real(an, wp) * (term + mirror);
  }
  return sum.with_precision(p);
}

Real l_value(const Newform& form, const Real& s, Precision p) {
  if (!(s > 0L)) throw DomainError("l_value is implemented for real s > 0");
  const Precision wp = p + 16;
  const Real ss = s.with_precision(wp);
  const Real lambda = completed_l(form, ss, wp, Real(1L, wp));
  const Real scale = pow(2L * const_pi(wp) / sqrt(Real(static_cast<long>(form.spec().level), wp)), ss);
  return (lambda * scale / gamma_real(ss)).with_precision(p);
}

Real fricke_check(const Newform& form, Precision p) {
  require_precision(p);
  const Precision wp = p + 16;
  const Real t0(1.2, wp);
  const long k = form.spec().weight;
  Real worst(0L, wp);
  for (double sv : {2.25, 2.5, 3.0}) {
    const Real s(sv, wp);
    const Real a = completed_l(form, s, wp, t0);
    Real b = completed_l(form, Real(k, wp) - s, wp, t0);
    if (form.spec().fricke_sign < 0) b = -b;
    worst = max(worst, abs(a - b));
  }
  const Real threshold = ldexp(Real(1L, wp), 20 - static_cast<long>(p.bits));
  if (worst > threshold) {
    throw FunctionalEquationViolation("completed L-function of " + form.spec().name + " is not symmetric: asymmetry " +
                                          worst.to_string(4) + " exceeds " + threshold.to_string(3),
                                      worst.to_double());
  }
  form.mark_sign_validated();
  return worst.with_precision(p);
}

Real l_prime_at_0(const Newform& form, Precision p) {
  if (!form.sign_validated()) fricke_check(form, Precision(64));
  const Precision wp = p + 16;
  Real v = completed_l(form, Real(static_cast<long>(form.spec().weight), wp), wp, Real(1L, wp));
  if (form.spec().fricke_sign < 0) v = -v;
  return v.with_precision(p);
}

}  // namespace mahlerlab
