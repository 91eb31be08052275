#include "mahlerlab/finite_field.hpp"

#include <cmath>
#include <numbers>

#include "mahlerlab/error.hpp"

namespace mahlerlab {

bool is_prime(long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_odd_prime(long p) {
  if (p < 3 || p >= 1'000'000 || !is_prime(p)) {
    throw InvalidArgument(std::to_string(p) + " is not an odd prime below 10^6");
  }
}

namespace {

long mod(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

long pow_mod(long b, long e, long p) {
  long r = 1;
  b = mod(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

}  // namespace

int legendre(long a, long p) {
  require_odd_prime(p);
  const long r = mod(a, p);
  if (r == 0) return 0;
  // Euler's criterion.
  return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

CharTable::CharTable(long p) : p_(p), g_(0) {
  require_odd_prime(p);
  // Smallest primitive root: g^((p-1)/q) != 1 for every prime q | p-1.
  std::vector<long> factors;
  long m = p - 1;
  for (long q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      factors.push_back(q);
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) factors.push_back(m);
  for (long g = 2; g < p && g_ == 0; ++g) {
    bool ok = true;
    for (long q : factors) ok = ok && pow_mod(g, (p - 1) / q, p) != 1;
    if (ok) g_ = g;
  }
  log_.assign(static_cast<std::size_t>(p), -1);
  long x = 1;
  for (long a = 0; a < p - 1; ++a) {
    log_[static_cast<std::size_t>(x)] = a;
    x = x * g_ % p;
  }
  root_.resize(static_cast<std::size_t>(p - 1));
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (long k = 0; k < p - 1; ++k) {
    const long double angle = two_pi * static_cast<long double>(k) / static_cast<long double>(p - 1);
    root_[static_cast<std::size_t>(k)] = Complex(std::cos(angle), std::sin(angle));
  }
}

long CharTable::index_of(long x) const {
  const long r = mod(x, p_);
  if (r == 0) throw DomainError("0 has no discrete logarithm");
  return log_[static_cast<std::size_t>(r)];
}

CharTable::Complex CharTable::value(long j, long x) const {
  const long r = mod(x, p_);
  if (r == 0) return Complex(0, 0);
  const long e = mod(mod(j, p_ - 1) * log_[static_cast<std::size_t>(r)], p_ - 1);
  return root_[static_cast<std::size_t>(e)];
}

CharTable::Complex CharTable::jacobi(long a, long b) const {
  Complex s(0, 0);
  for (long x = 2; x < p_; ++x) s += value(a, x) * value(b, 1 - x);  // x = 0, 1 contribute 0
  return s;
}

Rational greene_nfn(long p, int n, long x) {
  if (n != 1 && n != 3) throw InvalidArgument("greene_nfn supports n = 1 or 3");
  require_odd_prime(p);
  if (mod(x, p) == 0) return Rational(0);
  const CharTable table(p);
  const long h = table.phi_index();
  // p^n F = 1/(p-1) sum_j (chi_j(-1) J(phi chi_j, conj chi_j))^(n+1) chi_j(x)
  CharTable::Complex sum(0, 0);
  for (long j = 0; j < p - 1; ++j) {
    CharTable::Complex b = table.jacobi(j + h, -j);
    if (j % 2 == 1) b = -b;
    sum += std::pow(b, n + 1) * table.value(j, x);
  }
  sum /= static_cast<long double>(p - 1);
  const long double re = std::round(sum.real());
  if (std::abs(sum.real() - re) > 1e-6L || std::abs(sum.imag()) > 1e-6L) {
    throw InternalConsistencyError("Greene character sum is not integral: " + std::to_string(static_cast<double>(sum.real())) +
                                   " + " + std::to_string(static_cast<double>(sum.imag())) + "i");
  }
  Rational r(BigInt(static_cast<long>(re)), BigInt(p) * (n == 3 ? p * p : 1));
  r.canonicalize();
  return r;
}

PointCount count_points(long p, long t) {
  require_odd_prime(p);
  if (p > 199) throw ResourceError("count_points is limited to p <= 199");
  std::vector<int> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (long y = 1; y < p; ++y) chi[static_cast<std::size_t>(y * y % p)] = 1;
  const long tt = mod(t, p);
  long count = 0;
  for (long x = 0; x < p; ++x) {
    const long ax = (x * x + 1) % p;
    for (long y = 0; y < p; ++y) {
      const long axy = ax * ((y * y + 1) % p) % p;
      for (long z = 0; z < p; ++z) {
        // A w^2 - B w + A = 0 in w.
        const long a = axy * ((z * z + 1) % p) % p;
        const long b = 16 * tt % p * x % p * y % p * z % p;
        if (a == 0) {
          count += b == 0 ? p : 1;
        } else {
          const long disc = mod(b * b - 4 * a * a, p);
          count += 1 + chi[static_cast<std::size_t>(disc)];
        }
      }
    }
  }
  return PointCount{p, tt, count};
}

PointCount count_points_exhaustive(long p, long t) {
  require_odd_prime(p);
  if (p > 31) throw ResourceError("exhaustive point count is limited to p <= 31");
  const long tt = mod(t, p);
  long count = 0;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      for (long z = 0; z < p; ++z)
        for (long w = 0; w < p; ++w) {
          const long lhs = (x * x + 1) % p * ((y * y + 1) % p) % p * ((z * z + 1) % p) % p * ((w * w + 1) % p) % p;
          const long rhs = 16 * tt % p * x % p * y % p * z % p * w % p;
          if (lhs == rhs) ++count;
        }
  return PointCount{p, tt, count};
}

bool PointFormulaReport::all_zero() const {
  for (const auto& r : rows) {
    if (r.residual != 0) return false;
  }
  return true;
}

Rational point_formula(long p, long t, PointFormula variant, long constant_offset) {
  require_odd_prime(p);
  const long t2 = mod(t * t, p);
  const long phi = legendre(-1, p);
  const long eps = mod(t2 - 1, p) == 0 ? 0 : 1;
  const Rational f43 = greene_nfn(p, 3, t2);
  const Rational f21 = greene_nfn(p, 1, t2);
  const long c = 8 * (phi + 1);
  Rational r = Rational(p * p * p) * f43 + Rational(4 * phi * p * p) * f21;
  r += -3 * eps * p * p + p * p * p + c * p * p - 2 * c * p - 3 * p + 1 + constant_offset;
  r += variant == PointFormula::minus_constant ? -c : c;
  return r;
}

PointFormulaReport verify_4_1(long p, PointFormula variant, long constant_offset) {
  require_odd_prime(p);
  if (p > 50) throw ResourceError("verify_4_1 is limited to p <= 50");
  PointFormulaReport report;
  report.prime = p;
  for (long t = 1; t < p; ++t) {
    PointFormulaRow row;
    row.t = t;
    row.count = count_points(p, t).count;
    row.formula = point_formula(p, t, variant, constant_offset);
    row.residual = Rational(row.count) - row.formula;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace mahlerlab
