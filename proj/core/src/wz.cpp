#include "mahlerlab/wz.hpp"

#include <algorithm>
#include <mutex>

#include "mahlerlab/error.hpp"

namespace mahlerlab {

BigInt binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) {
    throw InvalidArgument("binom(" + std::to_string(n) + ", " + std::to_string(k) + ") out of range");
  }
  k = std::min(k, n - k);
  BigInt r(1);
  // Each prefix product is itself a binomial coefficient, so the division is exact.
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return r;
}

BigInt central_binomial(long m) {
  if (m < 0) throw InvalidArgument("central_binomial index must be nonnegative");
  static std::mutex mu;
  static std::vector<BigInt> cache{BigInt(1)};
  std::lock_guard lock(mu);
  while (static_cast<long>(cache.size()) <= m) {
    const long j = static_cast<long>(cache.size()) - 1;
    // C(2j+2, j+1) = C(2j, j) * 2(2j+1) / (j+1)
    BigInt next = cache.back() * (2 * (2 * j + 1));
    mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), static_cast<unsigned long>(j + 1));
    cache.push_back(std::move(next));
  }
  return cache[static_cast<std::size_t>(m)];
}

Rational Dyadic::value() const {
  Rational r = mantissa;
  if (two_exponent >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(two_exponent));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-two_exponent));
  }
  return r;
}

namespace {

Rational ratio(long num, long den) {
  Rational r{BigInt(num), BigInt(den)};
  r.canonicalize();
  return r;
}

// C(2k,k)^2 C(2n,n)^2 as an integer.
BigInt binomial_block(long n, long k) {
  BigInt a = central_binomial(k) * central_binomial(n);
  return a * a;
}

// sum c_i 2^(e_i), exact, returned as a Dyadic at the smallest exponent.
Dyadic combine(const std::vector<std::pair<int, Dyadic>>& terms) {
  long emin = terms.front().second.two_exponent;
  for (const auto& t : terms) emin = std::min(emin, t.second.two_exponent);
  Rational sum(0);
  for (const auto& [sign, d] : terms) {
    Rational m = d.mantissa;
    mpq_mul_2exp(m.get_mpq_t(), m.get_mpq_t(), static_cast<mp_bitcnt_t>(d.two_exponent - emin));
    if (sign > 0) {
      sum += m;
    } else {
      sum -= m;
    }
  }
  return Dyadic{sum, emin};
}

}  // namespace

WZPair wz_pair_1() {
  WZPair p;
  p.name = "wz-pair-1";
  p.f = [](long n, long k) {
    Rational m(binomial_block(n, k));
    m *= ratio((2 * n + 1) * (2 * n + 1), 2 * n - 2 * k + 1);
    return Dyadic{m, -4 * (k + n)};
  };
  p.g = [](long n, long k) {
    Rational m(binomial_block(n, k));
    m *= ratio(-k * k * (2 * n + 1) * (2 * n + 1), (n + 1) * (n + 1) * (2 * n - 2 * k + 3));
    return Dyadic{m, -4 * (k + n)};
  };
  return p;
}

WZPair wz_pair_2() {
  WZPair p;
  p.name = "wz-pair-2";
  p.f = [](long n, long k) {
    Rational m(binomial_block(n, k));
    m *= ratio((2 * n + 1) * (2 * n + 1), n + k + 1);
    return Dyadic{m, -4 * (k + n)};
  };
  p.g = [](long n, long k) {
    Rational m(binomial_block(n, k));
    m *= ratio(k * k * (2 * n + 1) * (2 * n + 1), (n + 1) * (n + 1) * (n + k + 1));
    return Dyadic{m, -4 * (k + n)};
  };
  return p;
}

WZReport wz_pair_verify(const WZPair& pair, long n_max) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  WZReport report{pair.name, n_max, 0, {}, 0};
  for (long n = 0; n <= n_max; ++n) {
    for (long k = 0; k <= n; ++k) {
      const Dyadic r = combine({{+1, pair.f(n + 1, k)}, {-1, pair.f(n, k)}, {-1, pair.g(n, k + 1)}, {+1, pair.g(n, k)}});
      ++report.checked;
      if (r.mantissa != 0) {
        ++report.violation_count;
        if (report.violations.size() < 32) report.violations.push_back({n, k, r.value()});
      }
    }
  }
  return report;
}

WZReport telescope_reconstruct(const WZPair& pair, long n_max) {
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  WZReport report{pair.name + "/telescope", n_max, 0, {}, 0};
  const Rational h0 = pair.f(0, 0).value();
  Rational running = h0;
  for (long n = 0; n <= n_max; ++n) {
    if (n >= 1) {
      running += combine({{+1, pair.f(n, n)}, {+1, pair.g(n - 1, n)}, {-1, pair.g(n - 1, 0)}}).value();
    }
    // All f(n,k) share the block C(2n,n)^2 2^-4n; sum the k-dependent part.
    std::vector<std::pair<int, Dyadic>> row;
    row.reserve(static_cast<std::size_t>(n) + 1);
    for (long k = 0; k <= n; ++k) row.push_back({+1, pair.f(n, k)});
    const Rational direct = combine(row).value();
    ++report.checked;
    if (direct != running) {
      ++report.violation_count;
      if (report.violations.size() < 32) report.violations.push_back({n, -1, direct - running});
    }
  }
  return report;
}

BinomialTriple identity_2_8_2_9(long n) {
  if (n < 0) throw InvalidArgument("identity_2_8_2_9 requires n >= 0");
  BinomialTriple t{Rational(0), Rational(0), Rational(0)};
  Rational c(1);  // 2^-4k C(2k,k)^2
  Rational ram(0);
  for (long k = 0; k <= n; ++k) {
    t.first += c / Rational(2 * n - 2 * k + 1);
    t.second += c / Rational(n + k + 1);
    ram += Rational(4 * k + 1) * c * c;
    if (k < n) c *= ratio((2 * k + 1) * (2 * k + 1), 4 * (k + 1) * (k + 1));
  }
  // c now holds 2^-4n C(2n,n)^2.
  t.third = ram / (Rational((2 * n + 1) * (2 * n + 1)) * c);
  return t;
}

std::vector<Rational> ramanujan_partial_sums(long n_max) {
  if (n_max < 0) throw InvalidArgument("n_max must be nonnegative");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  Rational c(1), sum(0);
  for (long k = 0; k <= n_max; ++k) {
    sum += Rational(4 * k + 1) * c * c;
    out.push_back(sum);
    c *= ratio((2 * k + 1) * (2 * k + 1), 4 * (k + 1) * (k + 1));
  }
  return out;
}

}  // namespace mahlerlab
