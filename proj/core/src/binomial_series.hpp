#ifndef MAHLERLAB_SRC_BINOMIAL_SERIES_HPP
#define MAHLERLAB_SRC_BINOMIAL_SERIES_HPP

// Internal helpers for series in c_n = C(2n,n)^2 / 2^(4n).

#include <cstdint>
#include <functional>

#include "mahlerlab/real.hpp"
#include "mahlerlab/series.hpp"

namespace mahlerlab::detail {

inline Rational frac(long num, long den) {
  Rational r{BigInt(num), BigInt(den)};
  r.canonicalize();
  return r;
}

/// 2^(slack - P) at precision P.
inline Real target_for(Precision p, long slack) { return ldexp(Real(1L, p), -static_cast<long>(p.bits) + slack); }

/// Term function n -> c_n^j x^n weight(n) for n >= first, O(1) per ascending
/// step. x = 0 means no power factor.
std::function<Real(std::int64_t, Precision)> central_power_term(int j, std::function<Rational(std::int64_t)> weight,
                                                                  std::int64_t first, const Real& x);

/// sum_{n >= first} c_n^j weight(n), Levin-accelerated, to about 2^(8-P).
Real sum_central_power(int j, std::function<Rational(std::int64_t)> weight, std::int64_t first, Precision p);

}  // namespace mahlerlab::detail

#endif  // MAHLERLAB_SRC_BINOMIAL_SERIES_HPP
