#include "binomial_series.hpp"

namespace mahlerlab::detail {

std::function<Real(std::int64_t, Precision)> central_power_term(int j, std::function<Rational(std::int64_t)> weight,
                                                                  std::int64_t first, const Real& x) {
  Rational c0(1);
  for (std::int64_t n = 0; n < first; ++n) {
    const Rational r = frac((2 * n + 1) * (2 * n + 1), 4 * (n + 1) * (n + 1));
    for (int i = 0; i < j; ++i) c0 *= r;
  }
  const bool has_x = !x.is_zero();
  auto base = recurrent_term(
      first,
      [c0, x, first, has_x](Precision p) {
        Real v(c0, p);
        if (has_x) v *= pow(x.with_precision(p), static_cast<long>(first));
        return v;
      },
      [j, x, has_x](std::int64_t n, Precision p) {
        // c_{n+1} / c_n = ((2n+1) / (2n+2))^2
        Real r = pow(Real(frac(2 * n + 1, 2 * n + 2), p), 2L * j);
        if (has_x) r *= x.with_precision(p);
        return r;
      });
  return [base, weight](std::int64_t n, Precision p) { return base(n, p) * Real(weight(n), p); };
}

Real sum_central_power(int j, std::function<Rational(std::int64_t)> weight, std::int64_t first, Precision p) {
  SeriesSpec spec;
  spec.name = "central binomial power series";
  spec.first_index = first;
  spec.term = central_power_term(j, std::move(weight), first, Real(0L, p));
  SeriesOptions opts;
  opts.acceleration = AccelScheme::levin_u;
  return sum_series(spec, target_for(p, 8), p, opts).value;
}

}  // namespace mahlerlab::detail
