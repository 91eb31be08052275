#include "mahlerlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "mahlerlab/error.hpp"

namespace mahlerlab {

std::string to_string(AccelScheme scheme) {
  switch (scheme) {
    case AccelScheme::levin_u: return "levin-u";
    case AccelScheme::richardson: return "richardson";
    case AccelScheme::wynn_epsilon: return "wynn-epsilon";
  }
  return "?";
}

AccelScheme parse_accel_scheme(std::string_view name) {
  if (name == "levin-u") return AccelScheme::levin_u;
  if (name == "richardson") return AccelScheme::richardson;
  if (name == "wynn-epsilon") return AccelScheme::wynn_epsilon;
  throw InvalidArgument("unknown acceleration scheme '" + std::string(name) + "'");
}

namespace {

// Picks the extrapolant whose neighbourhood is most stable. `estimates[i]`
// are successive extrapolants; the error of estimate i is taken as the larger
// of its differences to the two preceding estimates.
Extrapolation pick_stable(const std::vector<Real>& estimates, const std::vector<int>& orders,
                          const Real& last_step, Precision p) {
  Extrapolation best{estimates.back(), Real(0L, p), true, orders.back()};
  bool have = false;
  for (std::size_t i = 2; i < estimates.size(); ++i) {
    if (!estimates[i].is_finite() || !estimates[i - 1].is_finite() || !estimates[i - 2].is_finite()) continue;
    Real err = max(abs(estimates[i] - estimates[i - 1]), abs(estimates[i - 1] - estimates[i - 2]));
    if (!have || err < best.error_estimate) {
      best.value = estimates[i];
      best.error_estimate = err;
      best.order = orders[i];
      have = true;
    }
  }
  if (!have) {
    best.error_estimate = Real(std::numeric_limits<double>::infinity(), p);
    best.low_confidence = true;
    return best;
  }
  best.low_confidence = !(best.error_estimate <= ldexp(abs(last_step), -7)) && !best.error_estimate.is_zero();
  return best;
}

Extrapolation levin_u(std::span<const Real> s, Precision wp) {
  const std::size_t m = s.size();
  // omega_n = (n + beta) a_n with beta = 1, a_n = S_n - S_{n-1}.
  std::vector<Real> inv_omega(m);
  for (std::size_t n = 0; n < m; ++n) {
    Real a = n == 0 ? s[0].with_precision(wp) : s[n].with_precision(wp) - s[n - 1];
    if (a.is_zero()) {
      // A vanishing term makes the remainder model singular; stop here.
      inv_omega.resize(n);
      break;
    }
    inv_omega[n] = 1L / (a * static_cast<long>(n + 1));
  }
  const std::size_t usable = inv_omega.size();
  std::vector<Real> estimates;
  std::vector<int> orders;
  Real best_err;
  std::size_t best_k = 0;
  for (std::size_t k = 1; k + 1 <= usable; ++k) {
    Real num(wp), den(wp);
    Real binom(1L, wp);
    const Real kb(static_cast<long>(k + 1), wp);
    for (std::size_t j = 0; j <= k; ++j) {
      Real w = pow(Real(static_cast<long>(j + 1), wp) / kb, static_cast<long>(k) - 1) * binom;
      if (j % 2 == 1) w = -w;
      num += w * s[j] * inv_omega[j];
      den += w * inv_omega[j];
      binom = binom * static_cast<long>(k - j) / static_cast<long>(j + 1);
    }
    estimates.push_back(num / den);
    orders.push_back(static_cast<int>(k));
    const std::size_t e = estimates.size();
    if (e >= 2) {
      Real d = abs(estimates[e - 1] - estimates[e - 2]);
      if (best_k == 0 || d < best_err) {
        best_err = d;
        best_k = k;
      } else if (k > best_k + 24 && d > ldexp(best_err, 40)) {
        break;  // cancellation has taken over
      }
    }
  }
  if (estimates.size() < 3) return Extrapolation{s.back(), abs(s.back() - s[m - 2]), true, 0};
  return pick_stable(estimates, orders, s[m - 1] - s[m - 2], wp);
}

// Polynomial extrapolation in h = 1/(n+1) to h = 0 over the last k+1 partial
// sums, for k = 1, 2, ...; Neville tableau grown one node at a time.
Extrapolation richardson(std::span<const Real> s, Precision wp) {
  const std::size_t m = s.size();
  std::vector<Real> h, row;
  std::vector<Real> estimates;
  std::vector<int> orders;
  Real best_err;
  std::size_t best_k = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t n = m - 1 - j;
    h.push_back(1L / Real(static_cast<long>(n + 1), wp));
    // row[i] holds P_{i..j}(0); update in place from the new node.
    row.push_back(s[n].with_precision(wp));
    for (std::size_t i = row.size() - 1; i-- > 0;) {
      // P_{i..j} = (h_i P_{i+1..j} - h_j P_{i..j-1}) / (h_i - h_j) evaluated at 0.
      row[i] = (h[i] * row[i + 1] - h[j] * row[i]) / (h[i] - h[j]);
    }
    if (j == 0) continue;
    estimates.push_back(row[0]);
    orders.push_back(static_cast<int>(j));
    const std::size_t e = estimates.size();
    if (e >= 2) {
      Real d = abs(estimates[e - 1] - estimates[e - 2]);
      if (best_k == 0 || d < best_err) {
        best_err = d;
        best_k = j;
      } else if (j > best_k + 16 && d > ldexp(best_err, 40)) {
        break;
      }
    }
  }
  if (estimates.size() < 3) return Extrapolation{s.back(), abs(s.back() - s[m - 2]), true, 0};
  return pick_stable(estimates, orders, s[m - 1] - s[m - 2], wp);
}

Extrapolation wynn_epsilon(std::span<const Real> s, Precision wp) {
  const std::size_t m = s.size();
  // Column-by-column epsilon table; prev = eps_{k-1}, cur = eps_k.
  std::vector<Real> prev(m + 1, Real(0L, wp));
  std::vector<Real> cur;
  cur.reserve(m);
  for (const Real& x : s) cur.push_back(x.with_precision(wp));
  std::vector<Real> estimates{cur.back()};
  std::vector<int> orders{0};
  for (std::size_t k = 1; k < m; ++k) {
    std::vector<Real> next;
    bool broken = false;
    for (std::size_t n = 0; n + 1 < cur.size(); ++n) {
      Real diff = cur[n + 1] - cur[n];
      if (diff.is_zero()) {
        broken = true;
        break;
      }
      next.push_back(prev[n + 1] + 1L / diff);
    }
    if (broken || next.empty()) break;
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0) {
      estimates.push_back(cur.back());
      orders.push_back(static_cast<int>(k));
    }
  }
  if (estimates.size() < 3) {
    Extrapolation e{estimates.back(), abs(s.back() - s[m - 2]), true, orders.back()};
    if (estimates.size() == 2) e.error_estimate = abs(estimates[1] - estimates[0]);
    return e;
  }
  return pick_stable(estimates, orders, s[m - 1] - s[m - 2], wp);
}

}  // namespace

Extrapolation accelerate(std::span<const Real> partial_sums, AccelScheme scheme) {
  if (partial_sums.size() < 8) {
    throw InvalidArgument("accelerate needs at least 8 partial sums, got " + std::to_string(partial_sums.size()));
  }
  Precision wp(0);
  for (const Real& x : partial_sums) wp = std::max(wp, x.precision());
  wp = wp + 32;
  Extrapolation e;
  switch (scheme) {
    case AccelScheme::levin_u: e = levin_u(partial_sums, wp); break;
    case AccelScheme::richardson: e = richardson(partial_sums, wp); break;
    case AccelScheme::wynn_epsilon: e = wynn_epsilon(partial_sums, wp); break;
  }
  const Precision out = wp + (-32);
  e.value = e.value.with_precision(out);
  e.error_estimate = e.error_estimate.with_precision(out);
  if (!e.value.is_finite()) e.low_confidence = true;
  return e;
}

SeriesResult sum_series(const SeriesSpec& spec, const Real& target_abs_error, Precision p,
                        const SeriesOptions& options) {
  require_precision(p);
  if (!spec.term) throw InvalidArgument("series '" + spec.name + "' has no term function");
  const Real half_target = ldexp(target_abs_error.with_precision(p), -1);

  if (!options.acceleration) {
    const Precision acc_p = p + 32;
    Real sum(acc_p);
    for (std::int64_t i = 0; i < options.max_terms; ++i) {
      const std::int64_t n = spec.first_index + i;
      sum += spec.term(n, p + 16);
      if (spec.tail_bound) {
        if (auto tb = spec.tail_bound(n, p); tb && *tb <= half_target) {
          return SeriesResult{sum.with_precision(p), *tb, i + 1, false};
        }
      }
    }
    throw NoConvergence("series '" + spec.name + "' did not reach its target within " +
                            std::to_string(options.max_terms) + " terms",
                        sum.to_string(sum.round_trip_digits()));
  }

  // Extrapolation loses digits to cancellation; carry roughly twice the
  // requested precision in the partial sums.
  const Precision wp(2 * p.bits + 32);
  std::vector<Real> partial;
  Real sum(wp + 32);
  auto extend_to = [&](std::int64_t count) {
    while (static_cast<std::int64_t>(partial.size()) < count) {
      const std::int64_t n = spec.first_index + static_cast<std::int64_t>(partial.size());
      sum += spec.term(n, wp);
      partial.push_back(sum.with_precision(wp));
    }
  };

  std::int64_t m = std::max<std::int64_t>(options.min_partial_sums, 8);
  Extrapolation best;
  bool have_best = false;
  for (;;) {
    extend_to(m);
    if (spec.tail_bound) {
      if (auto tb = spec.tail_bound(spec.first_index + m - 1, p); tb && *tb <= half_target) {
        return SeriesResult{partial.back().with_precision(p), *tb, m, false};
      }
    }
    Extrapolation e = accelerate(partial, *options.acceleration);
    if (!have_best || e.error_estimate < best.error_estimate) {
      best = e;
      have_best = true;
    }
    if (!e.low_confidence && e.error_estimate <= half_target) {
      return SeriesResult{e.value.with_precision(p), e.error_estimate.with_precision(p), m, true};
    }
    if (m >= options.max_partial_sums) break;
    m = std::min(2 * m, options.max_partial_sums);
  }
  throw NoConvergence("accelerated series '" + spec.name + "' stalled at error estimate " +
                          best.error_estimate.to_string(3),
                      best.value.to_string(best.value.round_trip_digits()));
}

Real sum_alternating(const std::function<Real(std::int64_t, Precision)>& magnitude, Precision p) {
  require_precision(p);
  // Error <= 2 sum|a| / (3 + sqrt 8)^n.
  const auto n = static_cast<long>(std::ceil((static_cast<double>(p.bits) + 10.0) * std::log(2.0) /
                                             std::log(3.0 + std::sqrt(8.0)))) + 1;
  const Precision wp = p + static_cast<mpfr_prec_t>(2 * std::log2(static_cast<double>(n)) + 16);
  Real d = pow(3L + sqrt(Real(8L, wp)), n);
  d = (d + 1L / d) / 2L;
  Real b(-1L, wp);
  Real c = -d;
  Real s(wp);
  for (long k = 0; k < n; ++k) {
    c = b - c;
    s += c * magnitude(k, wp);
    b = b * (2 * (k + n)) * (k - n) / ((2 * k + 1) * (k + 1));
  }
  return (s / d).with_precision(p);
}

std::function<Real(std::int64_t, Precision)> recurrent_term(
    std::int64_t first_index, std::function<Real(Precision)> first,
    std::function<Real(std::int64_t, Precision)> ratio) {
  struct State {
    std::int64_t n = -1;
    Precision p{0};
    Real value;
  };
  auto state = std::make_shared<State>();
  return [=](std::int64_t n, Precision p) -> Real {
    if (n < first_index) throw InvalidArgument("term index below first index");
    if (state->n < first_index || state->n > n || state->p != p) {
      state->n = first_index;
      state->p = p;
      state->value = first(p);
    }
    while (state->n < n) {
      state->value = state->value * ratio(state->n, p);
      ++state->n;
    }
    return state->value;
  };
}

}  // namespace mahlerlab
