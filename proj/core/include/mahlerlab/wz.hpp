#ifndef MAHLERLAB_WZ_HPP
#define MAHLERLAB_WZ_HPP

// Exact verification of WZ certificate pairs and the binomial sums they
// prove. Everything here is exact rational arithmetic.

#include <functional>
#include <string>
#include <vector>

#include "mahlerlab/real.hpp"

namespace mahlerlab {

/// C(n, k) for 0 <= k <= n. Throws InvalidArgument otherwise.
BigInt binom(long n, long k);
/// C(2m, m), memoized.
BigInt central_binomial(long m);

/// A value m * 2^e with the power of two kept separate.
struct Dyadic {
  Rational mantissa;
  long two_exponent = 0;

  Rational value() const;
};

/// f(n,k), g(n,k) with f(n+1,k) - f(n,k) = g(n,k+1) - g(n,k).
struct WZPair {
  std::string name;
  std::function<Dyadic(long n, long k)> f;
  std::function<Dyadic(long n, long k)> g;
};

/// f = 2^-(4k+4n) (2n+1)^2 / (2n-2k+1) C(2k,k)^2 C(2n,n)^2 and its mate.
WZPair wz_pair_1();
/// f = 2^-(4k+4n) (2n+1)^2 / (n+k+1) C(2k,k)^2 C(2n,n)^2 and its mate.
WZPair wz_pair_2();

struct WZViolation {
  long n = 0;
  long k = 0;
  Rational residual;
};

struct WZReport {
  std::string name;
  long n_max = 0;
  long checked = 0;
  std::vector<WZViolation> violations;  // at most the first 32 are kept
  long violation_count = 0;

  bool ok() const { return violation_count == 0; }
};

/// Checks the pair relation exactly for 0 <= k <= n <= n_max.
WZReport wz_pair_verify(const WZPair& pair, long n_max);

/// Checks h(n) = h(0) + sum_{j=1}^{n} (f(j,j) + g(j-1,j) - g(j-1,0)) against
/// h(n) = sum_{k<=n} f(n,k) for 0 <= n <= n_max.
WZReport telescope_reconstruct(const WZPair& pair, long n_max);

struct BinomialTriple {
  Rational first;   // sum 2^-4k C(2k,k)^2 / (2n-2k+1)
  Rational second;  // sum 2^-4k C(2k,k)^2 / (n+k+1)
  Rational third;   // 2^4n / ((2n+1)^2 C(2n,n)^2) sum (4k+1) 2^-8k C(2k,k)^4

  bool all_equal() const { return first == second && second == third; }
};

BinomialTriple identity_2_8_2_9(long n);

/// T(0..n_max) with T(n) = sum_{k<=n} (4k+1) 2^-8k C(2k,k)^4.
std::vector<Rational> ramanujan_partial_sums(long n_max);

}  // namespace mahlerlab

#endif  // MAHLERLAB_WZ_HPP
