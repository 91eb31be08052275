#include <benchmark/benchmark.h>

#include "mahlerlab/finite_field.hpp"
#include "mahlerlab/mahler.hpp"
#include "mahlerlab/modular.hpp"
#include "mahlerlab/quadrature.hpp"
#include "mahlerlab/special.hpp"
#include "mahlerlab/wz.hpp"

using namespace mahlerlab;

namespace {

Precision bits(const benchmark::State& state) { return Precision(static_cast<mpfr_prec_t>(state.range(0))); }

void BM_PiConstant(benchmark::State& state) {
  const Precision p = bits(state);
  for (auto _ : state) benchmark::DoNotOptimize(const_pi(p));
}
BENCHMARK(BM_PiConstant)->Arg(128)->Arg(1024)->Arg(4096);

void BM_EllipticK(benchmark::State& state) {
  const Real k = Real(3L, bits(state)) / 7L;
  for (auto _ : state) benchmark::DoNotOptimize(ell_k(k));
}
BENCHMARK(BM_EllipticK)->Arg(128)->Arg(1024);

void BM_LValueF4(benchmark::State& state) {
  const Precision p = bits(state);
  const Newform& f = newform_f();
  const Real s(4L, p);
  for (auto _ : state) benchmark::DoNotOptimize(l_value(f, s, p));
}
BENCHMARK(BM_LValueF4)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_MR16Series(benchmark::State& state) {
  const Precision p = bits(state);
  for (auto _ : state) benchmark::DoNotOptimize(m_r16_series(p));
}
BENCHMARK(BM_MR16Series)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_TanhSinhKK(benchmark::State& state) {
  const Precision p = bits(state);
  const UnitIntegrand f = [](const Real& x, const Real& xc) {
    const Real kp = min(sqrt(xc * (1L + x)), Real(1L, x.precision()));
    return ell_k_from_complement(kp) * ell_kprime(x);
  };
  const Real tol = ldexp(Real(1L, p), -static_cast<long>(p.bits) + 24);
  for (auto _ : state) benchmark::DoNotOptimize(tanh_sinh(f, tol, p).value);
}
BENCHMARK(BM_TanhSinhKK)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_TorusQmc(benchmark::State& state) {
  const LaurentDescriptor poly = LaurentDescriptor::builtin("p4");
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mahler_numeric(poly, samples, 8).value);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples) * 8);
}
BENCHMARK(BM_TorusQmc)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_GreeneSum(benchmark::State& state) {
  const long p = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(greene_nfn(p, 3, 1));
}
BENCHMARK(BM_GreeneSum)->Arg(53)->Arg(199)->Unit(benchmark::kMillisecond);

void BM_CountPoints(benchmark::State& state) {
  const long p = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(count_points(p, 1));
}
BENCHMARK(BM_CountPoints)->Arg(53)->Arg(199)->Unit(benchmark::kMillisecond);

void BM_WZVerify(benchmark::State& state) {
  const WZPair pair = wz_pair_1();
  const long n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(wz_pair_verify(pair, n));
}
BENCHMARK(BM_WZVerify)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
