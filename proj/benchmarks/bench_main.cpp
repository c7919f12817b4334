#include <benchmark/benchmark.h>

#include "iwasawa/admissible.hpp"
#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/ideals.hpp"
#include "iwasawa/sampling.hpp"
#include "iwasawa/signed_decomposition.hpp"

using namespace iwasawa;

static void BM_SeriesMultiply(benchmark::State& state) {
  const RingParams R(5, 3);
  const int m = static_cast<int>(state.range(0));
  const Poly mod = omega_poly(R, m);
  SplitMix64 rng(1);
  const auto a = random_series(R, mod, rng), b = random_series(R, mod, rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
  state.SetLabel("degree " + std::to_string(degree(mod)));
}
BENCHMARK(BM_SeriesMultiply)->DenseRange(1, 4);

static void BM_SprungDecompose(benchmark::State& state) {
  const RingParams R(3, 2);
  const int M = static_cast<int>(state.range(0));
  SplitMix64 rng(2);
  const int terms = degree(omega_poly(R, M));
  const auto fam = sprung_synthesize(TruncatedSeries(R, random_poly(R, terms, rng)),
                                     TruncatedSeries(R, random_poly(R, terms, rng)), R, 3, M);
  const SprungDecomposer dec(R, 3, M);
  for (auto _ : state) benchmark::DoNotOptimize(dec.decompose(fam));
}
BENCHMARK(BM_SprungDecompose)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

static void BM_SprungSetup(benchmark::State& state) {
  const RingParams R(3, 2);
  const int M = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(SprungDecomposer(R, 3, M));
}
BENCHMARK(BM_SprungSetup)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_TraceOfFrobenius(benchmark::State& state) {
  const auto E = CurveData::make({0, 0, 1, -1, 0}, 37);
  const i64 ell = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(a_ell(E, ell));
}
BENCHMARK(BM_TraceOfFrobenius)->Arg(9973)->Arg(65537)->Arg(1000003)->Unit(benchmark::kMicrosecond);

static void BM_AdmissibleScan(benchmark::State& state) {
  const auto E = CurveData::make({0, 0, 1, -1, 0}, 37, {{37, 1}});
  const auto K = QuadFieldData::make(-3, E);
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_admissible(E, K, 5, 1, 100000, jobs));
}
BENCHMARK(BM_AdmissibleScan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_FittingIdeal(benchmark::State& state) {
  const RingParams R(3, 2);
  const Poly mod = omega_poly(R, 2);
  const int size = static_cast<int>(state.range(0));
  SplitMix64 rng(3);
  std::vector<std::vector<TruncatedSeries>> m(size + 1, std::vector<TruncatedSeries>(size));
  for (auto& row : m)
    for (auto& e : row) e = random_series(R, mod, rng);
  const auto P = PresentationMatrix::make(m);
  for (auto _ : state) benchmark::DoNotOptimize(fitting_ideal(P));
}
BENCHMARK(BM_FittingIdeal)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
