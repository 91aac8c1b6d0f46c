#include <benchmark/benchmark.h>

#include <cmath>

#include <cosparse/frames.hpp>
#include <cosparse/rng.hpp>
#include <cosparse/sensing.hpp>

using namespace cosparse;

namespace {

CVector random_signal(Index n, std::uint64_t seed) {
  Rng rng(seed);
  CVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.complex_normal();
  return v;
}

Dictionary gabor(Index n) {
  const Index a = 16, channels = 8 * a;
  return build_gabor({n, 18.0, a, 1.0 / double(channels)});
}

}  // namespace

static void BM_OversampledDftAdjoint(benchmark::State& state) {
  const Index n = state.range(0);
  const Dictionary d = build_oversampled_dft(n, 4);
  const CVector f = random_signal(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(d.adjoint(f));
  state.SetItemsProcessed(state.iterations() * d.d());
}
BENCHMARK(BM_OversampledDftAdjoint)->RangeMultiplier(4)->Range(256, 16384);

static void BM_OversampledDftApply(benchmark::State& state) {
  const Index n = state.range(0);
  const Dictionary d = build_oversampled_dft(n, 4);
  const CVector x = random_signal(d.d(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(d.apply(x));
  state.SetItemsProcessed(state.iterations() * d.d());
}
BENCHMARK(BM_OversampledDftApply)->RangeMultiplier(4)->Range(256, 16384);

static void BM_GaborAdjoint(benchmark::State& state) {
  const Dictionary d = gabor(state.range(0));
  const CVector f = random_signal(d.n(), 3);
  for (auto _ : state) benchmark::DoNotOptimize(d.adjoint(f));
  state.SetItemsProcessed(state.iterations() * d.d());
}
BENCHMARK(BM_GaborAdjoint)->Arg(1024)->Arg(4096);

static void BM_GaborApply(benchmark::State& state) {
  const Dictionary d = gabor(state.range(0));
  const CVector x = random_signal(d.d(), 4);
  for (auto _ : state) benchmark::DoNotOptimize(d.apply(x));
  state.SetItemsProcessed(state.iterations() * d.d());
}
BENCHMARK(BM_GaborApply)->Arg(1024)->Arg(4096);

static void BM_TightGaborRoundTrip(benchmark::State& state) {
  const Dictionary d = tighten(gabor(state.range(0)));
  const CVector f = random_signal(d.n(), 5);
  for (auto _ : state) benchmark::DoNotOptimize(d.apply(d.adjoint(f)));
}
BENCHMARK(BM_TightGaborRoundTrip)->Arg(1024);

static void BM_SubsampledDftSign(benchmark::State& state) {
  const Index n = state.range(0);
  const SensingOperator a = subsampled_dft_sign(n / 8, n, 6);
  const CVector f = random_signal(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(a.adjoint(a.apply(f)));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SubsampledDftSign)->RangeMultiplier(4)->Range(1024, 65536);

static void BM_GaussianSensing(benchmark::State& state) {
  const Index n = state.range(0);
  const SensingOperator a = gaussian_sensing(n / 8, n, 8);
  const CVector f = random_signal(n, 9);
  for (auto _ : state) benchmark::DoNotOptimize(a.adjoint(a.apply(f)));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GaussianSensing)->RangeMultiplier(4)->Range(256, 4096);
