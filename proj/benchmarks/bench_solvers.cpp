#include <benchmark/benchmark.h>

#include <cmath>

#include <cosparse/certify.hpp>
#include <cosparse/frames.hpp>
#include <cosparse/signals.hpp>
#include <cosparse/solvers.hpp>

using namespace cosparse;

namespace {

Dictionary concat_if(Index n) {
  return build_concat(identity_dictionary(n), build_oversampled_dft(n, 1), 1.0 / std::sqrt(2.0));
}

}  // namespace

static void BM_DiracCombRecovery(benchmark::State& state) {
  const Index n = state.range(0);
  const Dictionary d = concat_if(n);
  const SensingOperator a = gaussian_sensing(n / 2, n, 11);
  const CVector y = a.apply(dirac_comb(n).samples);
  int iterations = 0;
  for (auto _ : state) {
    const RecoveryReport r = l1_analysis(a, d, y, 0.0);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.f_hat.samples.data());
  }
  state.counters["pd_iterations"] = iterations;
}
BENCHMARK(BM_DiracCombRecovery)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_GaborPulseRecovery(benchmark::State& state) {
  const Index n = 256, a_step = 8, channels = 4 * a_step;
  const Dictionary d = tighten(build_gabor({n, 6.0, a_step, 1.0 / double(channels)}));
  const SensingOperator a = gaussian_sensing(100, n, 3);
  PulseParams p;
  p.num_pulses = 1;
  p.duration = 64;
  p.rise_fall = 6;
  p.seed = 4;
  const CVector f = radar_pulse_train(n, p).signal.samples;
  const Measurement y = measure(a, f, 0.0, 5);
  for (auto _ : state) {
    const RecoveryReport r = l1_analysis(a, d, y.y, 0.0);
    benchmark::DoNotOptimize(r.f_hat.samples.data());
  }
}
BENCHMARK(BM_GaborPulseRecovery)->Unit(benchmark::kMillisecond);

static void BM_DripExact(benchmark::State& state) {
  const SensingOperator a = gaussian_sensing(6, 8, 7);
  const Dictionary d = concat_if(8);
  for (auto _ : state) benchmark::DoNotOptimize(drip_exact_small(a, d, state.range(0)).delta_hat);
}
BENCHMARK(BM_DripExact)->DenseRange(1, 3);

static void BM_DripMonteCarlo(benchmark::State& state) {
  const SensingOperator a = gaussian_sensing(32, 64, 7);
  const Dictionary d = concat_if(64);
  for (auto _ : state) benchmark::DoNotOptimize(drip_monte_carlo(a, d, 8, 1000, 1).delta_hat);
}
BENCHMARK(BM_DripMonteCarlo)->Unit(benchmark::kMillisecond);
