#include <benchmark/benchmark.h>

#include "gsieve/archimedean.hpp"
#include "gsieve/characters.hpp"
#include "gsieve/exp_sums.hpp"
#include "gsieve/sieve_lab.hpp"
#include "gsieve/spectral.hpp"

using namespace gsieve;

namespace {

// modulus of norm ~ 2^k along the diagonal-ish direction
GaussianInt modulus_for(std::int64_t k) { return GaussianInt{k, k / 2 + 1}; }

void BM_Kloosterman(benchmark::State& state) {
  const GaussianInt c = modulus_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kloosterman({1, 2}, {3, -1}, c));
  state.counters["N(c)"] = double(c.norm());
}
BENCHMARK(BM_Kloosterman)->Arg(5)->Arg(10)->Arg(20)->Arg(40);

void BM_FSum(benchmark::State& state) {
  const GaussianInt c = modulus_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(f_sum({2, 1}, c));
  state.counters["N(c)"] = double(c.norm());
}
BENCHMARK(BM_FSum)->Arg(5)->Arg(10)->Arg(20);

void BM_CharGroup(benchmark::State& state) {
  const GaussianInt c = modulus_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(CharGroup::make(c));
}
BENCHMARK(BM_CharGroup)->Arg(5)->Arg(10)->Arg(20);

void BM_MellinAll(benchmark::State& state) {
  const GaussianInt c = modulus_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(MellinTransform(c).all_hats());
}
BENCHMARK(BM_MellinAll)->Arg(5)->Arg(10);

void BM_BoldJ(benchmark::State& state) {
  const SpectralPoint pt{0.7, int(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(bold_J(pt, {1.3, 0.4}));
}
BENCHMARK(BM_BoldJ)->Arg(0)->Arg(2);

void BM_HSpectral(benchmark::State& state) {
  const TestFunction tf(double(state.range(0)), double(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(H_spectral({1.0, 0.5}, tf));
}
BENCHMARK(BM_HSpectral)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_HGeometric(benchmark::State& state) {
  const TestFunction tf(double(state.range(0)), double(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(H_geometric_both({1.0, 0.5}, tf));
}
BENCHMARK(BM_HGeometric)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_HeckeZeta(benchmark::State& state) {
  const double cutoff = double(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(hecke_zeta(2.0, 1, cutoff));
}
BENCHMARK(BM_HeckeZeta)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_HybridTrial(benchmark::State& state) {
  auto rng = trial_engine(1, 0);
  const auto a = random_sign_sequence(NormWindow::kInitial, 20, rng);
  for (auto _ : state) benchmark::DoNotOptimize(hybrid_ratio(4.0, 2.0, a));
}
BENCHMARK(BM_HybridTrial)->Unit(benchmark::kMillisecond);

void BM_QuadFormEvaluate(benchmark::State& state) {
  const QuadFormInput in{{1}, {0.37, 0.21}, 0.0, 8.0};
  const QuadFormKernel kernel(in, 8, 8);
  auto rng = trial_engine(1, 0);
  const auto a = random_sign_sequence(NormWindow::kDyadic, 8, rng);
  const auto b = random_sign_sequence(NormWindow::kDyadic, 8, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kernel.evaluate(a, b));
}
BENCHMARK(BM_QuadFormEvaluate);

}  // namespace

BENCHMARK_MAIN();
