#include <benchmark/benchmark.h>

#include <cmath>

#include "isocap/measure.hpp"
#include "isocap/nfunction.hpp"
#include "isocap/orlicz.hpp"
#include "isocap/profiles.hpp"
#include "isocap/semigroup.hpp"

using namespace isocap;

namespace {

const ModelMeasure1D& gauss() {
  static const auto mu = ModelMeasure1D::make_gaussian();
  return mu;
}

void BM_capq_halfline(benchmark::State& state) {
  const auto& mu = gauss();
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(capq_halfline(mu, 2.0, 0.0, x));
    x = x < 2.0 ? x + 1e-9 : 0.3;  // defeat value caching across iterations
  }
}
BENCHMARK(BM_capq_halfline);

void BM_iso_profiler_sweep(benchmark::State& state) {
  const auto& mu = gauss();
  IsoProfiler prof(mu);
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 1; i < 64; ++i) acc += prof.value(i / 128.0);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_iso_profiler_sweep);

void BM_orlicz_norm(benchmark::State& state) {
  const auto& mu = gauss();
  auto N = NFunction::phi_q(2.0);
  auto f = mu.sample([](double x) { return std::abs(x) + 0.2 * x * x; });
  for (auto _ : state) benchmark::DoNotOptimize(orlicz_norm(mu, f, N));
}
BENCHMARK(BM_orlicz_norm);

void BM_semigroup_evolve(benchmark::State& state) {
  SemigroupSolver S(gauss(), {int(state.range(0)), 1e-3, 0.5});
  auto f0 = S.project([](double x) { return x; });
  for (auto _ : state) benchmark::DoNotOptimize(S.evolve(f0, 0.05));
}
BENCHMARK(BM_semigroup_evolve)->Arg(1001)->Arg(4001);

}  // namespace

BENCHMARK_MAIN();
