#include <benchmark/benchmark.h>

#include <cmath>

#include "maxtail/distributions.hpp"
#include "maxtail/generic_hidden.hpp"
#include "maxtail/montecarlo.hpp"
#include "maxtail/pareto_hidden.hpp"
#include "maxtail/quadrature.hpp"
#include "maxtail/rng.hpp"
#include "maxtail/special_functions.hpp"

namespace {

void BM_Gamma(benchmark::State& state) {
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(maxtail::gamma(x));
    x = x < 150.0 ? x + 0.73 : 0.37;
  }
}
BENCHMARK(BM_Gamma);

void BM_Erfc(benchmark::State& state) {
  double x = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(maxtail::erfc(x));
    x = x < 8.0 ? x + 0.37 : -5.0;
  }
}
BENCHMARK(BM_Erfc);

void BM_UpperIncompleteGamma(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(maxtail::upper_incomplete_gamma(1.5, x));
    x = x < 30.0 ? x + 0.41 : 0.1;
  }
}
BENCHMARK(BM_UpperIncompleteGamma);

void BM_IntegrateExpDecay(benchmark::State& state) {
  const maxtail::QuadratureConfig cfg;
  for (auto _ : state) {
    auto r = maxtail::integrate([](double x) { return std::exp(-x); }, 0.0,
                                std::numeric_limits<double>::infinity(), cfg);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_IntegrateExpDecay);

void BM_HiddenDensity(benchmark::State& state) {
  const maxtail::HiddenMomentLaw law{{2.0, 1.0}, {100, 1.0}};
  double z = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(maxtail::hidden_density(law, z));
    z = z < 1.0 ? z * 1.31 : 1e-3;
  }
}
BENCHMARK(BM_HiddenDensity);

void BM_ParetoTrialBatch(benchmark::State& state) {
  maxtail::SimulationPlan plan;
  plan.model = maxtail::Pareto{{2.0, 1.0}};
  plan.n = static_cast<std::int64_t>(state.range(0));
  plan.p = 1.0;
  plan.trials = 1000;
  plan.seed = 99;
  for (auto _ : state) {
    auto values = maxtail::simulate_hidden_moment_values(plan);
    benchmark::DoNotOptimize(values.data());
  }
  state.SetItemsProcessed(state.iterations() * plan.trials * plan.n);
}
BENCHMARK(BM_ParetoTrialBatch)->Arg(100)->Arg(1000);

void BM_NestedGaussianTail(benchmark::State& state) {
  const auto n = static_cast<std::int64_t>(state.range(0));
  for (auto _ : state) {
    auto est = maxtail::expected_hidden_generic(
        maxtail::Gaussian{0.0, 1.0}, n, 0.0, 0.0);
    benchmark::DoNotOptimize(est.value);
  }
}
BENCHMARK(BM_NestedGaussianTail)->Arg(1)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
