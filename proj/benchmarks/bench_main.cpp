// Micro-benchmarks for the hot paths: pairwise influence testing, style
// model fitting and network training. Run manually; not part of ctest.

#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "stylecast/coherent.hpp"
#include "stylecast/influence.hpp"
#include "stylecast/rng.hpp"
#include "stylecast/styles.hpp"
#include "stylecast/synth.hpp"
#include "stylecast/types.hpp"

namespace {

using namespace stylecast;

std::vector<double> ar1_series(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> y(n);
  y[0] = rng.normal();
  for (std::size_t t = 1; t < n; ++t) y[t] = 0.5 * y[t - 1] + rng.normal();
  return y;
}

void BM_GrangerPair(benchmark::State& state) {
  const auto target = ar1_series(static_cast<std::size_t>(state.range(0)), 1);
  const auto source = ar1_series(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) {
    const GrangerResult res = granger_test(target, source);
    benchmark::DoNotOptimize(res.lag_p_values.data());
  }
}
BENCHMARK(BM_GrangerPair)->Arg(100)->Arg(200)->Arg(400);

void BM_InfluenceTensor(benchmark::State& state) {
  SynthConfig cfg;
  cfg.units = static_cast<std::size_t>(state.range(0));
  cfg.styles = 1;
  cfg.length = 200;
  cfg.seed = 3;
  const SynthData data = generate(cfg);
  for (auto _ : state) {
    const InfluenceTensor tensor =
        build_influence_tensor(data.set, InfluenceAxis::kUnit);
    benchmark::DoNotOptimize(tensor.edges().data());
  }
}
BENCHMARK(BM_InfluenceTensor)->Arg(5)->Arg(10);

void BM_GmmFit(benchmark::State& state) {
  Rng rng(7);
  std::vector<AttributeVector> data(500, AttributeVector(8));
  for (auto& row : data) {
    const double center = rng.uniform() < 0.5 ? 0.2 : 0.8;
    for (double& v : row) v = rng.normal(center, 0.1);
  }
  for (auto _ : state) {
    const StyleModel model =
        fit_gmm(data, static_cast<std::size_t>(state.range(0)), 11);
    benchmark::DoNotOptimize(model.weights.data());
  }
}
BENCHMARK(BM_GmmFit)->Arg(4)->Arg(8);

void BM_VarFit(benchmark::State& state) {
  std::vector<std::vector<double>> group;
  for (std::uint64_t i = 0; i < 8; ++i) group.push_back(ar1_series(200, i));
  for (auto _ : state) {
    const VarModel vm = fit_var(group, 8);
    benchmark::DoNotOptimize(vm.coef.data());
  }
}
BENCHMARK(BM_VarFit);

void BM_CoherentTraining(benchmark::State& state) {
  SynthConfig cfg;
  cfg.units = 3;
  cfg.styles = 2;
  cfg.length = 120;
  cfg.seed = 5;
  PlantedEdge e;
  e.src = 0;
  e.dst = 1;
  e.lag = 2;
  e.coef = 0.8;
  cfg.edges = {e};
  const SynthData data = generate(cfg);
  TrainConfig tc;
  tc.own_lags = 4;
  tc.hidden = 8;
  tc.patience = static_cast<int>(state.range(0));
  tc.max_epochs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const CoherentBank bank = train_coherent(data.set, &data.unit_truth, tc);
    benchmark::DoNotOptimize(bank.nets.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CoherentTraining)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
