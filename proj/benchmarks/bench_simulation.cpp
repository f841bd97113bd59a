// Copyright 2026 The varspect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "support/test_models.hpp"
#include "varspect/simulation.hpp"

namespace {

using namespace varspect;

void SimulateSeries(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const VarModel model = testing::make_stable_model(k, 2, 5, 0.7);
  const NoiseScenario scenario = testing::scenario_from_covariance(model.noise_cov);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    MultivariateSeries sim = simulate(model, scenario, 1000, seed++);
    benchmark::DoNotOptimize(sim.values.data());
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(SimulateSeries)->Arg(2)->Arg(4)->Arg(7);

void MonteCarloStudy(benchmark::State& state) {
  const VarModel model = testing::make_stable_model(4, 1, 6, 0.6);
  const Eigen::VectorXd base = Eigen::VectorXd::Ones(4);
  const std::vector<NoiseScenario> scenarios = {NoiseScenario(4, base, {}),
                                                NoiseScenario(4, base, {{2, 1, 0.8}})};
  for (auto _ : state) {
    auto summaries = monte_carlo(model, scenarios, static_cast<int>(state.range(0)),
                                 1000, 42);
    benchmark::DoNotOptimize(summaries.data());
  }
}
BENCHMARK(MonteCarloStudy)->Arg(100)->Unit(benchmark::kMillisecond);

void StationaryCovariance(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const VarModel model = testing::make_stable_model(7, m, 7, 0.9);
  for (auto _ : state) {
    Eigen::MatrixXd cov = stationary_covariance(model, model.noise_cov);
    benchmark::DoNotOptimize(cov.data());
  }
}
BENCHMARK(StationaryCovariance)->Arg(1)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
