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

#include <map>

#include "support/test_models.hpp"
#include "varspect/var_model.hpp"

namespace {

using namespace varspect;

const MultivariateSeries& sample_series(int k) {
  static std::map<int, MultivariateSeries> cache;
  auto it = cache.find(k);
  if (it == cache.end()) {
    const VarModel truth = testing::make_stable_model(k, 2, 3, 0.7);
    it = cache.emplace(k, demean(testing::simulate_model(truth, 5000, 4))).first;
  }
  return it->second;
}

void FitLeastSquares(benchmark::State& state) {
  const MultivariateSeries& series = sample_series(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    VarModel model = fit_least_squares(series, 2);
    benchmark::DoNotOptimize(model.noise_cov.data());
  }
}
BENCHMARK(FitLeastSquares)->Arg(2)->Arg(4)->Arg(7);

void FitYuleWalker(benchmark::State& state) {
  const MultivariateSeries& series = sample_series(static_cast<int>(state.range(0)));
  const auto cov = sample_autocovariance(series, 2);
  for (auto _ : state) {
    VarModel model = fit_yule_walker(cov, 2, series.names);
    benchmark::DoNotOptimize(model.noise_cov.data());
  }
}
BENCHMARK(FitYuleWalker)->Arg(2)->Arg(4)->Arg(7);

void SelectOrderAic(benchmark::State& state) {
  const MultivariateSeries& series = sample_series(3);
  for (auto _ : state) {
    OrderSelection sel = select_order_aic(series, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(sel.best_order);
  }
}
BENCHMARK(SelectOrderAic)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
