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
#include "varspect/contribution.hpp"
#include "varspect/spectral.hpp"

namespace {

using namespace varspect;

void CrossSpectrumGrid(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const VarModel model = testing::make_stable_model(k, m, 1, 0.7);
  const FrequencyGrid grid = make_grid(201, 0.5);
  for (auto _ : state) {
    CrossSpectrum cs = cross_spectrum(model, grid);
    benchmark::DoNotOptimize(cs.matrices.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(CrossSpectrumGrid)->Args({2, 1})->Args({4, 2})->Args({7, 5});

void ExtendedDecomposition(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const VarModel model = testing::make_stable_model(k, 2, 2, 0.7);
  const FrequencyGrid grid = make_grid(201, 0.5);
  for (auto _ : state) {
    ContributionDecomposition dec = extended_relative(model, grid);
    benchmark::DoNotOptimize(dec.total.data());
  }
}
BENCHMARK(ExtendedDecomposition)->Arg(2)->Arg(4)->Arg(7);

}  // namespace

BENCHMARK_MAIN();
