// Copyright 2026 The urate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <benchmark/benchmark.h>

#include "urate/combinatorics.h"
#include "urate/erm.h"
#include "urate/sequence_design.h"

namespace urate {
namespace {

void BM_SampleCountsFixture(benchmark::State& state) {
  const LabeledDistribution d = FiniteFixtureDistribution();
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SampleCounts(d, state.range(0), rng));
  }
}
BENCHMARK(BM_SampleCountsFixture)->Range(8, 1 << 30);

void BM_SampleCountsGeometric(benchmark::State& state) {
  const LabeledDistribution d = Example5Distribution();
  std::mt19937_64 rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SampleCounts(d, state.range(0), rng));
  }
}
BENCHMARK(BM_SampleCountsGeometric)->Range(8, 1 << 20);

void BM_ErmSelectThresholds(benchmark::State& state) {
  const ConceptClass c = MakeBuiltin(ClassKind::kThresholds);
  const LabeledDistribution d = ThresholdsBenignDistribution();
  const ErmEngine engine(c.Enumerate(state.range(0)), d);
  std::mt19937_64 rng(2);
  const std::vector<CountCell> cells = SampleCounts(d, 1000, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.Select(cells, TiePolicy::kAdversarialWorst, rng));
  }
}
BENCHMARK(BM_ErmSelectThresholds)->Range(8, 512);

void BM_FindVcEluder(benchmark::State& state) {
  ClassParams p;
  p.max_block = 8;
  const ConceptClass c = MakeBuiltin(ClassKind::kPowersetUnion, p);
  SearchBudget budget;
  budget.max_prefix = 511;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        FindVcEluder(c, ConstantHypothesis(0), state.range(0), budget));
  }
}
BENCHMARK(BM_FindVcEluder)->DenseRange(1, 5);

void BM_DesignSequence(benchmark::State& state) {
  const RateFunction r = RateFunction::InverseLog();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        DesignSequence(r, static_cast<int>(state.range(0)), DesignMode::kEluder));
  }
}
BENCHMARK(BM_DesignSequence)->DenseRange(2, 10, 4);

}  // namespace
}  // namespace urate

BENCHMARK_MAIN();
