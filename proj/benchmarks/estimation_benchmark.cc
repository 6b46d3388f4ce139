// Copyright 2026 The leakprice Authors
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

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "leakprice/estimation.h"
#include "leakprice/random.h"
#include "leakprice/records.h"
#include "leakprice/schema.h"

namespace leakprice {
namespace {

struct Workload {
  AttributeSchema schema;
  RecordBatch batch;
};

// Three protected dimensions (24 profiles) and one dependent categorical
// channel.
Workload MakeWorkload(std::size_t rows) {
  AttributeSchema schema = AttributeSchema::Create(
      {{"a", {"0", "1", "2", "3"}}, {"b", {"0", "1", "2"}}, {"c", {"0", "1"}}},
      {{"x", ChannelKind::kCategorical, {"0", "1", "2", "3"}, std::nullopt}});
  std::mt19937_64 rng(4);
  std::vector<std::vector<std::int32_t>> dims(3);
  std::vector<std::int32_t> x;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto a = static_cast<std::int32_t>(UniformBelow(rng, 4));
    dims[0].push_back(a);
    dims[1].push_back(static_cast<std::int32_t>(UniformBelow(rng, 3)));
    dims[2].push_back(static_cast<std::int32_t>(UniformBelow(rng, 2)));
    x.push_back(UniformUnit(rng) < 0.7 ? a : static_cast<std::int32_t>(UniformBelow(rng, 4)));
  }
  RecordBatch batch = RecordBatch::Create(
      schema, dims, {CategoricalColumn{x, {"0", "1", "2", "3"}}});
  return {std::move(schema), std::move(batch)};
}

void BM_EstimateLeakage(benchmark::State& state) {
  const Workload w = MakeWorkload(static_cast<std::size_t>(state.range(0)));
  EstimatorConfig config;
  config.permutations = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(EstimateLeakage(w.batch, "x", w.schema, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * (state.range(1) + 1));
}
BENCHMARK(BM_EstimateLeakage)
    ->Args({10000, 0})
    ->Args({10000, 200})
    ->Args({100000, 200})
    ->Unit(benchmark::kMillisecond);

void BM_BuildEmpiricalJoint(benchmark::State& state) {
  const Workload w = MakeWorkload(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BuildEmpiricalJoint(w.batch, "x", w.schema, {}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildEmpiricalJoint)->Arg(10000)->Arg(100000);

}  // namespace
}  // namespace leakprice
