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
#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "leakprice/discretize.h"
#include "leakprice/infotheory.h"
#include "leakprice/joint_table.h"
#include "leakprice/random.h"

namespace leakprice {
namespace {

JointTable RandomTable(std::size_t nx, std::size_t ns, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> weights(nx * ns);
  for (double& w : weights) w = UniformUnit(rng);
  return JointTable::FromWeights(nx, ns, weights);
}

void BM_MutualInformationDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const JointTable table = RandomTable(n, n, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MutualInformation(table));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_MutualInformationDense)->Arg(4)->Arg(16)->Arg(64);

void BM_MutualInformationSparse(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::vector<JointTable::Entry> entries;
  for (std::size_t i = 0; i < 4 * n; ++i) {
    entries.push_back({UniformBelow(rng, n), UniformBelow(rng, n), 1.0});
  }
  const JointTable table = JointTable::FromEntries(n, n, entries);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MutualInformation(table));
  }
}
BENCHMARK(BM_MutualInformationSparse)->Arg(1000)->Arg(10000);

void BM_Discretize(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto strategy = static_cast<BinStrategy>(state.range(1));
  std::mt19937_64 rng(3);
  std::vector<double> values(n);
  for (double& v : values) v = 24.0 * UniformUnit(rng);
  const BinSpec spec = strategy == BinStrategy::kEqualWidth ? BinSpec::EqualWidth(8)
                                                            : BinSpec::EqualFrequency(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Discretize(values, spec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Discretize)
    ->Args({10000, static_cast<int>(BinStrategy::kEqualWidth)})
    ->Args({10000, static_cast<int>(BinStrategy::kEqualFrequency)})
    ->Args({100000, static_cast<int>(BinStrategy::kEqualFrequency)});

}  // namespace
}  // namespace leakprice
