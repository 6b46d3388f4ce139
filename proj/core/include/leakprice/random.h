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

#ifndef LEAKPRICE_RANDOM_H_
#define LEAKPRICE_RANDOM_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace leakprice {

// Seed mixing and bounded draws with fully specified behaviour, so permuted
// nulls and generated fixtures are identical across standard libraries.
// (std::uniform_int_distribution and std::shuffle are implementation-defined.)

std::uint64_t SplitMix64(std::uint64_t x);

// FNV-1a over the bytes of `text`.
std::uint64_t HashName(std::string_view text);

// Stream seed for a named sub-computation of a run.
std::uint64_t DeriveSeed(std::uint64_t run_seed, std::string_view stream);

// Uniform integer in [0, bound) by rejection. `bound` must be positive.
std::uint64_t UniformBelow(std::mt19937_64& rng, std::uint64_t bound);

// Uniform double in [0, 1) with 53 random bits.
double UniformUnit(std::mt19937_64& rng);

template <typename T>
void Shuffle(std::span<T> values, std::mt19937_64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = UniformBelow(rng, i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace leakprice

#endif  // LEAKPRICE_RANDOM_H_
