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

#ifndef LEAKPRICE_DISCRETIZE_H_
#define LEAKPRICE_DISCRETIZE_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace leakprice {

enum class BinStrategy {
  kEqualWidth,
  kEqualFrequency,
  kExplicitEdges,
};

std::string_view BinStrategyName(BinStrategy strategy);
// Accepts "equal-width", "equal-frequency", "explicit-edges".
BinStrategy ParseBinStrategy(std::string_view name);

// How a continuous channel is cut into cells. `bin_count` is used by the
// equal-width and equal-frequency strategies, `edges` by explicit-edges.
struct BinSpec {
  BinStrategy strategy = BinStrategy::kEqualFrequency;
  std::size_t bin_count = 1;
  std::vector<double> edges;

  static BinSpec EqualWidth(std::size_t bins);
  static BinSpec EqualFrequency(std::size_t bins);
  static BinSpec Explicit(std::vector<double> edges);
};

// Throws kInvalidBinSpec unless bin_count >= 1 (count strategies) or the edges
// are finite, strictly increasing and at least two (explicit).
void ValidateBinSpec(const BinSpec& spec);

struct DiscretizeOptions {
  // When set, a constant column under a multi-bin count strategy is an error
  // (kConstantColumn) instead of a single-bin warning.
  bool require_multiple_bins = false;
};

struct Discretization {
  // One cell per input value, in [0, bin_count).
  std::vector<std::size_t> cells;
  // Realized edges, bin_count + 1 of them. Bin i is [edges[i], edges[i+1]),
  // except the last bin which is closed on the right. Equal-frequency bins
  // are the exception: a value equal to an interior edge goes to the lower
  // bin, since the edges are themselves order statistics.
  std::vector<double> edges;
  std::size_t bin_count = 0;
  bool constant_column = false;
  // Explicit-edge values outside [edges.front(), edges.back()], clamped.
  std::size_t clamped_count = 0;
  std::vector<std::string> warnings;
};

// Maps every value to exactly one bin. Equal-width spans [min, max];
// equal-frequency places interior edges at the order statistics
// x_(ceil(i*n/b)) and merges duplicate edges, so heavy ties can realize fewer
// than `bin_count` bins. Values must be finite and non-empty; bin_count may
// not exceed the number of values.
Discretization Discretize(std::span<const double> values, const BinSpec& spec,
                          const DiscretizeOptions& options = {});

}  // namespace leakprice

#endif  // LEAKPRICE_DISCRETIZE_H_
