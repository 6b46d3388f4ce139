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

#ifndef LEAKPRICE_INFOTHEORY_H_
#define LEAKPRICE_INFOTHEORY_H_

#include <compare>
#include <cstddef>
#include <numbers>
#include <span>

#include "leakprice/joint_table.h"

namespace leakprice {

inline constexpr double kNatsPerBit = std::numbers::ln2;

// Residues within kClampFloor of zero are rounding noise and become exactly
// zero; anything more negative is a kInternalConsistency error.
inline constexpr double kClampFloor = 1e-12;

// Maximum allowed disagreement between the two mutual information formulas.
inline constexpr double kDualFormTolerance = 1e-9;

// A nonnegative information quantity in bits.
class Bits {
 public:
  constexpr Bits() = default;
  // Values within kClampFloor of zero become exactly zero; throws
  // kInternalConsistency below -kClampFloor or on NaN.
  explicit Bits(double value);

  constexpr double value() const { return value_; }
  constexpr double nats() const { return value_ * kNatsPerBit; }

  friend constexpr auto operator<=>(Bits, Bits) = default;

 private:
  double value_ = 0.0;
};

// H(p) = -sum p log2 p, with 0 log 0 = 0. Throws kNotNormalized unless the
// vector is nonnegative and sums to 1 within kNormalizationTolerance.
Bits Entropy(std::span<const double> probabilities);

// H(S | X) = sum_x P(x) H(S | X = x).
Bits ConditionalEntropy(const JointTable& joint);

// Both algebraic routes to I(X;S), before clamping.
struct MutualInformationForms {
  double entropy_difference = 0.0;  // H(S) - H(S|X)
  double divergence_sum = 0.0;      // sum p(x,s) log2[p(x,s) / (p(x) p(s))]
};
MutualInformationForms ComputeMutualInformationForms(const JointTable& joint);

// I(X;S). Computes both forms, throws kInternalConsistency if they disagree by
// more than kDualFormTolerance, and returns the divergence-sum value.
Bits MutualInformation(const JointTable& joint);

// Merges feature cells: row x of the input is added into row merge_map[x] of
// the result, whose x_arity is max(merge_map) + 1. Throws kIncompleteMergeMap
// when merge_map does not cover every feature cell.
JointTable CoarsenChannel(const JointTable& joint,
                          std::span<const std::size_t> merge_map);

}  // namespace leakprice

#endif  // LEAKPRICE_INFOTHEORY_H_
