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

#include "leakprice/infotheory.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "leakprice/error.h"

namespace leakprice {

Bits::Bits(double value) : value_(value) {
  if (std::isnan(value) || value < -kClampFloor) {
    throw Error(ErrorCode::kInternalConsistency,
                "information quantity " + std::to_string(value) +
                    " bits is negative beyond rounding noise");
  }
  if (std::abs(value_) <= kClampFloor) value_ = 0.0;
}

Bits Entropy(std::span<const double> probabilities) {
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::kNotNormalized,
                  "probability vector has a negative or non-finite entry");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::kNotNormalized,
                "probability vector sums to " + std::to_string(total));
  }
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return Bits(h);
}

namespace {

double RawConditionalEntropy(const JointTable& joint,
                             const std::vector<double>& x_marginal) {
  double h = 0.0;
  joint.ForEachNonzero([&](std::size_t x, std::size_t, double m) {
    h -= m * std::log2(m / x_marginal[x]);
  });
  return h;
}

}  // namespace

Bits ConditionalEntropy(const JointTable& joint) {
  return Bits(RawConditionalEntropy(joint, joint.XMarginal()));
}

MutualInformationForms ComputeMutualInformationForms(const JointTable& joint) {
  const std::vector<double> px = joint.XMarginal();
  const std::vector<double> ps = joint.SMarginal();

  double hs = 0.0;
  for (double p : ps) {
    if (p > 0.0) hs -= p * std::log2(p);
  }

  MutualInformationForms forms;
  forms.entropy_difference = hs - RawConditionalEntropy(joint, px);
  double kl = 0.0;
  joint.ForEachNonzero([&](std::size_t x, std::size_t s, double m) {
    kl += m * std::log2(m / (px[x] * ps[s]));
  });
  forms.divergence_sum = kl;
  return forms;
}

Bits MutualInformation(const JointTable& joint) {
  const MutualInformationForms forms = ComputeMutualInformationForms(joint);
  if (std::abs(forms.entropy_difference - forms.divergence_sum) >
      kDualFormTolerance) {
    throw Error(ErrorCode::kInternalConsistency,
                "mutual information forms disagree: " +
                    std::to_string(forms.entropy_difference) + " vs " +
                    std::to_string(forms.divergence_sum));
  }
  return Bits(forms.divergence_sum);
}

JointTable CoarsenChannel(const JointTable& joint,
                          std::span<const std::size_t> merge_map) {
  if (merge_map.size() != joint.x_arity()) {
    throw Error(ErrorCode::kIncompleteMergeMap,
                "merge map covers " + std::to_string(merge_map.size()) +
                    " of " + std::to_string(joint.x_arity()) +
                    " feature cells");
  }
  const std::size_t arity =
      *std::max_element(merge_map.begin(), merge_map.end()) + 1;
  std::vector<JointTable::Entry> merged;
  merged.reserve(joint.nonzero_count());
  joint.ForEachNonzero([&](std::size_t x, std::size_t s, double m) {
    merged.push_back({merge_map[x], s, m});
  });
  return JointTable::FromEntries(arity, joint.s_arity(), std::move(merged));
}

}  // namespace leakprice
