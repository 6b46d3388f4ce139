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

#ifndef LEAKPRICE_ESTIMATION_H_
#define LEAKPRICE_ESTIMATION_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leakprice/discretize.h"
#include "leakprice/infotheory.h"
#include "leakprice/joint_table.h"
#include "leakprice/records.h"
#include "leakprice/schema.h"

namespace leakprice {

enum class BiasCorrection {
  kNone,
  kMillerMadow,
};

std::string_view BiasCorrectionName(BiasCorrection mode);
// Accepts "none" and "miller-madow".
BiasCorrection ParseBiasCorrection(std::string_view name);

struct EstimatorConfig {
  BiasCorrection bias = BiasCorrection::kMillerMadow;
  std::size_t permutations = 200;
  // Percentile of the permutation null used as the zero floor, in (0, 100].
  double percentile = 95.0;
  std::size_t min_rows = 30;
  std::uint64_t seed = 0;
  bool require_multiple_bins = false;
  // Per-channel overrides of the schema's bin specs.
  std::map<std::string, BinSpec, std::less<>> bins;
};

// Throws kMalformedConfig on an out-of-range setting.
void ValidateEstimatorConfig(const EstimatorConfig& config);

// Cell assignment of one channel on the rows where it and every protected
// dimension are observed.
struct ChannelCells {
  std::vector<std::size_t> rows;           // retained row indices
  std::vector<std::size_t> feature_cells;  // one per retained row
  std::size_t feature_arity = 0;
  std::size_t dropped_rows = 0;
  std::vector<double> edges;  // realized bin edges, continuous channels only
  std::vector<std::string> warnings;
};

// Discretizes/encodes `channel` over the rows in `row_filter` (all rows when
// empty) that have no missing protected value and no missing channel value.
ChannelCells EncodeChannel(const RecordBatch& batch, std::size_t channel,
                           const AttributeSchema& schema,
                           const EstimatorConfig& config,
                           std::span<const std::size_t> row_filter = {});

// Flat profile index of `row`, or nullopt when any protected value is missing.
std::optional<std::uint64_t> ProfileIndexOf(const RecordBatch& batch,
                                            std::size_t row,
                                            const AttributeSchema& schema);

struct EmpiricalJoint {
  JointTable table;
  std::size_t sample_count = 0;
  std::size_t dropped_rows = 0;
  ChannelCells cells;
  std::vector<std::uint64_t> profile_cells;  // aligned with cells.rows
};

// Contingency table over (feature cell x profile cell), normalized. Throws
// kUnknownChannel, or kTooFewRows when fewer than config.min_rows rows remain
// after dropping incomplete ones.
EmpiricalJoint BuildEmpiricalJoint(const RecordBatch& batch,
                                   std::string_view channel,
                                   const AttributeSchema& schema,
                                   const EstimatorConfig& config);

// (K_x - 1)(K_s - 1) / (2 N ln 2), with K the occupied marginal cell counts.
double MillerMadowBias(const JointTable& joint, std::size_t sample_count);

// Plug-in mutual information with the configured bias correction, clamped at 0.
Bits CorrectedMutualInformation(const JointTable& joint, std::size_t sample_count,
                                BiasCorrection bias);

struct LeakageEstimate {
  std::string channel;
  Bits mi_plugin;
  Bits mi_corrected;
  Bits permutation_floor;
  // mi_corrected when it exceeds permutation_floor, else 0.
  Bits mi_reported;
  std::size_t sample_count = 0;
  std::size_t dropped_rows = 0;
  std::size_t bin_count_used = 0;
  std::size_t occupied_feature_cells = 0;
  std::size_t occupied_profile_cells = 0;
  BiasCorrection bias = BiasCorrection::kMillerMadow;
  std::size_t permutations = 0;
  double percentile = 95.0;
  std::uint64_t seed = 0;  // permutation stream seed actually used
  std::vector<double> edges;
  std::vector<std::string> warnings;
};

// A channel whose estimation failed; other channels are unaffected.
struct ChannelFailure {
  std::string channel;
  ErrorCode code;
  std::string message;
};

// Estimates I(X;S) for one channel. The permutation floor is the configured
// percentile (nearest rank) of plug-in MI over `permutations` shuffles of the
// channel column; the shuffle stream is seeded from config.seed and the
// channel name, so results do not depend on which other channels run.
LeakageEstimate EstimateLeakage(const RecordBatch& batch,
                                std::string_view channel,
                                const AttributeSchema& schema,
                                const EstimatorConfig& config);

}  // namespace leakprice

#endif  // LEAKPRICE_ESTIMATION_H_
