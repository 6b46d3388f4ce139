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

#include "leakprice/estimation.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <variant>

#include "leakprice/error.h"
#include "leakprice/random.h"

namespace leakprice {

std::string_view BiasCorrectionName(BiasCorrection mode) {
  return mode == BiasCorrection::kNone ? "none" : "miller-madow";
}

BiasCorrection ParseBiasCorrection(std::string_view name) {
  if (name == "none") return BiasCorrection::kNone;
  if (name == "miller-madow") return BiasCorrection::kMillerMadow;
  throw Error(ErrorCode::kMalformedConfig,
              "unknown bias correction '" + std::string(name) + "'");
}

void ValidateEstimatorConfig(const EstimatorConfig& config) {
  if (!(config.percentile > 0.0 && config.percentile <= 100.0)) {
    throw Error(ErrorCode::kMalformedConfig, "percentile must be in (0, 100]");
  }
  if (config.min_rows < 1) {
    throw Error(ErrorCode::kMalformedConfig, "min_rows must be at least 1");
  }
  for (const auto& [name, spec] : config.bins) ValidateBinSpec(spec);
}

std::optional<std::uint64_t> ProfileIndexOf(const RecordBatch& batch,
                                            std::size_t row,
                                            const AttributeSchema& schema) {
  std::uint64_t index = 0;
  for (std::size_t d = 0; d < schema.dimension_count(); ++d) {
    const std::int32_t code = batch.protected_codes(d)[row];
    if (code == kMissingCode) return std::nullopt;
    index = index * schema.dimension_cardinality(d) +
            static_cast<std::uint64_t>(code);
  }
  return index;
}

ChannelCells EncodeChannel(const RecordBatch& batch, std::size_t channel,
                           const AttributeSchema& schema,
                           const EstimatorConfig& config,
                           std::span<const std::size_t> row_filter) {
  const FeatureChannel& spec = schema.feature_channels().at(channel);
  const ChannelColumn& column = batch.channel(channel);

  std::vector<std::size_t> candidates;
  if (row_filter.empty()) {
    candidates.resize(batch.row_count());
    for (std::size_t r = 0; r < candidates.size(); ++r) candidates[r] = r;
  } else {
    candidates.assign(row_filter.begin(), row_filter.end());
  }

  ChannelCells out;
  for (std::size_t r : candidates) {
    if (!ProfileIndexOf(batch, r, schema)) continue;
    const bool missing = std::visit(
        [r](const auto& col) {
          using T = std::decay_t<decltype(col)>;
          if constexpr (std::is_same_v<T, CategoricalColumn>) {
            return col.codes[r] == kMissingCode;
          } else {
            return std::isnan(col.values[r]);
          }
        },
        column);
    if (!missing) out.rows.push_back(r);
  }
  out.dropped_rows = candidates.size() - out.rows.size();
  if (out.rows.size() < config.min_rows) {
    throw Error(ErrorCode::kTooFewRows,
                "channel '" + spec.name + "' has " +
                    std::to_string(out.rows.size()) +
                    " complete rows, minimum is " +
                    std::to_string(config.min_rows));
  }

  if (const auto* cat = std::get_if<CategoricalColumn>(&column)) {
    out.feature_arity = std::max<std::size_t>(1, cat->levels.size());
    out.feature_cells.reserve(out.rows.size());
    for (std::size_t r : out.rows) {
      out.feature_cells.push_back(static_cast<std::size_t>(cat->codes[r]));
    }
    return out;
  }

  const auto& values = std::get<ContinuousColumn>(column).values;
  std::vector<double> kept;
  kept.reserve(out.rows.size());
  for (std::size_t r : out.rows) kept.push_back(values[r]);

  BinSpec bins = spec.bins.value_or(BinSpec::EqualFrequency(4));
  if (auto it = config.bins.find(spec.name); it != config.bins.end()) {
    bins = it->second;
  }
  Discretization d =
      Discretize(kept, bins, {.require_multiple_bins = config.require_multiple_bins});
  out.feature_cells = std::move(d.cells);
  out.feature_arity = d.bin_count;
  out.edges = std::move(d.edges);
  out.warnings = std::move(d.warnings);
  return out;
}

EmpiricalJoint BuildEmpiricalJoint(const RecordBatch& batch,
                                   std::string_view channel,
                                   const AttributeSchema& schema,
                                   const EstimatorConfig& config) {
  const auto index = schema.FindChannel(channel);
  if (!index) {
    throw Error(ErrorCode::kUnknownChannel,
                "channel '" + std::string(channel) + "' is not in the schema");
  }
  ChannelCells cells = EncodeChannel(batch, *index, schema, config);
  std::vector<std::uint64_t> profiles;
  profiles.reserve(cells.rows.size());
  for (std::size_t r : cells.rows) {
    profiles.push_back(*ProfileIndexOf(batch, r, schema));
  }
  JointTable table = JointTable::FromObservations(
      cells.feature_arity, schema.profile_space_size(), cells.feature_cells,
      profiles);
  const std::size_t n = cells.rows.size();
  const std::size_t dropped = cells.dropped_rows;
  return {std::move(table), n, dropped, std::move(cells), std::move(profiles)};
}

namespace {

std::size_t Occupied(const std::vector<double>& marginal) {
  return static_cast<std::size_t>(
      std::count_if(marginal.begin(), marginal.end(), [](double p) { return p > 0.0; }));
}

}  // namespace

double MillerMadowBias(const JointTable& joint, std::size_t sample_count) {
  const double kx = static_cast<double>(Occupied(joint.XMarginal()));
  const double ks = static_cast<double>(Occupied(joint.SMarginal()));
  return (kx - 1.0) * (ks - 1.0) /
         (2.0 * static_cast<double>(sample_count) * kNatsPerBit);
}

Bits CorrectedMutualInformation(const JointTable& joint, std::size_t sample_count,
                                BiasCorrection bias) {
  const double plugin = MutualInformation(joint).value();
  if (bias == BiasCorrection::kNone) return Bits(plugin);
  return Bits(std::max(0.0, plugin - MillerMadowBias(joint, sample_count)));
}

LeakageEstimate EstimateLeakage(const RecordBatch& batch,
                                std::string_view channel,
                                const AttributeSchema& schema,
                                const EstimatorConfig& config) {
  ValidateEstimatorConfig(config);
  EmpiricalJoint joint = BuildEmpiricalJoint(batch, channel, schema, config);

  LeakageEstimate est;
  est.channel = std::string(channel);
  est.sample_count = joint.sample_count;
  est.dropped_rows = joint.dropped_rows;
  est.bin_count_used = joint.cells.feature_arity;
  est.occupied_feature_cells = Occupied(joint.table.XMarginal());
  est.occupied_profile_cells = Occupied(joint.table.SMarginal());
  est.bias = config.bias;
  est.permutations = config.permutations;
  est.percentile = config.percentile;
  est.seed = DeriveSeed(config.seed, channel);
  est.edges = std::move(joint.cells.edges);
  est.warnings = std::move(joint.cells.warnings);

  est.mi_plugin = MutualInformation(joint.table);
  est.mi_corrected =
      CorrectedMutualInformation(joint.table, joint.sample_count, config.bias);

  if (config.permutations > 0) {
    std::mt19937_64 rng(est.seed);
    std::vector<std::size_t> shuffled = joint.cells.feature_cells;
    std::vector<double> null_mi;
    null_mi.reserve(config.permutations);
    for (std::size_t p = 0; p < config.permutations; ++p) {
      Shuffle(std::span<std::size_t>(shuffled), rng);
      const JointTable permuted = JointTable::FromObservations(
          joint.cells.feature_arity, schema.profile_space_size(), shuffled,
          joint.profile_cells);
      null_mi.push_back(MutualInformation(permuted).value());
    }
    std::sort(null_mi.begin(), null_mi.end());
    // Nearest rank; multiply first so 95% of 200 is exactly 190.
    const auto rank = static_cast<std::size_t>(std::ceil(
        config.percentile * static_cast<double>(null_mi.size()) / 100.0 - 1e-9));
    est.permutation_floor = Bits(null_mi[std::max<std::size_t>(rank, 1) - 1]);
  }

  est.mi_reported = est.mi_corrected > est.permutation_floor ? est.mi_corrected
                                                             : Bits(0.0);
  return est;
}

}  // namespace leakprice
