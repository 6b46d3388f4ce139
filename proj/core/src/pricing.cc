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

#include "leakprice/pricing.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>

#include "leakprice/error.h"
#include "leakprice/infotheory.h"
#include "leakprice/joint_table.h"

namespace leakprice {

void ValidatePolicy(const PricePolicy& policy) {
  if (!std::isfinite(policy.fixed_cost) || policy.fixed_cost < 0.0) {
    throw Error(ErrorCode::kInvalidPolicy, "c_p must be a nonnegative amount");
  }
  if (!std::isfinite(policy.lambda) || policy.lambda < 0.0) {
    throw Error(ErrorCode::kInvalidPolicy, "lambda must be nonnegative");
  }
  if (policy.currency.empty()) {
    throw Error(ErrorCode::kInvalidPolicy, "currency code is empty");
  }
  if (policy.rounding < 0 || policy.rounding > 12) {
    throw Error(ErrorCode::kInvalidPolicy, "rounding must be within [0, 12]");
  }
}

std::vector<std::string> PolicyWarnings(const PricePolicy& policy) {
  std::vector<std::string> warnings;
  if (policy.lambda == 0.0) {
    warnings.push_back("lambda is 0: the privacy surcharge is disabled");
  }
  return warnings;
}

std::string_view BundleModeName(BundleMode mode) {
  return mode == BundleMode::kMarginal ? "marginal" : "incremental";
}

ValuationEntry PriceChannel(const LeakageEstimate& leak,
                            const PricePolicy& policy) {
  ValuationEntry entry;
  entry.channel = leak.channel;
  entry.mi_bits = leak.mi_reported.value();
  entry.surcharge = policy.lambda * entry.mi_bits;
  entry.total = policy.fixed_cost + entry.surcharge;
  return entry;
}

namespace {

std::vector<IncrementalStep> PriceSequence(
    std::span<const LeakageEstimate> leaks, const PricePolicy& policy,
    const DisclosureContext& context, std::size_t* sample_count) {
  const auto& order = context.order;
  if (order.empty()) {
    throw Error(ErrorCode::kOrderMissing,
                "incremental pricing needs a disclosure order");
  }
  std::set<std::string_view> ordered(order.begin(), order.end());
  std::set<std::string_view> priced;
  for (const auto& leak : leaks) priced.insert(leak.channel);
  if (ordered.size() != order.size() || ordered != priced) {
    throw Error(ErrorCode::kOrderMissing,
                "disclosure order must list every priced channel exactly once");
  }

  const AttributeSchema& schema = context.schema;
  std::vector<std::size_t> indices;
  for (const auto& name : order) {
    const auto index = schema.FindChannel(name);
    if (!index) {
      throw Error(ErrorCode::kUnknownChannel,
                  "channel '" + name + "' is not in the schema");
    }
    indices.push_back(*index);
  }

  // Rows observed in every ordered channel and every protected dimension.
  std::vector<std::size_t> rows;
  for (std::size_t index : indices) {
    rows = EncodeChannel(context.batch, index, schema, context.estimator, rows).rows;
  }
  std::vector<ChannelCells> encoded;
  for (std::size_t index : indices) {
    encoded.push_back(
        EncodeChannel(context.batch, index, schema, context.estimator, rows));
  }
  std::vector<std::uint64_t> profiles;
  profiles.reserve(rows.size());
  for (std::size_t r : rows) {
    profiles.push_back(*ProfileIndexOf(context.batch, r, schema));
  }
  *sample_count = rows.size();

  std::vector<IncrementalStep> steps;
  std::vector<std::size_t> prefix_cells(rows.size(), 0);
  std::uint64_t prefix_arity = 1;
  double previous_mi = 0.0;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const ChannelCells& cells = encoded[k];
    if (prefix_arity > schema.cell_cap() / cells.feature_arity) {
      throw Error(ErrorCode::kProfileSpaceTooLarge,
                  "joint feature space of the first " + std::to_string(k + 1) +
                      " disclosures exceeds the cap of " +
                      std::to_string(schema.cell_cap()) + " cells");
    }
    prefix_arity *= cells.feature_arity;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      prefix_cells[i] = prefix_cells[i] * cells.feature_arity + cells.feature_cells[i];
    }
    const JointTable joint = JointTable::FromObservations(
        static_cast<std::size_t>(prefix_arity), schema.profile_space_size(),
        prefix_cells, profiles);
    const double prefix_mi =
        CorrectedMutualInformation(joint, rows.size(), context.estimator.bias)
            .value();

    IncrementalStep step;
    step.step = k + 1;
    step.channel = order[k];
    if (k == 0) {
      const auto leak = std::find_if(leaks.begin(), leaks.end(), [&](const auto& l) {
        return l.channel == order[0];
      });
      step.conditional_mi = leak->mi_reported.value();
    } else {
      step.conditional_mi = std::max(0.0, prefix_mi - previous_mi);
    }
    step.surcharge = policy.lambda * step.conditional_mi;
    step.total = policy.fixed_cost + step.surcharge;
    cumulative += step.total;
    step.cumulative = cumulative;
    std::size_t occupied = 0;
    for (double p : joint.XMarginal()) occupied += p > 0.0 ? 1 : 0;
    step.joint_feature_cells = occupied;
    steps.push_back(std::move(step));
    previous_mi = prefix_mi;
  }
  return steps;
}

}  // namespace

ValuationReport PriceBundle(std::span<const LeakageEstimate> leaks,
                            const PricePolicy& policy, BundleMode mode,
                            const DisclosureContext* context) {
  ValidatePolicy(policy);
  ValuationReport report;
  report.policy = policy;
  report.mode = mode;
  report.warnings = PolicyWarnings(policy);
  report.estimates.assign(leaks.begin(), leaks.end());
  for (const auto& leak : leaks) {
    report.entries.push_back(PriceChannel(leak, policy));
  }
  if (mode == BundleMode::kMarginal) {
    for (const auto& entry : report.entries) report.bundle_total += entry.total;
    return report;
  }
  if (context == nullptr) {
    throw Error(ErrorCode::kOrderMissing,
                "incremental pricing needs records and a disclosure order");
  }
  report.incremental =
      PriceSequence(leaks, policy, *context, &report.incremental_sample_count);
  report.bundle_total =
      report.incremental.empty() ? 0.0 : report.incremental.back().cumulative;
  return report;
}

SweepTable LambdaSweep(std::span<const LeakageEstimate> leaks, double fixed_cost,
                       std::span<const double> grid) {
  if (grid.empty()) {
    throw Error(ErrorCode::kEmptyGrid, "lambda grid is empty");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) {
      throw Error(ErrorCode::kInvalidPolicy, "lambda grid values must be nonnegative");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::kUnsortedGrid, "lambda grid must be strictly increasing");
    }
  }
  if (!std::isfinite(fixed_cost) || fixed_cost < 0.0) {
    throw Error(ErrorCode::kInvalidPolicy, "c_p must be a nonnegative amount");
  }
  SweepTable table;
  table.lambdas.assign(grid.begin(), grid.end());
  for (const auto& leak : leaks) table.channels.push_back(leak.channel);
  for (double lambda : grid) {
    std::vector<double> row;
    double bundle = 0.0;
    for (const auto& leak : leaks) {
      row.push_back(fixed_cost + lambda * leak.mi_reported.value());
      bundle += row.back();
    }
    table.totals.push_back(std::move(row));
    table.bundle_totals.push_back(bundle);
  }
  return table;
}

}  // namespace leakprice
