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

#ifndef LEAKPRICE_PRICING_H_
#define LEAKPRICE_PRICING_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leakprice/estimation.h"
#include "leakprice/records.h"
#include "leakprice/schema.h"

namespace leakprice {

// Price of accessing a channel X: V(X) = fixed_cost + lambda * I(X;S).
struct PricePolicy {
  // Private marginal cost of producing or processing the datum.
  double fixed_cost = 0.0;
  // Currency per bit of leaked intersectional information.
  double lambda = 0.0;
  std::string currency = "EUR";
  // Decimal places used when serializing currency amounts.
  int rounding = 6;
};

// Throws kInvalidPolicy on negative or non-finite amounts, an empty currency
// code, or rounding outside [0, 12].
void ValidatePolicy(const PricePolicy& policy);
// Non-fatal remarks, e.g. lambda == 0 disables the surcharge.
std::vector<std::string> PolicyWarnings(const PricePolicy& policy);

struct ValuationEntry {
  std::string channel;
  double mi_bits = 0.0;
  double surcharge = 0.0;
  double total = 0.0;
};

ValuationEntry PriceChannel(const LeakageEstimate& leak, const PricePolicy& policy);

enum class BundleMode {
  kMarginal,
  kIncremental,
};

std::string_view BundleModeName(BundleMode mode);

// Data needed to price disclosures sequentially.
struct DisclosureContext {
  const RecordBatch& batch;
  const AttributeSchema& schema;
  EstimatorConfig estimator;
  std::vector<std::string> order;
};

struct IncrementalStep {
  std::size_t step = 0;  // one-based
  std::string channel;
  // Estimated I(X_k; S | X_1..X_{k-1}). Step 1 is the channel's own reported
  // leakage.
  double conditional_mi = 0.0;
  double surcharge = 0.0;
  double total = 0.0;
  double cumulative = 0.0;
  // Occupied cells of the concatenated feature (X_1..X_k).
  std::size_t joint_feature_cells = 0;
};

struct SweepTable {
  std::vector<double> lambdas;
  std::vector<std::string> channels;
  std::vector<std::vector<double>> totals;  // [lambda index][channel index]
  std::vector<double> bundle_totals;        // per lambda
};

struct ValuationReport {
  PricePolicy policy;
  BundleMode mode = BundleMode::kMarginal;
  // Marginal price of every channel, in the order supplied.
  std::vector<ValuationEntry> entries;
  // Sum of entry totals (marginal) or of step totals (incremental).
  double bundle_total = 0.0;
  std::vector<IncrementalStep> incremental;
  std::size_t incremental_sample_count = 0;
  std::optional<SweepTable> sweep;
  std::vector<LeakageEstimate> estimates;
  std::vector<ChannelFailure> failures;
  std::vector<std::string> warnings;
};

// Prices a set of channels. Incremental mode needs `context` with a
// disclosure order naming each leak's channel exactly once (kOrderMissing
// otherwise); it estimates each step's conditional leakage as the difference
// of bias-corrected plug-in MI between successive concatenated prefixes,
// computed on the rows complete in every ordered channel. Throws
// kProfileSpaceTooLarge when a prefix's joint feature space exceeds the
// schema's cell cap.
ValuationReport PriceBundle(std::span<const LeakageEstimate> leaks,
                            const PricePolicy& policy, BundleMode mode,
                            const DisclosureContext* context = nullptr);

// Totals fixed_cost + lambda * mi_reported for every grid point. Throws
// kEmptyGrid, kUnsortedGrid (not strictly increasing) or kInvalidPolicy
// (negative or non-finite entry).
SweepTable LambdaSweep(std::span<const LeakageEstimate> leaks, double fixed_cost,
                       std::span<const double> grid);

}  // namespace leakprice

#endif  // LEAKPRICE_PRICING_H_
