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

#ifndef LEAKPRICE_REPORT_H_
#define LEAKPRICE_REPORT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "leakprice/estimation.h"
#include "leakprice/pricing.h"

namespace leakprice {

inline constexpr int kReportSchemaVersion = 1;
// Information quantities are serialized with this many decimals.
inline constexpr int kBitsDecimals = 9;

// Run provenance echoed in every report. Nothing time- or host-dependent.
struct RunMetadata {
  std::uint64_t seed = 0;
  std::string data_name;
  std::size_t rows_read = 0;
  std::size_t rows_rejected = 0;
  std::size_t profile_space_size = 0;
  std::vector<std::string> protected_dims;
};

struct LeakageReport {
  RunMetadata run;
  EstimatorConfig estimator;
  std::vector<LeakageEstimate> estimates;
  std::vector<ChannelFailure> failures;
};

// Rounds half to even at `decimals` places (on the scaled binary value).
double RoundHalfEven(double value, int decimals);

// JSON with a fixed key order and a "schema_version" field. Identical inputs
// give byte-identical output.
std::string SerializeLeakageReport(const LeakageReport& report);
std::string SerializeValuationReport(const ValuationReport& report,
                                     const RunMetadata& run);

// Fixed-width plain-text table. Channels whose surcharge is more than
// `flag_share` of their total price are marked.
std::string RenderAuditSummary(const ValuationReport& report,
                               const RunMetadata& run, double flag_share);

}  // namespace leakprice

#endif  // LEAKPRICE_REPORT_H_
