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

#ifndef LEAKPRICE_TOOLS_LEAKPRICE_COMMANDS_H_
#define LEAKPRICE_TOOLS_LEAKPRICE_COMMANDS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leakprice/error.h"
#include "leakprice/estimation.h"

namespace leakprice::cli {

// Process exit codes. Stable across versions.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitEstimation = 4;
inline constexpr int kExitInternal = 5;

int ExitCodeFor(ErrorClass error_class);
int ExitCodeFor(ErrorCode code);

inline constexpr std::string_view kLeakageReportName = "leakage_report.json";
inline constexpr std::string_view kValuationReportName = "valuation_report.json";
inline constexpr std::string_view kAuditSummaryName = "audit_summary.txt";

using EstimateFn = std::function<LeakageEstimate(
    const RecordBatch&, std::string_view, const AttributeSchema&,
    const EstimatorConfig&)>;

struct CommandOptions {
  std::filesystem::path config_path;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  // Replaces EstimateLeakage; used by tests to inject faults.
  EstimateFn estimate;
};

// Each command reads the run config, does its work and returns an exit code.
// Machine-readable output goes to `out`, diagnostics to `err`. On failure no
// output files are left behind.
int RunValidate(const CommandOptions& options, std::ostream& out, std::ostream& err);
int RunEstimate(const CommandOptions& options, std::ostream& out, std::ostream& err);
int RunPrice(const CommandOptions& options, std::ostream& out, std::ostream& err);
int RunAudit(const CommandOptions& options, std::ostream& out, std::ostream& err);

// Writes every (path, contents) pair through a temporary file in the same
// directory and renames only once all temporaries are written. Creates the
// directory if needed. Throws kIoWriteFailed, leaving none of the targets
// partially written.
void WriteFilesAtomically(
    const std::vector<std::pair<std::filesystem::path, std::string>>& files);

}  // namespace leakprice::cli

#endif  // LEAKPRICE_TOOLS_LEAKPRICE_COMMANDS_H_
