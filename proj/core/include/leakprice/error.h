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

#ifndef LEAKPRICE_ERROR_H_
#define LEAKPRICE_ERROR_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace leakprice {

// Stable error codes. The string form (ErrorCodeName) is part of the CLI's
// machine-readable contract and must not change between releases.
enum class ErrorCode {
  kDuplicateName,
  kEmptyDimension,
  kProfileSpaceTooLarge,
  kCoordinateOutOfRange,
  kNegativeMass,
  kAllZero,
  kNotNormalized,
  kShapeMismatch,
  kIncompleteMergeMap,
  kInvalidBinSpec,
  kConstantColumn,
  kTooFewRows,
  kUnknownChannel,
  kSchemaColumnMissing,
  kUnknownLevel,
  kBadNumber,
  kMalformedCsv,
  kMalformedSchema,
  kMalformedConfig,
  kOrderMissing,
  kEmptyGrid,
  kUnsortedGrid,
  kInvalidPolicy,
  kIoReadFailed,
  kIoWriteFailed,
  kInternalConsistency,
};

// Coarse failure classes; each maps to one process exit code.
enum class ErrorClass {
  kValidation,
  kIo,
  kEstimation,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);
ErrorClass ClassOf(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> row = std::nullopt)
      : std::runtime_error(message), code_(code), row_(row) {}

  ErrorCode code() const { return code_; }
  // Zero-based data-row index when the failure is attributable to one record.
  std::optional<std::size_t> row() const { return row_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> row_;
};

}  // namespace leakprice

#endif  // LEAKPRICE_ERROR_H_
