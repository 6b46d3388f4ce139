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

#include "leakprice/error.h"

namespace leakprice {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateName: return "DUPLICATE_NAME";
    case ErrorCode::kEmptyDimension: return "EMPTY_DIMENSION";
    case ErrorCode::kProfileSpaceTooLarge: return "PROFILE_SPACE_TOO_LARGE";
    case ErrorCode::kCoordinateOutOfRange: return "COORDINATE_OUT_OF_RANGE";
    case ErrorCode::kNegativeMass: return "NEGATIVE_MASS";
    case ErrorCode::kAllZero: return "ALL_ZERO";
    case ErrorCode::kNotNormalized: return "NOT_NORMALIZED";
    case ErrorCode::kShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::kIncompleteMergeMap: return "INCOMPLETE_MERGE_MAP";
    case ErrorCode::kInvalidBinSpec: return "INVALID_BIN_SPEC";
    case ErrorCode::kConstantColumn: return "CONSTANT_COLUMN";
    case ErrorCode::kTooFewRows: return "TOO_FEW_ROWS";
    case ErrorCode::kUnknownChannel: return "UNKNOWN_CHANNEL";
    case ErrorCode::kSchemaColumnMissing: return "SCHEMA_COLUMN_MISSING";
    case ErrorCode::kUnknownLevel: return "UNKNOWN_LEVEL";
    case ErrorCode::kBadNumber: return "BAD_NUMBER";
    case ErrorCode::kMalformedCsv: return "MALFORMED_CSV";
    case ErrorCode::kMalformedSchema: return "MALFORMED_SCHEMA";
    case ErrorCode::kMalformedConfig: return "MALFORMED_CONFIG";
    case ErrorCode::kOrderMissing: return "ORDER_MISSING";
    case ErrorCode::kEmptyGrid: return "EMPTY_GRID";
    case ErrorCode::kUnsortedGrid: return "UNSORTED_GRID";
    case ErrorCode::kInvalidPolicy: return "INVALID_POLICY";
    case ErrorCode::kIoReadFailed: return "IO_READ_FAILED";
    case ErrorCode::kIoWriteFailed: return "IO_WRITE_FAILED";
    case ErrorCode::kInternalConsistency: return "INTERNAL_CONSISTENCY";
  }
  return "UNKNOWN";
}

ErrorClass ClassOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIoReadFailed:
    case ErrorCode::kIoWriteFailed:
      return ErrorClass::kIo;
    case ErrorCode::kTooFewRows:
    case ErrorCode::kConstantColumn:
      return ErrorClass::kEstimation;
    case ErrorCode::kInternalConsistency:
      return ErrorClass::kInternal;
    default:
      return ErrorClass::kValidation;
  }
}

}  // namespace leakprice
