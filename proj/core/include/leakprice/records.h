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

#ifndef LEAKPRICE_RECORDS_H_
#define LEAKPRICE_RECORDS_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "leakprice/error.h"
#include "leakprice/schema.h"

namespace leakprice {

inline constexpr std::int32_t kMissingCode = -1;

// Level codes into `levels`; kMissingCode marks a missing value.
struct CategoricalColumn {
  std::vector<std::int32_t> codes;
  std::vector<std::string> levels;
};

// NaN marks a missing value.
struct ContinuousColumn {
  std::vector<double> values;
};

using ChannelColumn = std::variant<CategoricalColumn, ContinuousColumn>;

// Column-oriented raw records, aligned with a schema: one code column per
// protected dimension (codes index the schema's levels) and one column per
// feature channel, both in schema order. Immutable and freely shareable.
class RecordBatch {
 public:
  // Throws kShapeMismatch when column counts or lengths disagree with the
  // schema, kUnknownLevel when a code is outside its dimension or a
  // categorical column's kind does not match.
  static RecordBatch Create(const AttributeSchema& schema,
                            std::vector<std::vector<std::int32_t>> protected_codes,
                            std::vector<ChannelColumn> channels);

  std::size_t row_count() const { return row_count_; }
  const std::vector<std::int32_t>& protected_codes(std::size_t dim) const {
    return protected_[dim];
  }
  const ChannelColumn& channel(std::size_t index) const {
    return channels_[index];
  }

 private:
  RecordBatch() = default;

  std::size_t row_count_ = 0;
  std::vector<std::vector<std::int32_t>> protected_;
  std::vector<ChannelColumn> channels_;
};

// A validation problem found while ingesting records.
struct Issue {
  ErrorCode code;
  std::string message;
  std::string column;
  std::optional<std::size_t> row;  // zero-based data row (header excluded)
};

struct LoadResult {
  RecordBatch batch;
  // Rows with any issue are excluded from `batch`.
  std::vector<Issue> issues;
  std::size_t rows_read = 0;
  std::size_t rows_rejected = 0;
};

// Parses CSV text with a header row (RFC 4180 quoting, UTF-8, empty field =
// missing). Header names are matched against the schema; extra columns are
// ignored. A missing schema column is a fatal kSchemaColumnMissing issue and
// yields an empty batch. Categorical channels without declared levels get
// their levels from the data, sorted bytewise.
LoadResult ParseRecordsCsv(std::string_view text, const AttributeSchema& schema);
LoadResult LoadRecordsCsv(const std::filesystem::path& path,
                          const AttributeSchema& schema);

// Splits CSV text into rows of fields. Throws kMalformedCsv on an unterminated
// quote.
std::vector<std::vector<std::string>> SplitCsv(std::string_view text);

}  // namespace leakprice

#endif  // LEAKPRICE_RECORDS_H_
