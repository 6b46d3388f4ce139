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

#include "leakprice/records.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <utility>

#include "text_file.h"

namespace leakprice {

RecordBatch RecordBatch::Create(
    const AttributeSchema& schema,
    std::vector<std::vector<std::int32_t>> protected_codes,
    std::vector<ChannelColumn> channels) {
  if (protected_codes.size() != schema.dimension_count() ||
      channels.size() != schema.feature_channels().size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "record columns do not match the schema");
  }
  const std::size_t rows = protected_codes.front().size();
  for (std::size_t d = 0; d < protected_codes.size(); ++d) {
    if (protected_codes[d].size() != rows) {
      throw Error(ErrorCode::kShapeMismatch, "protected columns differ in length");
    }
    const auto card = static_cast<std::int32_t>(schema.dimension_cardinality(d));
    for (std::size_t r = 0; r < rows; ++r) {
      const std::int32_t code = protected_codes[d][r];
      if (code != kMissingCode && (code < 0 || code >= card)) {
        throw Error(ErrorCode::kUnknownLevel,
                    "code " + std::to_string(code) + " outside dimension '" +
                        schema.protected_dims()[d].name + "'",
                    r);
      }
    }
  }
  for (std::size_t c = 0; c < channels.size(); ++c) {
    const FeatureChannel& spec = schema.feature_channels()[c];
    if (const auto* cat = std::get_if<CategoricalColumn>(&channels[c])) {
      if (spec.kind != ChannelKind::kCategorical) {
        throw Error(ErrorCode::kShapeMismatch,
                    "channel '" + spec.name + "' should be continuous");
      }
      if (cat->codes.size() != rows) {
        throw Error(ErrorCode::kShapeMismatch, "channel columns differ in length");
      }
      const auto card = static_cast<std::int32_t>(cat->levels.size());
      for (std::size_t r = 0; r < rows; ++r) {
        const std::int32_t code = cat->codes[r];
        if (code != kMissingCode && (code < 0 || code >= card)) {
          throw Error(ErrorCode::kUnknownLevel,
                      "code outside channel '" + spec.name + "'", r);
        }
      }
    } else {
      const auto& cont = std::get<ContinuousColumn>(channels[c]);
      if (spec.kind != ChannelKind::kContinuous) {
        throw Error(ErrorCode::kShapeMismatch,
                    "channel '" + spec.name + "' should be categorical");
      }
      if (cont.values.size() != rows) {
        throw Error(ErrorCode::kShapeMismatch, "channel columns differ in length");
      }
    }
  }
  RecordBatch batch;
  batch.row_count_ = rows;
  batch.protected_ = std::move(protected_codes);
  batch.channels_ = std::move(channels);
  return batch;
}

std::vector<std::vector<std::string>> SplitCsv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    // Blank lines carry no record.
    if (!(row.size() == 1 && row.front().empty())) rows.push_back(std::move(row));
    row.clear();
  };

  // Skip a UTF-8 byte-order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.empty()) {
          throw Error(ErrorCode::kMalformedCsv,
                      "quote inside an unquoted field", rows.size());
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_row();
        break;
      case '\n':
        end_row();
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) {
    throw Error(ErrorCode::kMalformedCsv, "unterminated quoted field");
  }
  if (field_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

namespace {

std::optional<double> ParseReal(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && *(last - 1) == ' ') --last;
  if (first < last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

// Column position in the CSV for every schema column.
struct ColumnMap {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> channels;
};

LoadResult EmptyResult(const AttributeSchema& schema, std::vector<Issue> issues) {
  std::vector<std::vector<std::int32_t>> dims(schema.dimension_count());
  std::vector<ChannelColumn> channels;
  for (const auto& channel : schema.feature_channels()) {
    if (channel.kind == ChannelKind::kCategorical) {
      channels.emplace_back(CategoricalColumn{{}, channel.levels});
    } else {
      channels.emplace_back(ContinuousColumn{});
    }
  }
  return {RecordBatch::Create(schema, std::move(dims), std::move(channels)),
          std::move(issues), 0, 0};
}

}  // namespace

LoadResult ParseRecordsCsv(std::string_view text, const AttributeSchema& schema) {
  const auto table = SplitCsv(text);
  std::vector<Issue> issues;
  if (table.empty()) {
    issues.push_back({ErrorCode::kMalformedCsv, "data has no header row", "", {}});
    return EmptyResult(schema, std::move(issues));
  }

  const auto& header = table.front();
  auto find_column = [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  ColumnMap map;
  for (const auto& dim : schema.protected_dims()) {
    if (auto pos = find_column(dim.name)) {
      map.dims.push_back(*pos);
    } else {
      issues.push_back({ErrorCode::kSchemaColumnMissing,
                        "protected dimension column '" + dim.name +
                            "' is missing from the data header",
                        dim.name, {}});
    }
  }
  for (const auto& channel : schema.feature_channels()) {
    if (auto pos = find_column(channel.name)) {
      map.channels.push_back(*pos);
    } else {
      issues.push_back({ErrorCode::kSchemaColumnMissing,
                        "feature channel column '" + channel.name +
                            "' is missing from the data header",
                        channel.name, {}});
    }
  }
  if (!issues.empty()) return EmptyResult(schema, std::move(issues));

  const std::size_t rows_read = table.size() - 1;
  const auto& channel_specs = schema.feature_channels();

  // Discovered levels for undeclared categorical channels, sorted bytewise.
  std::vector<std::vector<std::string>> channel_levels(channel_specs.size());
  for (std::size_t c = 0; c < channel_specs.size(); ++c) {
    const FeatureChannel& spec = channel_specs[c];
    if (spec.kind != ChannelKind::kCategorical) continue;
    if (!spec.levels.empty()) {
      channel_levels[c] = spec.levels;
      continue;
    }
    std::vector<std::string> seen;
    for (std::size_t r = 1; r < table.size(); ++r) {
      const auto& row = table[r];
      if (map.channels[c] < row.size() && !row[map.channels[c]].empty()) {
        seen.push_back(row[map.channels[c]]);
      }
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    channel_levels[c] = std::move(seen);
  }

  std::vector<std::vector<std::int32_t>> dims(schema.dimension_count());
  std::vector<std::vector<std::int32_t>> cat_codes(channel_specs.size());
  std::vector<std::vector<double>> reals(channel_specs.size());
  std::size_t rejected = 0;

  std::vector<std::int32_t> row_dims(schema.dimension_count());
  std::vector<std::int32_t> row_cats(channel_specs.size());
  std::vector<double> row_reals(channel_specs.size());

  for (std::size_t r = 1; r < table.size(); ++r) {
    const std::size_t data_row = r - 1;
    const auto& row = table[r];
    if (row.size() != header.size()) {
      issues.push_back({ErrorCode::kMalformedCsv,
                        "row has " + std::to_string(row.size()) +
                            " fields, header has " +
                            std::to_string(header.size()),
                        "", data_row});
      ++rejected;
      continue;
    }
    bool ok = true;
    for (std::size_t d = 0; d < schema.dimension_count(); ++d) {
      const std::string& value = row[map.dims[d]];
      if (value.empty()) {
        row_dims[d] = kMissingCode;
      } else if (auto level = schema.FindLevel(d, value)) {
        row_dims[d] = static_cast<std::int32_t>(*level);
      } else {
        const std::string& name = schema.protected_dims()[d].name;
        issues.push_back({ErrorCode::kUnknownLevel,
                          "value '" + value + "' is not a declared level of '" +
                              name + "'",
                          name, data_row});
        ok = false;
      }
    }
    for (std::size_t c = 0; c < channel_specs.size(); ++c) {
      const FeatureChannel& spec = channel_specs[c];
      const std::string& value = row[map.channels[c]];
      if (spec.kind == ChannelKind::kCategorical) {
        if (value.empty()) {
          row_cats[c] = kMissingCode;
          continue;
        }
        const auto& levels = channel_levels[c];
        const auto it = std::find(levels.begin(), levels.end(), value);
        if (it == levels.end()) {
          issues.push_back({ErrorCode::kUnknownLevel,
                            "value '" + value +
                                "' is not a declared level of '" + spec.name +
                                "'",
                            spec.name, data_row});
          ok = false;
        } else {
          row_cats[c] = static_cast<std::int32_t>(it - levels.begin());
        }
      } else {
        if (value.empty()) {
          row_reals[c] = std::numeric_limits<double>::quiet_NaN();
        } else if (auto real = ParseReal(value)) {
          row_reals[c] = *real;
        } else {
          issues.push_back({ErrorCode::kBadNumber,
                            "value '" + value + "' in '" + spec.name +
                                "' is not a finite number",
                            spec.name, data_row});
          ok = false;
        }
      }
    }
    if (!ok) {
      ++rejected;
      continue;
    }
    for (std::size_t d = 0; d < row_dims.size(); ++d) dims[d].push_back(row_dims[d]);
    for (std::size_t c = 0; c < channel_specs.size(); ++c) {
      if (channel_specs[c].kind == ChannelKind::kCategorical) {
        cat_codes[c].push_back(row_cats[c]);
      } else {
        reals[c].push_back(row_reals[c]);
      }
    }
  }

  std::vector<ChannelColumn> channels;
  for (std::size_t c = 0; c < channel_specs.size(); ++c) {
    if (channel_specs[c].kind == ChannelKind::kCategorical) {
      channels.emplace_back(
          CategoricalColumn{std::move(cat_codes[c]), std::move(channel_levels[c])});
    } else {
      channels.emplace_back(ContinuousColumn{std::move(reals[c])});
    }
  }
  LoadResult result{RecordBatch::Create(schema, std::move(dims), std::move(channels)),
                    std::move(issues), rows_read, rejected};
  return result;
}

LoadResult LoadRecordsCsv(const std::filesystem::path& path,
                          const AttributeSchema& schema) {
  return ParseRecordsCsv(internal::ReadTextFile(path), schema);
}

}  // namespace leakprice
