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

#ifndef LEAKPRICE_SCHEMA_H_
#define LEAKPRICE_SCHEMA_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leakprice/discretize.h"

namespace leakprice {

inline constexpr std::uint64_t kDefaultProfileCellCap = 1'000'000;

struct ProtectedDimension {
  std::string name;
  std::vector<std::string> levels;
};

enum class ChannelKind {
  kCategorical,
  kContinuous,
};

std::string_view ChannelKindName(ChannelKind kind);

struct FeatureChannel {
  std::string name;
  ChannelKind kind = ChannelKind::kCategorical;
  // Categorical only. Empty means "levels are discovered from the data".
  std::vector<std::string> levels;
  // Continuous only. Defaults to equal-frequency with 4 bins when absent.
  std::optional<BinSpec> bins;
};

// The protected dimensions S_1..S_m whose joint configuration is the
// intersectional profile, plus the observable feature channels. Immutable
// once built.
class AttributeSchema {
 public:
  // Validates and returns a schema, or throws kDuplicateName,
  // kEmptyDimension, kProfileSpaceTooLarge, kMalformedSchema or
  // kInvalidBinSpec.
  static AttributeSchema Create(std::vector<ProtectedDimension> dims,
                                std::vector<FeatureChannel> channels,
                                std::uint64_t cell_cap = kDefaultProfileCellCap);

  const std::vector<ProtectedDimension>& protected_dims() const {
    return dims_;
  }
  const std::vector<FeatureChannel>& feature_channels() const {
    return channels_;
  }
  std::size_t dimension_count() const { return dims_.size(); }
  std::size_t dimension_cardinality(std::size_t dim) const {
    return dims_[dim].levels.size();
  }
  // Product of the dimension cardinalities.
  std::uint64_t profile_space_size() const { return profile_space_size_; }
  std::uint64_t cell_cap() const { return cell_cap_; }

  std::optional<std::size_t> FindDimension(std::string_view name) const;
  std::optional<std::size_t> FindChannel(std::string_view name) const;
  std::optional<std::size_t> FindLevel(std::size_t dim,
                                       std::string_view label) const;

 private:
  AttributeSchema() = default;

  std::vector<ProtectedDimension> dims_;
  std::vector<FeatureChannel> channels_;
  std::uint64_t profile_space_size_ = 1;
  std::uint64_t cell_cap_ = kDefaultProfileCellCap;
};

// Schema document:
//   {
//     "protected_dims":   [{"name": "...", "levels": ["...", ...]}, ...],
//     "feature_channels": [{"name": "...", "kind": "categorical",
//                           "levels": [...]},                 // optional
//                          {"name": "...", "kind": "continuous",
//                           "bins": {"strategy": "equal-frequency",
//                                    "bin_count": 4}}]       // optional
//   }
// "bins" may also be {"strategy": "explicit-edges", "edges": [...]}.
AttributeSchema ParseSchemaJson(std::string_view text,
                                std::uint64_t cell_cap = kDefaultProfileCellCap);
AttributeSchema LoadSchema(const std::filesystem::path& path,
                           std::uint64_t cell_cap = kDefaultProfileCellCap);
std::string SchemaToJson(const AttributeSchema& schema);

// One joint configuration of the protected dimensions: a level index per
// dimension, in schema order.
struct ProfileCell {
  std::vector<std::size_t> coordinates;

  friend bool operator==(const ProfileCell&, const ProfileCell&) = default;
};

// Row-major over the schema's dimension order (the last dimension varies
// fastest). Throws kCoordinateOutOfRange.
std::uint64_t FlattenProfile(const ProfileCell& cell,
                             const AttributeSchema& schema);
ProfileCell UnflattenProfile(std::uint64_t index, const AttributeSchema& schema);

}  // namespace leakprice

#endif  // LEAKPRICE_SCHEMA_H_
