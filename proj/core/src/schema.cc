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

#include "leakprice/schema.h"

#include <set>
#include <utility>

#include "json.hpp"
#include "leakprice/error.h"
#include "text_file.h"

namespace leakprice {
namespace {

using Json = nlohmann::ordered_json;

void RequireUniqueLevels(const std::string& owner,
                         const std::vector<std::string>& levels) {
  std::set<std::string_view> seen;
  for (const auto& level : levels) {
    if (!seen.insert(level).second) {
      throw Error(ErrorCode::kDuplicateName,
                  "level '" + level + "' repeated in '" + owner + "'");
    }
  }
}

BinSpec ParseBinSpec(const Json& node, const std::string& owner) {
  if (!node.is_object() || !node.contains("strategy")) {
    throw Error(ErrorCode::kMalformedSchema,
                "bins for '" + owner + "' need a \"strategy\"");
  }
  BinSpec spec;
  spec.strategy = ParseBinStrategy(node.at("strategy").get<std::string>());
  if (spec.strategy == BinStrategy::kExplicitEdges) {
    spec.edges = node.at("edges").get<std::vector<double>>();
    spec.bin_count = spec.edges.empty() ? 0 : spec.edges.size() - 1;
  } else {
    spec.bin_count = node.at("bin_count").get<std::size_t>();
  }
  return spec;
}

}  // namespace

std::string_view ChannelKindName(ChannelKind kind) {
  return kind == ChannelKind::kCategorical ? "categorical" : "continuous";
}

AttributeSchema AttributeSchema::Create(std::vector<ProtectedDimension> dims,
                                        std::vector<FeatureChannel> channels,
                                        std::uint64_t cell_cap) {
  if (dims.empty()) {
    throw Error(ErrorCode::kEmptyDimension,
                "schema declares no protected dimensions");
  }
  std::set<std::string_view> names;
  for (const auto& dim : dims) {
    if (dim.name.empty()) {
      throw Error(ErrorCode::kMalformedSchema, "dimension with empty name");
    }
    if (!names.insert(dim.name).second) {
      throw Error(ErrorCode::kDuplicateName,
                  "name '" + dim.name + "' declared more than once");
    }
    if (dim.levels.empty()) {
      throw Error(ErrorCode::kEmptyDimension,
                  "dimension '" + dim.name + "' has no levels");
    }
    RequireUniqueLevels(dim.name, dim.levels);
  }
  for (auto& channel : channels) {
    if (channel.name.empty()) {
      throw Error(ErrorCode::kMalformedSchema, "channel with empty name");
    }
    if (!names.insert(channel.name).second) {
      throw Error(ErrorCode::kDuplicateName,
                  "name '" + channel.name + "' declared more than once");
    }
    if (channel.kind == ChannelKind::kCategorical) {
      if (channel.bins) {
        throw Error(ErrorCode::kMalformedSchema,
                    "categorical channel '" + channel.name + "' has bins");
      }
      RequireUniqueLevels(channel.name, channel.levels);
    } else {
      if (!channel.levels.empty()) {
        throw Error(ErrorCode::kMalformedSchema,
                    "continuous channel '" + channel.name + "' has levels");
      }
      if (!channel.bins) channel.bins = BinSpec::EqualFrequency(4);
      ValidateBinSpec(*channel.bins);
    }
  }

  // Checked product; stops as soon as the cap is crossed so it never wraps.
  std::uint64_t size = 1;
  for (const auto& dim : dims) {
    const std::uint64_t card = dim.levels.size();
    if (size > cell_cap / card) {
      throw Error(ErrorCode::kProfileSpaceTooLarge,
                  "profile space exceeds the cap of " +
                      std::to_string(cell_cap) + " cells");
    }
    size *= card;
  }

  AttributeSchema schema;
  schema.dims_ = std::move(dims);
  schema.channels_ = std::move(channels);
  schema.profile_space_size_ = size;
  schema.cell_cap_ = cell_cap;
  return schema;
}

std::optional<std::size_t> AttributeSchema::FindDimension(
    std::string_view name) const {
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> AttributeSchema::FindChannel(
    std::string_view name) const {
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    if (channels_[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> AttributeSchema::FindLevel(
    std::size_t dim, std::string_view label) const {
  const auto& levels = dims_.at(dim).levels;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] == label) return i;
  }
  return std::nullopt;
}

AttributeSchema ParseSchemaJson(std::string_view text, std::uint64_t cell_cap) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kMalformedSchema,
                std::string("schema is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("protected_dims")) {
      throw Error(ErrorCode::kMalformedSchema,
                  "schema needs a \"protected_dims\" array");
    }
    std::vector<ProtectedDimension> dims;
    for (const auto& node : doc.at("protected_dims")) {
      dims.push_back({node.at("name").get<std::string>(),
                      node.at("levels").get<std::vector<std::string>>()});
    }
    std::vector<FeatureChannel> channels;
    if (doc.contains("feature_channels")) {
      for (const auto& node : doc.at("feature_channels")) {
        FeatureChannel channel;
        channel.name = node.at("name").get<std::string>();
        const auto kind = node.value("kind", std::string("categorical"));
        if (kind == "categorical") {
          channel.kind = ChannelKind::kCategorical;
        } else if (kind == "continuous") {
          channel.kind = ChannelKind::kContinuous;
        } else {
          throw Error(ErrorCode::kMalformedSchema,
                      "channel '" + channel.name + "' has unknown kind '" +
                          kind + "'");
        }
        if (node.contains("levels")) {
          channel.levels = node.at("levels").get<std::vector<std::string>>();
        }
        if (node.contains("bins")) {
          channel.bins = ParseBinSpec(node.at("bins"), channel.name);
        }
        channels.push_back(std::move(channel));
      }
    }
    return AttributeSchema::Create(std::move(dims), std::move(channels),
                                   cell_cap);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kMalformedSchema,
                std::string("schema has an unexpected shape: ") + e.what());
  }
}

AttributeSchema LoadSchema(const std::filesystem::path& path,
                           std::uint64_t cell_cap) {
  return ParseSchemaJson(internal::ReadTextFile(path), cell_cap);
}

std::string SchemaToJson(const AttributeSchema& schema) {
  Json doc;
  Json dims = Json::array();
  for (const auto& dim : schema.protected_dims()) {
    dims.push_back({{"name", dim.name}, {"levels", dim.levels}});
  }
  Json channels = Json::array();
  for (const auto& channel : schema.feature_channels()) {
    Json node = {{"name", channel.name},
                 {"kind", ChannelKindName(channel.kind)}};
    if (!channel.levels.empty()) node["levels"] = channel.levels;
    if (channel.bins) {
      Json bins = {{"strategy", BinStrategyName(channel.bins->strategy)}};
      if (channel.bins->strategy == BinStrategy::kExplicitEdges) {
        bins["edges"] = channel.bins->edges;
      } else {
        bins["bin_count"] = channel.bins->bin_count;
      }
      node["bins"] = std::move(bins);
    }
    channels.push_back(std::move(node));
  }
  doc["protected_dims"] = std::move(dims);
  doc["feature_channels"] = std::move(channels);
  return doc.dump(2) + "\n";
}

std::uint64_t FlattenProfile(const ProfileCell& cell,
                             const AttributeSchema& schema) {
  if (cell.coordinates.size() != schema.dimension_count()) {
    throw Error(ErrorCode::kCoordinateOutOfRange,
                "profile cell has " + std::to_string(cell.coordinates.size()) +
                    " coordinates, schema has " +
                    std::to_string(schema.dimension_count()) + " dimensions");
  }
  std::uint64_t index = 0;
  for (std::size_t d = 0; d < cell.coordinates.size(); ++d) {
    const std::size_t card = schema.dimension_cardinality(d);
    if (cell.coordinates[d] >= card) {
      throw Error(ErrorCode::kCoordinateOutOfRange,
                  "coordinate " + std::to_string(cell.coordinates[d]) +
                      " out of range for dimension '" +
                      schema.protected_dims()[d].name + "'");
    }
    index = index * card + cell.coordinates[d];
  }
  return index;
}

ProfileCell UnflattenProfile(std::uint64_t index,
                             const AttributeSchema& schema) {
  if (index >= schema.profile_space_size()) {
    throw Error(ErrorCode::kCoordinateOutOfRange,
                "flat index " + std::to_string(index) +
                    " outside the profile space");
  }
  ProfileCell cell;
  cell.coordinates.resize(schema.dimension_count());
  for (std::size_t d = schema.dimension_count(); d-- > 0;) {
    const std::size_t card = schema.dimension_cardinality(d);
    cell.coordinates[d] = index % card;
    index /= card;
  }
  return cell;
}

}  // namespace leakprice
