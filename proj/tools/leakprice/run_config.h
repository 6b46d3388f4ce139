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

#ifndef LEAKPRICE_TOOLS_LEAKPRICE_RUN_CONFIG_H_
#define LEAKPRICE_TOOLS_LEAKPRICE_RUN_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leakprice/estimation.h"
#include "leakprice/pricing.h"

namespace leakprice::cli {

// Everything one audit run needs, resolved before any computation starts.
// Relative paths in the config file are resolved against its directory.
struct RunConfig {
  std::filesystem::path schema_path;
  std::filesystem::path data_path;
  std::filesystem::path output_dir;
  // nullopt selects every schema channel.
  std::optional<std::vector<std::string>> channels;
  EstimatorConfig estimator;
  std::size_t workers = 1;
  PricePolicy policy;
  std::vector<double> lambda_grid;
  BundleMode mode = BundleMode::kMarginal;
  std::vector<std::string> order;
  // Audit summary flags channels whose surcharge exceeds this share of total.
  double flag_share = 0.5;
};

// Parses a run-config document. Unknown keys are rejected so typos cannot
// silently fall back to defaults. Throws kMalformedConfig.
RunConfig ParseRunConfig(std::string_view text,
                         const std::filesystem::path& base_dir);
RunConfig LoadRunConfig(const std::filesystem::path& path);

}  // namespace leakprice::cli

#endif  // LEAKPRICE_TOOLS_LEAKPRICE_RUN_CONFIG_H_
