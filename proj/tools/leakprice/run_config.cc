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

#include "run_config.h"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "leakprice/error.h"

namespace leakprice::cli {
namespace {

using Json = nlohmann::json;

[[noreturn]] void Malformed(const std::string& message) {
  throw Error(ErrorCode::kMalformedConfig, message);
}

void RejectUnknownKeys(const Json& node, std::string_view where,
                       std::initializer_list<std::string_view> allowed) {
  const std::set<std::string_view> keys(allowed);
  for (const auto& [key, value] : node.items()) {
    if (!keys.contains(key)) {
      Malformed("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

std::filesystem::path Resolve(const std::filesystem::path& base,
                              const std::string& value) {
  const std::filesystem::path p(value);
  return p.is_absolute() ? p : base / p;
}

void ParseEstimator(const Json& node, RunConfig& config) {
  RejectUnknownKeys(node, "estimator",
                    {"bias_correction", "permutations", "percentile", "min_rows",
                     "seed", "workers", "require_multiple_bins"});
  EstimatorConfig& est = config.estimator;
  if (node.contains("bias_correction")) {
    est.bias = ParseBiasCorrection(node.at("bias_correction").get<std::string>());
  }
  est.permutations = node.value("permutations", est.permutations);
  est.percentile = node.value("percentile", est.percentile);
  est.min_rows = node.value("min_rows", est.min_rows);
  est.seed = node.value("seed", est.seed);
  est.require_multiple_bins =
      node.value("require_multiple_bins", est.require_multiple_bins);
  config.workers = node.value("workers", config.workers);
  if (config.workers < 1) Malformed("estimator.workers must be at least 1");
}

void ParsePolicy(const Json& node, RunConfig& config) {
  RejectUnknownKeys(node, "policy",
                    {"c_p", "lambda", "lambda_grid", "currency", "rounding"});
  PricePolicy& policy = config.policy;
  if (!node.contains("c_p") || !node.contains("lambda")) {
    Malformed("policy needs \"c_p\" and \"lambda\"");
  }
  policy.fixed_cost = node.at("c_p").get<double>();
  policy.lambda = node.at("lambda").get<double>();
  policy.currency = node.value("currency", policy.currency);
  policy.rounding = node.value("rounding", policy.rounding);
  if (node.contains("lambda_grid")) {
    config.lambda_grid = node.at("lambda_grid").get<std::vector<double>>();
  }
}

BinSpec ParseBins(const Json& node, const std::string& channel) {
  RejectUnknownKeys(node, "bins." + channel, {"strategy", "bin_count", "edges"});
  BinSpec spec;
  spec.strategy = ParseBinStrategy(node.at("strategy").get<std::string>());
  if (spec.strategy == BinStrategy::kExplicitEdges) {
    spec = BinSpec::Explicit(node.at("edges").get<std::vector<double>>());
  } else {
    spec.bin_count = node.at("bin_count").get<std::size_t>();
  }
  return spec;
}

}  // namespace

RunConfig ParseRunConfig(std::string_view text,
                         const std::filesystem::path& base_dir) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    Malformed(std::string("run config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) Malformed("run config must be a JSON object");

  RunConfig config;
  try {
    RejectUnknownKeys(doc, "run config",
                      {"schema", "data", "output_dir", "channels", "estimator",
                       "bins", "policy", "mode", "order", "audit"});
    for (const char* key : {"schema", "data", "output_dir", "policy"}) {
      if (!doc.contains(key)) Malformed(std::string("run config needs \"") + key + "\"");
    }
    config.schema_path = Resolve(base_dir, doc.at("schema").get<std::string>());
    config.data_path = Resolve(base_dir, doc.at("data").get<std::string>());
    config.output_dir = Resolve(base_dir, doc.at("output_dir").get<std::string>());

    if (doc.contains("channels")) {
      const Json& channels = doc.at("channels");
      if (channels.is_string()) {
        if (channels.get<std::string>() != "all") {
          Malformed("\"channels\" must be \"all\" or a list of names");
        }
      } else {
        config.channels = channels.get<std::vector<std::string>>();
      }
    }
    if (doc.contains("estimator")) ParseEstimator(doc.at("estimator"), config);
    if (doc.contains("bins")) {
      for (const auto& [name, node] : doc.at("bins").items()) {
        config.estimator.bins[name] = ParseBins(node, name);
      }
    }
    ParsePolicy(doc.at("policy"), config);

    const std::string mode = doc.value("mode", std::string("marginal"));
    if (mode == "marginal") {
      config.mode = BundleMode::kMarginal;
    } else if (mode == "incremental") {
      config.mode = BundleMode::kIncremental;
    } else {
      Malformed("mode must be \"marginal\" or \"incremental\"");
    }
    if (doc.contains("order")) {
      config.order = doc.at("order").get<std::vector<std::string>>();
    }
    if (doc.contains("audit")) {
      const Json& audit = doc.at("audit");
      RejectUnknownKeys(audit, "audit", {"flag_share"});
      config.flag_share = audit.value("flag_share", config.flag_share);
      if (!(config.flag_share >= 0.0 && config.flag_share <= 1.0)) {
        Malformed("audit.flag_share must be within [0, 1]");
      }
    }
  } catch (const Json::exception& e) {
    Malformed(std::string("run config has an unexpected shape: ") + e.what());
  }
  return config;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoReadFailed,
                "cannot open config '" + path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return ParseRunConfig(text.str(), path.parent_path());
}

}  // namespace leakprice::cli
