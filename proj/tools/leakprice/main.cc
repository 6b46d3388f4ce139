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

// leakprice: intersectional leakage estimation and surcharge pricing.
//
//   leakprice validate --config run.json
//   leakprice estimate --config run.json [--seed N] [--quiet]
//   leakprice price    --config run.json [--seed N] [--quiet]
//   leakprice audit    --config run.json [--seed N] [--quiet]

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.h"

int main(int argc, char** argv) {
  using namespace leakprice::cli;

  CLI::App app{"Prices data channels by the intersectional information they leak"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  app.add_option("--config", config_path, "Run configuration (JSON)")->required();
  app.add_option("--seed", seed, "Override the estimator seed");
  app.add_flag("--quiet", quiet, "Suppress progress output");

  auto* validate = app.add_subcommand("validate", "Check schema, data and config");
  auto* estimate = app.add_subcommand("estimate", "Write the leakage report");
  auto* price = app.add_subcommand("price", "Write the valuation report");
  auto* audit = app.add_subcommand("audit", "Validate, estimate, price and summarize");
  for (auto* sub : {validate, estimate, price, audit}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  CommandOptions options;
  options.config_path = config_path;
  options.seed = seed;
  options.quiet = quiet;

  if (*validate) return RunValidate(options, std::cout, std::cerr);
  if (*estimate) return RunEstimate(options, std::cout, std::cerr);
  if (*price) return RunPrice(options, std::cout, std::cerr);
  return RunAudit(options, std::cout, std::cerr);
}
