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

#include "commands.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include <unistd.h>

#include "json.hpp"
#include "leakprice/pricing.h"
#include "leakprice/records.h"
#include "leakprice/report.h"
#include "leakprice/schema.h"
#include "run_config.h"

namespace leakprice::cli {

int ExitCodeFor(ErrorClass error_class) {
  switch (error_class) {
    case ErrorClass::kValidation: return kExitValidation;
    case ErrorClass::kIo: return kExitIo;
    case ErrorClass::kEstimation: return kExitEstimation;
    case ErrorClass::kInternal: return kExitInternal;
  }
  return kExitInternal;
}

int ExitCodeFor(ErrorCode code) { return ExitCodeFor(ClassOf(code)); }

void WriteFilesAtomically(
    const std::vector<std::pair<std::filesystem::path, std::string>>& files) {
  namespace fs = std::filesystem;
  std::vector<fs::path> temps;
  auto cleanup = [&temps] {
    std::error_code ignored;
    for (const auto& t : temps) fs::remove(t, ignored);
  };
  const std::string suffix = ".tmp." + std::to_string(::getpid());
  for (const auto& [path, contents] : files) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) {
      cleanup();
      throw Error(ErrorCode::kIoWriteFailed, "cannot create directory '" +
                                                 path.parent_path().string() +
                                                 "': " + ec.message());
    }
    fs::path temp = path;
    temp += suffix;
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (out) temps.push_back(temp);
    out << contents;
    out.close();
    if (!out) {
      cleanup();
      throw Error(ErrorCode::kIoWriteFailed,
                  "cannot write '" + path.string() + "'");
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::error_code ec;
    fs::rename(temps[i], files[i].first, ec);
    if (ec) {
      // Roll back the targets already renamed in this call.
      std::error_code ignored;
      for (std::size_t j = 0; j < i; ++j) fs::remove(files[j].first, ignored);
      cleanup();
      throw Error(ErrorCode::kIoWriteFailed, "cannot move '" +
                                                 files[i].first.string() +
                                                 "' into place: " + ec.message());
    }
  }
}

namespace {

using Json = nlohmann::ordered_json;

Issue IssueFrom(const Error& e) {
  return {e.code(), e.what(), "", e.row()};
}

struct Prepared {
  RunConfig config;
  std::optional<AttributeSchema> schema;
  std::optional<LoadResult> data;
  std::vector<std::string> channels;
  std::vector<Issue> problems;
};

// Loads and cross-checks everything a run needs, collecting every problem it
// can find instead of stopping at the first. Config, schema and data read
// failures end preparation early since later checks depend on them.
Prepared Prepare(const CommandOptions& options) {
  Prepared p;
  try {
    p.config = LoadRunConfig(options.config_path);
  } catch (const Error& e) {
    p.problems.push_back(IssueFrom(e));
    return p;
  }
  if (options.seed) p.config.estimator.seed = *options.seed;
  const RunConfig& config = p.config;

  try {
    p.schema = LoadSchema(config.schema_path);
  } catch (const Error& e) {
    p.problems.push_back(IssueFrom(e));
    return p;
  }
  const AttributeSchema& schema = *p.schema;
  if (schema.feature_channels().empty()) {
    p.problems.push_back({ErrorCode::kMalformedSchema,
                          "schema declares no feature channels", "", {}});
  }

  try {
    p.data = LoadRecordsCsv(config.data_path, schema);
  } catch (const Error& e) {
    p.problems.push_back(IssueFrom(e));
    return p;
  }
  p.problems.insert(p.problems.end(), p.data->issues.begin(), p.data->issues.end());

  if (config.channels) {
    std::set<std::string_view> seen;
    for (const auto& name : *config.channels) {
      if (!schema.FindChannel(name)) {
        p.problems.push_back({ErrorCode::kUnknownChannel,
                              "selected channel '" + name + "' is not in the schema",
                              name, {}});
      } else if (!seen.insert(name).second) {
        p.problems.push_back({ErrorCode::kDuplicateName,
                              "channel '" + name + "' selected twice", name, {}});
      }
    }
    for (const auto& channel : schema.feature_channels()) {
      if (seen.contains(channel.name)) p.channels.push_back(channel.name);
    }
  } else {
    for (const auto& channel : schema.feature_channels()) {
      p.channels.push_back(channel.name);
    }
  }

  for (const auto& [name, spec] : config.estimator.bins) {
    const auto index = schema.FindChannel(name);
    if (!index) {
      p.problems.push_back({ErrorCode::kUnknownChannel,
                            "bins given for unknown channel '" + name + "'", name, {}});
    } else if (schema.feature_channels()[*index].kind != ChannelKind::kContinuous) {
      p.problems.push_back({ErrorCode::kInvalidBinSpec,
                            "bins given for categorical channel '" + name + "'",
                            name, {}});
    }
  }

  auto check = [&p](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      p.problems.push_back(IssueFrom(e));
    }
  };
  check([&] { ValidateEstimatorConfig(config.estimator); });
  check([&] { ValidatePolicy(config.policy); });
  if (!config.lambda_grid.empty()) {
    check([&] { LambdaSweep({}, config.policy.fixed_cost, config.lambda_grid); });
  }
  if (config.mode == BundleMode::kIncremental) {
    const std::set<std::string_view> ordered(config.order.begin(), config.order.end());
    const std::set<std::string_view> selected(p.channels.begin(), p.channels.end());
    if (config.order.empty() || ordered.size() != config.order.size() ||
        ordered != selected) {
      p.problems.push_back({ErrorCode::kOrderMissing,
                            "incremental mode needs an order listing every "
                            "selected channel exactly once",
                            "", {}});
    }
  }
  return p;
}

void ReportProblems(const std::vector<Issue>& problems, std::ostream& err) {
  for (const auto& issue : problems) {
    err << "error: " << ErrorCodeName(issue.code) << ": " << issue.message;
    if (issue.row) err << " (row " << *issue.row << ")";
    err << "\n";
  }
}

RunMetadata MetadataFor(const Prepared& p) {
  RunMetadata run;
  run.seed = p.config.estimator.seed;
  run.data_name = p.config.data_path.filename().string();
  run.rows_read = p.data->rows_read;
  run.rows_rejected = p.data->rows_rejected;
  run.profile_space_size = p.schema->profile_space_size();
  for (const auto& dim : p.schema->protected_dims()) {
    run.protected_dims.push_back(dim.name);
  }
  return run;
}

struct Estimates {
  std::vector<LeakageEstimate> ok;
  std::vector<ChannelFailure> failed;
};

// Estimates every selected channel on up to `workers` threads. Results are
// assembled in schema channel order. Internal-consistency errors abort the run.
Estimates EstimateAll(const Prepared& p, const CommandOptions& options) {
  const EstimateFn estimate = options.estimate ? options.estimate : EstimateFn(EstimateLeakage);
  const std::size_t n = p.channels.size();
  std::vector<std::variant<std::monostate, LeakageEstimate, ChannelFailure>> slots(n);
  std::exception_ptr fatal;
  std::mutex fatal_mu;
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i] = estimate(p.data->batch, p.channels[i], *p.schema,
                            p.config.estimator);
      } catch (const Error& e) {
        if (ClassOf(e.code()) == ErrorClass::kInternal) {
          std::lock_guard lock(fatal_mu);
          if (!fatal) fatal = std::current_exception();
        } else {
          slots[i] = ChannelFailure{p.channels[i], e.code(), e.what()};
        }
      } catch (...) {
        std::lock_guard lock(fatal_mu);
        if (!fatal) fatal = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::min(p.config.workers, std::max<std::size_t>(n, 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (fatal) std::rethrow_exception(fatal);

  Estimates out;
  for (auto& slot : slots) {
    if (auto* est = std::get_if<LeakageEstimate>(&slot)) {
      out.ok.push_back(std::move(*est));
    } else if (auto* failure = std::get_if<ChannelFailure>(&slot)) {
      out.failed.push_back(std::move(*failure));
    }
  }
  return out;
}

ValuationReport BuildValuation(const Prepared& p, Estimates& estimates) {
  const RunConfig& config = p.config;
  if (config.mode == BundleMode::kIncremental && !estimates.failed.empty()) {
    const ChannelFailure& first = estimates.failed.front();
    throw Error(first.code, "incremental pricing needs every ordered channel; '" +
                                first.channel + "' failed: " + first.message);
  }
  ValuationReport report;
  if (config.mode == BundleMode::kIncremental) {
    DisclosureContext context{p.data->batch, *p.schema, config.estimator, config.order};
    // Price in disclosure order so entries line up with the steps.
    std::vector<LeakageEstimate> ordered;
    for (const auto& name : config.order) {
      for (const auto& est : estimates.ok) {
        if (est.channel == name) ordered.push_back(est);
      }
    }
    report = PriceBundle(ordered, config.policy, config.mode, &context);
  } else {
    report = PriceBundle(estimates.ok, config.policy, config.mode);
  }
  if (!config.lambda_grid.empty()) {
    report.sweep = LambdaSweep(report.estimates, config.policy.fixed_cost,
                               config.lambda_grid);
  }
  report.failures = estimates.failed;
  return report;
}

enum class Stage { kEstimate, kPrice, kAudit };

int RunPipeline(Stage stage, const CommandOptions& options, std::ostream& out,
                std::ostream& err) {
  Prepared p = Prepare(options);
  if (!p.problems.empty()) {
    ReportProblems(p.problems, err);
    return ExitCodeFor(p.problems.front().code);
  }
  try {
    Estimates estimates = EstimateAll(p, options);
    const RunMetadata run = MetadataFor(p);
    std::vector<std::pair<std::filesystem::path, std::string>> files;
    std::string summary;
    if (stage == Stage::kEstimate) {
      LeakageReport report{run, p.config.estimator, estimates.ok, estimates.failed};
      files.emplace_back(p.config.output_dir / kLeakageReportName,
                         SerializeLeakageReport(report));
    } else {
      const ValuationReport report = BuildValuation(p, estimates);
      files.emplace_back(p.config.output_dir / kValuationReportName,
                         SerializeValuationReport(report, run));
      if (stage == Stage::kAudit) {
        summary = RenderAuditSummary(report, run, p.config.flag_share);
        files.emplace_back(p.config.output_dir / kAuditSummaryName, summary);
      }
    }
    WriteFilesAtomically(files);
    if (!options.quiet) {
      if (!summary.empty()) out << summary;
      for (const auto& [path, contents] : files) {
        err << "wrote " << path.string() << "\n";
      }
    }
    if (!estimates.failed.empty()) {
      for (const auto& f : estimates.failed) {
        err << "error: " << ErrorCodeName(f.code) << ": channel '" << f.channel
            << "': " << f.message << "\n";
      }
      return kExitEstimation;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: INTERNAL_CONSISTENCY: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace

int RunValidate(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  Prepared p = Prepare(options);
  if (p.data && p.problems.empty() &&
      p.data->batch.row_count() < p.config.estimator.min_rows) {
    p.problems.push_back({ErrorCode::kTooFewRows,
                          "data has " + std::to_string(p.data->batch.row_count()) +
                              " valid rows, minimum is " +
                              std::to_string(p.config.estimator.min_rows),
                          "", {}});
  }

  Json doc;
  doc["ok"] = p.problems.empty();
  if (p.schema) {
    doc["profile_space_size"] = p.schema->profile_space_size();
    doc["channels"] = p.channels;
  }
  if (p.data) {
    doc["rows_read"] = p.data->rows_read;
    doc["rows_rejected"] = p.data->rows_rejected;
  }
  Json errors = Json::array();
  for (const auto& issue : p.problems) {
    Json e = {{"code", ErrorCodeName(issue.code)}, {"message", issue.message}};
    if (!issue.column.empty()) e["column"] = issue.column;
    if (issue.row) e["row"] = *issue.row;
    errors.push_back(std::move(e));
  }
  doc["error_count"] = p.problems.size();
  doc["errors"] = std::move(errors);
  out << doc.dump(2) << "\n";
  if (!options.quiet && !p.problems.empty()) ReportProblems(p.problems, err);
  return p.problems.empty() ? kExitOk : ExitCodeFor(p.problems.front().code);
}

int RunEstimate(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return RunPipeline(Stage::kEstimate, options, out, err);
}

int RunPrice(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return RunPipeline(Stage::kPrice, options, out, err);
}

int RunAudit(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  return RunPipeline(Stage::kAudit, options, out, err);
}

}  // namespace leakprice::cli
