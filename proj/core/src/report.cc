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

#include "leakprice/report.h"

#include <cfenv>
#include <cmath>
#include <cstdio>
#include <string_view>

#include "json.hpp"
#include "leakprice/infotheory.h"

namespace leakprice {
namespace {

using Json = nlohmann::ordered_json;

Json Bits9(double value) { return RoundHalfEven(value, kBitsDecimals); }

Json RunToJson(const RunMetadata& run) {
  return {{"seed", run.seed},
          {"data", run.data_name},
          {"rows_read", run.rows_read},
          {"rows_rejected", run.rows_rejected},
          {"protected_dims", run.protected_dims},
          {"profile_space_size", run.profile_space_size}};
}

Json EstimatorToJson(const EstimatorConfig& config) {
  return {{"bias_correction", BiasCorrectionName(config.bias)},
          {"permutations", config.permutations},
          {"percentile", config.percentile},
          {"min_rows", config.min_rows}};
}

Json EstimateToJson(const LeakageEstimate& e) {
  Json node = {{"channel", e.channel},
               {"mi_reported", Bits9(e.mi_reported.value())},
               {"mi_plugin", Bits9(e.mi_plugin.value())},
               {"mi_corrected", Bits9(e.mi_corrected.value())},
               {"permutation_floor", Bits9(e.permutation_floor.value())},
               {"sample_count", e.sample_count},
               {"dropped_rows", e.dropped_rows},
               {"bin_count_used", e.bin_count_used},
               {"occupied_feature_cells", e.occupied_feature_cells},
               {"occupied_profile_cells", e.occupied_profile_cells},
               {"bias_correction", BiasCorrectionName(e.bias)},
               {"permutations", e.permutations},
               {"percentile", e.percentile},
               {"permutation_seed", e.seed}};
  if (!e.edges.empty()) node["bin_edges"] = e.edges;
  node["warnings"] = e.warnings;
  return node;
}

Json FailuresToJson(const std::vector<ChannelFailure>& failures) {
  Json out = Json::array();
  for (const auto& f : failures) {
    out.push_back({{"channel", f.channel},
                   {"code", ErrorCodeName(f.code)},
                   {"message", f.message}});
  }
  return out;
}

Json Header(std::string_view kind) {
  return {{"schema_version", kReportSchemaVersion},
          {"report", kind},
          {"units", "bits"},
          {"nats_per_bit", kNatsPerBit}};
}

}  // namespace

double RoundHalfEven(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double rounded = std::nearbyint(value * scale) / scale;
  std::fesetround(saved);
  // Normalize -0.0 so serialized output never shows "-0.0".
  return rounded == 0.0 ? 0.0 : rounded;
}

std::string SerializeLeakageReport(const LeakageReport& report) {
  Json doc = Header("leakage");
  doc["run"] = RunToJson(report.run);
  doc["estimator"] = EstimatorToJson(report.estimator);
  Json channels = Json::array();
  for (const auto& e : report.estimates) channels.push_back(EstimateToJson(e));
  doc["channels"] = std::move(channels);
  doc["failures"] = FailuresToJson(report.failures);
  return doc.dump(2) + "\n";
}

std::string SerializeValuationReport(const ValuationReport& report,
                                     const RunMetadata& run) {
  const PricePolicy& policy = report.policy;
  const int d = policy.rounding;
  auto money = [d](double v) -> Json { return RoundHalfEven(v, d); };

  Json doc = Header("valuation");
  doc["run"] = RunToJson(run);
  doc["policy"] = {{"c_p", money(policy.fixed_cost)},
                   {"lambda", policy.lambda},
                   {"currency", policy.currency},
                   {"rounding", policy.rounding},
                   {"lambda_units", policy.currency + "/bit"}};
  doc["mode"] = BundleModeName(report.mode);

  Json entries = Json::array();
  for (const auto& e : report.entries) {
    entries.push_back({{"channel", e.channel},
                       {"mi_reported", Bits9(e.mi_bits)},
                       {"surcharge", money(e.surcharge)},
                       {"total", money(e.total)}});
  }
  doc["channels"] = std::move(entries);
  doc["bundle_total"] = money(report.bundle_total);

  if (report.mode == BundleMode::kIncremental) {
    Json steps = Json::array();
    for (const auto& s : report.incremental) {
      steps.push_back({{"step", s.step},
                       {"channel", s.channel},
                       {"conditional_mi", Bits9(s.conditional_mi)},
                       {"surcharge", money(s.surcharge)},
                       {"total", money(s.total)},
                       {"cumulative", money(s.cumulative)},
                       {"joint_feature_cells", s.joint_feature_cells}});
    }
    doc["incremental"] = {
        {"extension", "sequential disclosure priced by conditional mutual "
                      "information given earlier channels"},
        {"sample_count", report.incremental_sample_count},
        {"steps", std::move(steps)}};
  }

  if (report.sweep) {
    const SweepTable& sweep = *report.sweep;
    Json rows = Json::array();
    for (std::size_t i = 0; i < sweep.lambdas.size(); ++i) {
      Json totals = Json::object();
      for (std::size_t c = 0; c < sweep.channels.size(); ++c) {
        totals[sweep.channels[c]] = money(sweep.totals[i][c]);
      }
      rows.push_back({{"lambda", sweep.lambdas[i]},
                      {"totals", std::move(totals)},
                      {"bundle_total", money(sweep.bundle_totals[i])}});
    }
    doc["lambda_sweep"] = std::move(rows);
  }

  Json estimates = Json::array();
  for (const auto& e : report.estimates) estimates.push_back(EstimateToJson(e));
  doc["estimates"] = std::move(estimates);
  doc["failures"] = FailuresToJson(report.failures);
  doc["warnings"] = report.warnings;
  return doc.dump(2) + "\n";
}

std::string RenderAuditSummary(const ValuationReport& report,
                               const RunMetadata& run, double flag_share) {
  const PricePolicy& policy = report.policy;
  const int d = policy.rounding;
  std::string out;
  char line[256];

  std::snprintf(line, sizeof line, "leakprice audit  data=%s  rows=%zu  rejected=%zu  seed=%llu\n",
                run.data_name.c_str(), run.rows_read, run.rows_rejected,
                static_cast<unsigned long long>(run.seed));
  out += line;
  std::snprintf(line, sizeof line, "policy  c_p=%.*f %s  lambda=%.6g %s/bit  mode=%s\n",
                d, RoundHalfEven(policy.fixed_cost, d), policy.currency.c_str(),
                policy.lambda, policy.currency.c_str(),
                std::string(BundleModeName(report.mode)).c_str());
  out += line;
  out += "\n";

  std::snprintf(line, sizeof line, "%-28s %12s %12s %16s %16s  %s\n", "channel",
                "mi_bits", "floor_bits", "surcharge", "total", "flag");
  out += line;
  out += std::string(94, '-') + "\n";
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const ValuationEntry& e = report.entries[i];
    const double floor = i < report.estimates.size()
                             ? report.estimates[i].permutation_floor.value()
                             : 0.0;
    const bool flagged = e.total > 0.0 && e.surcharge > flag_share * e.total;
    std::snprintf(line, sizeof line, "%-28s %12.6f %12.6f %16.*f %16.*f  %s\n",
                  e.channel.c_str(), RoundHalfEven(e.mi_bits, 6),
                  RoundHalfEven(floor, 6), d, RoundHalfEven(e.surcharge, d), d,
                  RoundHalfEven(e.total, d), flagged ? "HIGH-SURCHARGE" : "");
    out += line;
  }
  std::snprintf(line, sizeof line, "%-28s %12s %12s %16s %16.*f\n", "bundle",
                "", "", "", d, RoundHalfEven(report.bundle_total, d));
  out += line;

  if (report.mode == BundleMode::kIncremental) {
    out += "\nincremental disclosure (conditional leakage given earlier steps)\n";
    std::snprintf(line, sizeof line, "%-5s %-28s %14s %16s %16s\n", "step",
                  "channel", "cond_mi_bits", "total", "cumulative");
    out += line;
    for (const auto& s : report.incremental) {
      std::snprintf(line, sizeof line, "%-5zu %-28s %14.6f %16.*f %16.*f\n",
                    s.step, s.channel.c_str(), RoundHalfEven(s.conditional_mi, 6),
                    d, RoundHalfEven(s.total, d), d,
                    RoundHalfEven(s.cumulative, d));
      out += line;
    }
  }

  if (!report.failures.empty()) {
    out += "\nfailed channels\n";
    for (const auto& f : report.failures) {
      out += "  " + f.channel + "  " + std::string(ErrorCodeName(f.code)) +
             "  " + f.message + "\n";
    }
  }
  for (const auto& w : report.warnings) out += "warning: " + w + "\n";
  return out;
}

}  // namespace leakprice
