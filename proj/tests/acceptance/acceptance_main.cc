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

// Acceptance suite: prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.h"
#include "json.hpp"
#include "leakprice/leakprice.h"
#include "oracle/oracle.h"
#include "oracle/test_util.h"

namespace leakprice {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using ::leakprice::oracle::Construction;
using ::leakprice::oracle::Generate;
using ::leakprice::oracle::OracleMutualInformation;
using ::leakprice::oracle::SamplePairs;
using ::leakprice::oracle::ToJointTable;
using ::leakprice::testing::CategoricalFromCells;
using ::leakprice::testing::MakeBatch;
using ::leakprice::testing::MakeSchema;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

double EngineMi(const JointTable& t) { return MutualInformation(t).value(); }

Outcome OracleEquivalence() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  std::size_t checked = 0;
  auto check = [&](const oracle::GeneratedInstance& inst) {
    worst = std::max(worst, std::abs(EngineMi(inst.joint) - inst.true_mi));
    ++checked;
  };
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const std::size_t nx = 1 + UniformBelow(rng, 16);
    const std::size_t ns = 1 + UniformBelow(rng, 16);
    check(Generate(Construction::kRandomDirichlet, {nx, ns}, i));
  }
  for (std::uint64_t i = 0; i < 100; ++i) {
    check(Generate(Construction::kProduct,
                   {1 + UniformBelow(rng, 16), 1 + UniformBelow(rng, 16)}, 5000 + i));
  }
  for (std::size_t k = 1; k <= 16; ++k) check(Generate(Construction::kDiagonal, {k}, 0));
  for (double flip : {0.0, 0.05, 0.1, 0.25, 0.4, 0.5}) {
    check(Generate(Construction::kBinarySymmetric, {}, 0, flip));
  }
  const double secs = Seconds(start);
  Outcome o;
  o.pass = worst <= 1e-9 && secs < 10.0;
  o.detail = std::to_string(checked) + " tables, " +
             Format("max |engine - oracle| = %.3g bits, %.2f s", worst, secs);
  return o;
}

Outcome AxiomSuite() {
  std::mt19937_64 rng(202);
  PricePolicy policy;
  policy.fixed_cost = 0.01;
  policy.lambda = 2.0;

  // (a) zero surcharge on product tables.
  std::size_t product_bad = 0;
  double product_worst = 0.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto inst = Generate(Construction::kProduct,
                               {1 + UniformBelow(rng, 16), 1 + UniformBelow(rng, 16)}, i);
    const double mi = EngineMi(inst.joint);
    product_worst = std::max({product_worst, mi, std::abs(inst.true_mi)});
    LeakageEstimate leak;
    leak.channel = "x";
    leak.mi_reported = Bits(mi);
    const double total = PriceChannel(leak, policy).total;
    if (mi > 1e-9 || std::abs(inst.true_mi) > 1e-9 || total != policy.fixed_cost) {
      ++product_bad;
    }
  }

  // (b) coarsening never increases MI.
  std::size_t dpi_bad = 0;
  double dpi_worst = -1.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const std::size_t nx = 2 + UniformBelow(rng, 15);
    const std::size_t ns = 1 + UniformBelow(rng, 16);
    const auto inst = Generate(Construction::kRandomDirichlet, {nx, ns}, 10'000 + i);
    const std::size_t target = 1 + UniformBelow(rng, nx);
    std::vector<std::size_t> map(nx);
    for (std::size_t x = 0; x < nx; ++x) map[x] = UniformBelow(rng, target);
    const JointTable coarse = CoarsenChannel(inst.joint, map);
    const double gain = EngineMi(coarse) - EngineMi(inst.joint);
    const double oracle_gain = OracleMutualInformation(coarse) - inst.true_mi;
    dpi_worst = std::max({dpi_worst, gain, oracle_gain});
    if (gain > 1e-9 || oracle_gain > 1e-9) ++dpi_bad;
  }

  // (c) additivity for independent disclosures.
  std::size_t add_bad = 0;
  double add_worst = 0.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const std::vector<std::size_t> dims = {2 + UniformBelow(rng, 3), 2 + UniformBelow(rng, 3),
                                           2 + UniformBelow(rng, 3), 2 + UniformBelow(rng, 3)};
    const auto inst = Generate(Construction::kAdditivePair, dims, 20'000 + i);
    const double joint = EngineMi(inst.joint);
    const double first = EngineMi(ToJointTable(*inst.first));
    const double second = EngineMi(ToJointTable(*inst.second));
    const double gap = std::abs(joint - first - second);
    const double oracle_gap =
        std::abs(inst.true_mi - OracleMutualInformation(*inst.first) -
                 OracleMutualInformation(*inst.second));
    add_worst = std::max({add_worst, gap, oracle_gap});
    if (gap > 1e-9 || oracle_gap > 1e-9) ++add_bad;
  }

  Outcome o;
  o.pass = product_bad == 0 && dpi_bad == 0 && add_bad == 0;
  o.detail = Format("(a) 200 product tables, %g violations, max mi %.3g; ", product_bad,
                    product_worst) +
             Format("(b) 1000 coarsenings, %g violations, max gain %.3g; ", dpi_bad,
                    dpi_worst) +
             Format("(c) 200 additive pairs, %g violations, max gap %.3g", add_bad, add_worst);
  return o;
}

Outcome KnownValues() {
  double diag_worst = 0.0;
  for (std::size_t k : {2u, 4u, 8u}) {
    const auto inst = Generate(Construction::kDiagonal, {k}, 0);
    diag_worst = std::max(diag_worst,
                          std::abs(EngineMi(inst.joint) - std::log2(static_cast<double>(k))));
  }
  const auto bsc = Generate(Construction::kBinarySymmetric, {}, 0, 0.25);
  const double bsc_mi = EngineMi(bsc.joint);
  Outcome o;
  o.pass = diag_worst <= 1e-12 && std::abs(bsc_mi - 0.188722) <= 1e-6;
  o.detail = Format("diagonal k=2,4,8 max error %.3g bits; binary symmetric 0.25 -> %.9f bits",
                    diag_worst, bsc_mi);
  return o;
}

Outcome EstimatorConsistency() {
  const auto start = Clock::now();
  const auto schema = MakeSchema({2}, {{"x", 2}});
  const auto bsc = Generate(Construction::kBinarySymmetric, {}, 0, 0.25);
  std::vector<double> medians;
  for (std::size_t n : {1'000u, 10'000u, 100'000u}) {
    std::vector<double> errors;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto sample = SamplePairs(bsc.cells, n, 900'000 + seed * 1'000 + n);
      const auto batch = MakeBatch(schema, sample.s, {CategoricalFromCells(sample.x, 2)});
      EstimatorConfig config;
      config.seed = seed;
      const auto est = EstimateLeakage(batch, "x", schema, config);
      errors.push_back(std::abs(est.mi_reported.value() - bsc.true_mi));
    }
    std::sort(errors.begin(), errors.end());
    medians.push_back(0.5 * (errors[9] + errors[10]));
  }
  const double secs = Seconds(start);
  Outcome o;
  o.pass = medians[0] > medians[1] && medians[1] > medians[2] && medians[2] <= 0.01 &&
           secs < 60.0;
  o.detail = Format("median |error| N=1e3: %.5f, N=1e4: %.5f, ", medians[0], medians[1]) +
             Format("N=1e5: %.5f bits; %.1f s", medians[2], secs);
  return o;
}

Outcome FiniteSampleZeroSurcharge() {
  const auto schema = MakeSchema({2, 3}, {{"x", 3}});
  int zeros = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto inst = Generate(Construction::kProduct, {3, 6}, 30'000 + i);
    const auto sample = SamplePairs(inst.cells, 10'000, 40'000 + i);
    const auto batch = MakeBatch(schema, sample.s, {CategoricalFromCells(sample.x, 3)});
    EstimatorConfig config;
    config.seed = i;
    zeros += EstimateLeakage(batch, "x", schema, config).mi_reported.value() == 0.0 ? 1 : 0;
  }
  Outcome o;
  o.pass = zeros >= 95;
  o.detail = std::to_string(zeros) + "/100 independent datasets reported 0 bits";
  return o;
}

std::vector<std::size_t> Ranking(const std::vector<double>& totals) {
  std::vector<std::size_t> order(totals.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return totals[a] > totals[b]; });
  return order;
}

Outcome PricingContract() {
  const fs::path demo = LEAKPRICE_DEMO_DIR;
  const AttributeSchema schema = LoadSchema(demo / "schema.json");
  const LoadResult data = LoadRecordsCsv(demo / "records.csv", schema);
  EstimatorConfig config;
  config.seed = 20260116;
  std::vector<LeakageEstimate> leaks;
  for (const auto& channel : schema.feature_channels()) {
    leaks.push_back(EstimateLeakage(data.batch, channel.name, schema, config));
  }

  std::size_t mismatches = 0;
  std::size_t ranking_changes = 0;
  std::vector<std::size_t> reference;
  const std::vector<double> grid = {0.5, 1.0, 2.0, 4.0, 8.0};
  for (double c_p : {0.0, 0.01, 1.0}) {
    for (double lambda : {0.5, 2.0, 8.0}) {
      PricePolicy policy;
      policy.fixed_cost = c_p;
      policy.lambda = lambda;
      ValuationReport report = PriceBundle(leaks, policy, BundleMode::kMarginal);
      report.sweep = LambdaSweep(leaks, c_p, grid);
      std::vector<double> totals;
      double bundle = 0.0;
      for (std::size_t i = 0; i < leaks.size(); ++i) {
        const double expected = c_p + lambda * leaks[i].mi_reported.value();
        if (report.entries[i].total != expected) ++mismatches;
        totals.push_back(report.entries[i].total);
        bundle += expected;
      }
      if (report.bundle_total != bundle) ++mismatches;
      const auto doc = nlohmann::json::parse(SerializeValuationReport(report, RunMetadata{}));
      for (std::size_t i = 0; i < leaks.size(); ++i) {
        const double serialized = doc["channels"][i]["total"];
        if (serialized != RoundHalfEven(totals[i], policy.rounding)) ++mismatches;
      }
      // Affine in lambda: equal slopes between successive grid points.
      const SweepTable& sweep = *report.sweep;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        for (std::size_t i = 0; i < leaks.size(); ++i) {
          const double expected = c_p + grid[g] * leaks[i].mi_reported.value();
          if (std::abs(sweep.totals[g][i] - expected) > 1e-12) ++mismatches;
        }
        const auto ranking = Ranking(sweep.totals[g]);
        if (reference.empty()) reference = ranking;
        if (ranking != reference) ++ranking_changes;
      }
      if (Ranking(totals) != reference) ++ranking_changes;
    }
  }
  Outcome o;
  o.pass = mismatches == 0 && ranking_changes == 0;
  o.detail = std::to_string(leaks.size()) + " fixture channels x 9 policies x 5 grid points: " +
             std::to_string(mismatches) + " price mismatches, " +
             std::to_string(ranking_changes) + " ranking changes";
  return o;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int RunBinary(const std::string& command, const fs::path& config) {
  const std::string line = std::string("\"") + LEAKPRICE_BINARY + "\" " + command +
                           " --quiet --config \"" + config.string() + "\" > /dev/null 2>&1";
  const int status = std::system(line.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome EndToEndDeterminism() {
  const fs::path dir = fs::temp_directory_path() / "leakprice_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const auto& entry : fs::directory_iterator(LEAKPRICE_DEMO_DIR)) {
    if (entry.is_regular_file()) fs::copy_file(entry.path(), dir / entry.path().filename());
  }
  auto config = nlohmann::ordered_json::parse(ReadFile(dir / "audit.json"));
  auto write_config = [&](const nlohmann::ordered_json& doc, const std::string& name) {
    std::ofstream(dir / name) << doc.dump(2);
    return dir / name;
  };

  const fs::path report = dir / "out/audit" / cli::kValuationReportName;
  const int first_exit = RunBinary("audit", dir / "audit.json");
  const std::string first = ReadFile(report);
  const int second_exit = RunBinary("audit", dir / "audit.json");
  const bool identical = !first.empty() && first == ReadFile(report);
  fs::remove_all(dir / "out");

  // Validation: data missing a protected column.
  {
    std::istringstream in(ReadFile(dir / "records.csv"));
    std::ofstream out(dir / "no_gender.csv");
    for (std::string line; std::getline(in, line);) {
      const auto a = line.find(',', line.find(',') + 1);
      const auto b = line.find(',', a + 1);
      out << line.substr(0, a) << line.substr(b) << "\n";
    }
  }
  auto bad_data = config;
  bad_data["data"] = "no_gender.csv";
  const int validation_exit = RunBinary("audit", write_config(bad_data, "v.json"));

  std::ofstream(dir / "blocker") << "file\n";
  auto bad_output = config;
  bad_output["output_dir"] = "blocker/out";
  const int io_exit = RunBinary("audit", write_config(bad_output, "io.json"));
  const bool no_outputs = !fs::exists(dir / "out");

  // Per-channel estimation failures still yield a complete report that lists
  // every failed channel.
  auto too_few = config;
  too_few["estimator"]["min_rows"] = 1'000'000;
  const int estimation_exit = RunBinary("estimate", write_config(too_few, "e.json"));
  const auto failed = nlohmann::json::parse(
      ReadFile(dir / "out/audit" / cli::kLeakageReportName), nullptr, false);
  const bool failures_listed = !failed.is_discarded() && failed["channels"].empty() &&
                               failed["failures"].size() == 4;
  fs::remove_all(dir / "out");

  cli::CommandOptions options;
  options.config_path = dir / "audit.json";
  options.quiet = true;
  options.estimate = [](const RecordBatch&, std::string_view, const AttributeSchema&,
                        const EstimatorConfig&) -> LeakageEstimate {
    throw Error(ErrorCode::kInternalConsistency, "injected");
  };
  std::ostringstream sink;
  const int internal_exit = cli::RunAudit(options, sink, sink);
  const bool no_outputs_after_internal = !fs::exists(dir / "out");
  fs::remove_all(dir);

  Outcome o;
  o.pass = first_exit == 0 && second_exit == 0 && identical && validation_exit == 2 &&
           io_exit == 3 && estimation_exit == 4 && internal_exit == 5 && no_outputs &&
           failures_listed && no_outputs_after_internal;
  o.detail = std::string("reports ") + (identical ? "byte-identical" : "DIFFER") +
             "; exit codes ok=" + std::to_string(first_exit) +
             " validation=" + std::to_string(validation_exit) +
             " io=" + std::to_string(io_exit) +
             " estimation=" + std::to_string(estimation_exit) +
             " internal=" + std::to_string(internal_exit) +
             (no_outputs && no_outputs_after_internal ? "; no files on failure"
                                                      : "; FILES LEFT ON FAILURE") +
             (failures_listed ? "; estimation failures listed" : "; FAILURES NOT LISTED");
  return o;
}

struct Criterion {
  const char* name;
  Outcome (*run)();
};

}  // namespace
}  // namespace leakprice

int main() {
  using namespace leakprice;
  const Criterion criteria[] = {
      {"oracle equivalence", OracleEquivalence},
      {"axiom suite", AxiomSuite},
      {"known values", KnownValues},
      {"estimator consistency", EstimatorConsistency},
      {"finite-sample zero surcharge", FiniteSampleZeroSurcharge},
      {"pricing contract", PricingContract},
      {"end-to-end determinism and exit codes", EndToEndDeterminism},
  };
  int failures = 0;
  int index = 0;
  for (const auto& criterion : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what()};
    }
    std::printf("[%s] criterion %d %s: %s\n", outcome.pass ? "PASS" : "FAIL", index,
                criterion.name, outcome.detail.c_str());
    std::fflush(stdout);
    failures += outcome.pass ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
