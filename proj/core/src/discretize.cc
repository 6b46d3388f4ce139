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

#include "leakprice/discretize.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "leakprice/error.h"

namespace leakprice {

std::string_view BinStrategyName(BinStrategy strategy) {
  switch (strategy) {
    case BinStrategy::kEqualWidth: return "equal-width";
    case BinStrategy::kEqualFrequency: return "equal-frequency";
    case BinStrategy::kExplicitEdges: return "explicit-edges";
  }
  return "unknown";
}

BinStrategy ParseBinStrategy(std::string_view name) {
  if (name == "equal-width") return BinStrategy::kEqualWidth;
  if (name == "equal-frequency") return BinStrategy::kEqualFrequency;
  if (name == "explicit-edges") return BinStrategy::kExplicitEdges;
  throw Error(ErrorCode::kInvalidBinSpec,
              "unknown bin strategy '" + std::string(name) + "'");
}

BinSpec BinSpec::EqualWidth(std::size_t bins) {
  return {BinStrategy::kEqualWidth, bins, {}};
}

BinSpec BinSpec::EqualFrequency(std::size_t bins) {
  return {BinStrategy::kEqualFrequency, bins, {}};
}

BinSpec BinSpec::Explicit(std::vector<double> edges) {
  const std::size_t bins = edges.empty() ? 0 : edges.size() - 1;
  return {BinStrategy::kExplicitEdges, bins, std::move(edges)};
}

void ValidateBinSpec(const BinSpec& spec) {
  if (spec.strategy != BinStrategy::kExplicitEdges) {
    if (spec.bin_count < 1) {
      throw Error(ErrorCode::kInvalidBinSpec, "bin_count must be at least 1");
    }
    return;
  }
  if (spec.edges.size() < 2) {
    throw Error(ErrorCode::kInvalidBinSpec,
                "explicit binning needs at least two edges");
  }
  for (std::size_t i = 0; i < spec.edges.size(); ++i) {
    if (!std::isfinite(spec.edges[i]) ||
        (i > 0 && !(spec.edges[i] > spec.edges[i - 1]))) {
      throw Error(ErrorCode::kInvalidBinSpec,
                  "explicit edges must be finite and strictly increasing");
    }
  }
}

namespace {

Discretization SingleBin(std::span<const double> values, double value,
                         const BinSpec& spec,
                         const DiscretizeOptions& options) {
  if (options.require_multiple_bins && spec.bin_count > 1) {
    throw Error(ErrorCode::kConstantColumn,
                "column is constant; cannot form " +
                    std::to_string(spec.bin_count) + " bins");
  }
  Discretization out;
  out.cells.assign(values.size(), 0);
  out.edges = {value, value};
  out.bin_count = 1;
  out.constant_column = true;
  if (spec.bin_count > 1) {
    out.warnings.push_back("constant column collapsed to a single bin");
  }
  return out;
}

// Interior edges -> cells, with ties on an edge sent up (right-open bins) or
// down (equal-frequency rule).
std::vector<std::size_t> AssignCells(std::span<const double> values,
                                     const std::vector<double>& interior,
                                     bool ties_go_down) {
  std::vector<std::size_t> cells(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto it = ties_go_down
                        ? std::lower_bound(interior.begin(), interior.end(), values[i])
                        : std::upper_bound(interior.begin(), interior.end(), values[i]);
    cells[i] = static_cast<std::size_t>(it - interior.begin());
  }
  return cells;
}

}  // namespace

Discretization Discretize(std::span<const double> values, const BinSpec& spec,
                          const DiscretizeOptions& options) {
  ValidateBinSpec(spec);
  if (values.empty()) {
    throw Error(ErrorCode::kTooFewRows, "cannot discretize an empty column");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kBadNumber, "column contains a non-finite value");
    }
  }
  if (spec.strategy != BinStrategy::kExplicitEdges &&
      spec.bin_count > values.size()) {
    throw Error(ErrorCode::kInvalidBinSpec,
                "bin_count " + std::to_string(spec.bin_count) +
                    " exceeds the " + std::to_string(values.size()) +
                    " available values");
  }

  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *min_it;
  const double hi = *max_it;

  Discretization out;
  switch (spec.strategy) {
    case BinStrategy::kEqualWidth: {
      if (lo == hi) return SingleBin(values, lo, spec, options);
      const std::size_t b = spec.bin_count;
      std::vector<double> interior;
      for (std::size_t i = 1; i < b; ++i) {
        interior.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                    static_cast<double>(b));
      }
      out.cells = AssignCells(values, interior, /*ties_go_down=*/false);
      out.edges.push_back(lo);
      out.edges.insert(out.edges.end(), interior.begin(), interior.end());
      out.edges.push_back(hi);
      out.bin_count = b;
      break;
    }
    case BinStrategy::kEqualFrequency: {
      if (lo == hi) return SingleBin(values, lo, spec, options);
      std::vector<double> sorted(values.begin(), values.end());
      std::sort(sorted.begin(), sorted.end());
      const std::size_t n = sorted.size();
      const std::size_t b = spec.bin_count;
      std::vector<double> interior;
      for (std::size_t i = 1; i < b; ++i) {
        // Order statistic of rank ceil(i*n/b), one-based.
        const std::size_t rank = (i * n + b - 1) / b;
        const double edge = sorted[rank - 1];
        // An edge at the maximum would leave an empty top bin.
        if (edge < hi && (interior.empty() || edge > interior.back())) {
          interior.push_back(edge);
        }
      }
      if (interior.size() + 1 < b) {
        out.warnings.push_back(
            "tied values merged " + std::to_string(b - interior.size() - 1) +
            " equal-frequency bin(s)");
      }
      out.cells = AssignCells(values, interior, /*ties_go_down=*/true);
      out.edges.push_back(lo);
      out.edges.insert(out.edges.end(), interior.begin(), interior.end());
      out.edges.push_back(hi);
      out.bin_count = interior.size() + 1;
      break;
    }
    case BinStrategy::kExplicitEdges: {
      const std::vector<double>& edges = spec.edges;
      const std::vector<double> interior(edges.begin() + 1, edges.end() - 1);
      out.cells = AssignCells(values, interior, /*ties_go_down=*/false);
      for (double v : values) {
        if (v < edges.front() || v > edges.back()) ++out.clamped_count;
      }
      if (out.clamped_count > 0) {
        out.warnings.push_back(std::to_string(out.clamped_count) +
                               " value(s) outside the explicit edges were "
                               "clamped into the end bins");
      }
      out.edges = edges;
      out.bin_count = edges.size() - 1;
      break;
    }
  }
  return out;
}

}  // namespace leakprice
