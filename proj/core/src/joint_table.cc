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

#include "leakprice/joint_table.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "leakprice/error.h"

namespace leakprice {
namespace {

void CheckShape(std::size_t x_arity, std::size_t s_arity) {
  if (x_arity == 0 || s_arity == 0) {
    throw Error(ErrorCode::kShapeMismatch, "joint table needs x_arity >= 1 and s_arity >= 1");
  }
}

void CheckWeight(double w) {
  if (!std::isfinite(w) || w < 0.0) {
    throw Error(ErrorCode::kNegativeMass,
                "joint weight " + std::to_string(w) +
                    " is negative or not finite");
  }
}

bool WantsSparse(std::size_t x_arity, std::size_t s_arity) {
  return s_arity > kDenseCellLimit / x_arity;
}

}  // namespace

JointTable JointTable::FromWeights(std::size_t x_arity, std::size_t s_arity,
                                   std::span<const double> weights) {
  CheckShape(x_arity, s_arity);
  if (weights.size() / s_arity != x_arity || weights.size() % s_arity != 0) {
    throw Error(ErrorCode::kShapeMismatch,
                "expected " + std::to_string(x_arity) + "x" +
                    std::to_string(s_arity) + " weights, got " +
                    std::to_string(weights.size()));
  }
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    CheckWeight(weights[i]);
    if (weights[i] > 0.0) {
      entries.push_back({i / s_arity, i % s_arity, weights[i]});
    }
  }
  return Build(x_arity, s_arity, std::move(entries));
}

JointTable JointTable::FromEntries(std::size_t x_arity, std::size_t s_arity,
                                   std::vector<Entry> entries) {
  CheckShape(x_arity, s_arity);
  for (const Entry& e : entries) {
    if (e.x >= x_arity || e.s >= s_arity) {
      throw Error(ErrorCode::kShapeMismatch, "entry outside the table shape");
    }
    CheckWeight(e.mass);
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.x != b.x ? a.x < b.x : a.s < b.s;
  });
  std::vector<Entry> merged;
  for (const Entry& e : entries) {
    if (e.mass == 0.0) continue;
    if (!merged.empty() && merged.back().x == e.x && merged.back().s == e.s) {
      merged.back().mass += e.mass;
    } else {
      merged.push_back(e);
    }
  }
  return Build(x_arity, s_arity, std::move(merged));
}

JointTable JointTable::FromObservations(std::size_t x_arity,
                                        std::size_t s_arity,
                                        std::span<const std::size_t> x_cells,
                                        std::span<const std::uint64_t> s_cells) {
  CheckShape(x_arity, s_arity);
  if (x_cells.size() != s_cells.size()) {
    throw Error(ErrorCode::kShapeMismatch, "observation columns differ in length");
  }
  for (std::size_t i = 0; i < x_cells.size(); ++i) {
    if (x_cells[i] >= x_arity || s_cells[i] >= s_arity) {
      throw Error(ErrorCode::kShapeMismatch, "observation outside the table shape");
    }
  }
  if (!WantsSparse(x_arity, s_arity)) {
    std::vector<double> counts(x_arity * s_arity, 0.0);
    for (std::size_t i = 0; i < x_cells.size(); ++i) {
      counts[x_cells[i] * s_arity + s_cells[i]] += 1.0;
    }
    return FromWeights(x_arity, s_arity, counts);
  }
  std::unordered_map<std::uint64_t, double> counts;
  for (std::size_t i = 0; i < x_cells.size(); ++i) {
    counts[static_cast<std::uint64_t>(x_cells[i]) * s_arity + s_cells[i]] += 1.0;
  }
  std::vector<Entry> entries;
  entries.reserve(counts.size());
  for (const auto& [key, count] : counts) {
    entries.push_back({static_cast<std::size_t>(key / s_arity),
                       static_cast<std::size_t>(key % s_arity), count});
  }
  return FromEntries(x_arity, s_arity, std::move(entries));
}

// `entries` arrive sorted by (x, s), unique, strictly positive.
JointTable JointTable::Build(std::size_t x_arity, std::size_t s_arity,
                             std::vector<Entry> entries) {
  double total = 0.0;
  for (const Entry& e : entries) total += e.mass;
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kAllZero, "joint table has no positive mass");
  }
  JointTable table;
  table.x_arity_ = x_arity;
  table.s_arity_ = s_arity;
  table.raw_total_ = total;
  table.sparse_ = WantsSparse(x_arity, s_arity);
  for (Entry& e : entries) e.mass /= total;
  if (table.sparse_) {
    table.entries_ = std::move(entries);
  } else {
    table.dense_.assign(x_arity * s_arity, 0.0);
    for (const Entry& e : entries) table.dense_[e.x * s_arity + e.s] = e.mass;
  }
  return table;
}

double JointTable::mass(std::size_t x, std::size_t s) const {
  if (x >= x_arity_ || s >= s_arity_) {
    throw Error(ErrorCode::kCoordinateOutOfRange, "cell outside the joint table");
  }
  if (!sparse_) return dense_[x * s_arity_ + s];
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), Entry{x, s, 0.0},
      [](const Entry& a, const Entry& b) {
        return a.x != b.x ? a.x < b.x : a.s < b.s;
      });
  return (it != entries_.end() && it->x == x && it->s == s) ? it->mass : 0.0;
}

std::vector<double> JointTable::XMarginal() const {
  std::vector<double> marginal(x_arity_, 0.0);
  ForEachNonzero([&](std::size_t x, std::size_t, double m) { marginal[x] += m; });
  return marginal;
}

std::vector<double> JointTable::SMarginal() const {
  std::vector<double> marginal(s_arity_, 0.0);
  ForEachNonzero([&](std::size_t, std::size_t s, double m) { marginal[s] += m; });
  return marginal;
}

std::size_t JointTable::nonzero_count() const {
  std::size_t count = 0;
  ForEachNonzero([&](std::size_t, std::size_t, double) { ++count; });
  return count;
}

JointTable JointTable::Transposed() const {
  std::vector<Entry> flipped;
  ForEachNonzero([&](std::size_t x, std::size_t s, double m) {
    flipped.push_back({s, x, m});
  });
  JointTable t = FromEntries(s_arity_, x_arity_, std::move(flipped));
  t.raw_total_ = raw_total_;
  return t;
}

std::vector<double> JointTable::ToDense() const {
  std::vector<double> out(x_arity_ * s_arity_, 0.0);
  ForEachNonzero([&](std::size_t x, std::size_t s, double m) {
    out[x * s_arity_ + s] = m;
  });
  return out;
}

}  // namespace leakprice
