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

#ifndef LEAKPRICE_JOINT_TABLE_H_
#define LEAKPRICE_JOINT_TABLE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace leakprice {

// Tables with more cells than this are stored sparsely.
inline constexpr std::size_t kDenseCellLimit = 10'000;

// Tolerance on total mass of a normalized table or probability vector.
inline constexpr double kNormalizationTolerance = 1e-9;

// P(X, S): probability mass over (feature cell, profile cell) pairs. Rows are
// feature cells, columns are profile cells. Zero-mass rows and columns are
// kept. Immutable after construction.
class JointTable {
 public:
  struct Entry {
    std::size_t x;
    std::size_t s;
    double mass;
  };

  // `weights` is row-major, x_arity * s_arity long. Throws kShapeMismatch,
  // kNegativeMass (negative or non-finite weight) or kAllZero.
  static JointTable FromWeights(std::size_t x_arity, std::size_t s_arity,
                                std::span<const double> weights);
  // Triplet form; repeated (x, s) pairs are summed.
  static JointTable FromEntries(std::size_t x_arity, std::size_t s_arity,
                                std::vector<Entry> entries);
  // Contingency counts over paired observations.
  static JointTable FromObservations(std::size_t x_arity, std::size_t s_arity,
                                     std::span<const std::size_t> x_cells,
                                     std::span<const std::uint64_t> s_cells);

  std::size_t x_arity() const { return x_arity_; }
  std::size_t s_arity() const { return s_arity_; }
  bool is_sparse() const { return sparse_; }
  // Sum of the weights before normalization.
  double pre_normalization_total() const { return raw_total_; }

  double mass(std::size_t x, std::size_t s) const;

  // Visits every strictly positive cell, ordered by x then s.
  template <typename Fn>
  void ForEachNonzero(Fn&& fn) const {
    if (sparse_) {
      for (const Entry& e : entries_) fn(e.x, e.s, e.mass);
      return;
    }
    for (std::size_t x = 0; x < x_arity_; ++x) {
      for (std::size_t s = 0; s < s_arity_; ++s) {
        const double m = dense_[x * s_arity_ + s];
        if (m > 0.0) fn(x, s, m);
      }
    }
  }

  std::vector<double> XMarginal() const;
  std::vector<double> SMarginal() const;
  std::size_t nonzero_count() const;

  JointTable Transposed() const;
  std::vector<double> ToDense() const;

 private:
  JointTable() = default;
  static JointTable Build(std::size_t x_arity, std::size_t s_arity,
                          std::vector<Entry> entries);

  std::size_t x_arity_ = 0;
  std::size_t s_arity_ = 0;
  bool sparse_ = false;
  double raw_total_ = 0.0;
  std::vector<double> dense_;
  std::vector<Entry> entries_;  // sorted by (x, s), positive masses only
};

}  // namespace leakprice

#endif  // LEAKPRICE_JOINT_TABLE_H_
