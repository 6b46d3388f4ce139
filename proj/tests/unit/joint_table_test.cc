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

#include <cmath>
#include <random>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "leakprice/random.h"
#include "oracle/test_util.h"

namespace leakprice {
namespace {

using ::leakprice::testing::CodeOf;
using ::testing::DoubleNear;
using ::testing::ElementsAre;

TEST(JointTableTest, UniformWeightsNormalize) {
  const std::vector<double> w = {2, 2, 2, 2};
  const auto t = JointTable::FromWeights(2, 2, w);
  EXPECT_THAT(t.ToDense(), ElementsAre(0.25, 0.25, 0.25, 0.25));
  EXPECT_DOUBLE_EQ(t.pre_normalization_total(), 8.0);
}

TEST(JointTableTest, DiagonalWeightsKeepZeros) {
  const std::vector<double> w = {1, 0, 0, 1};
  const auto t = JointTable::FromWeights(2, 2, w);
  EXPECT_THAT(t.ToDense(), ElementsAre(0.5, 0.0, 0.0, 0.5));
  EXPECT_EQ(t.nonzero_count(), 2u);
}

TEST(JointTableTest, RejectsNegativeAndAllZero) {
  const std::vector<double> negative = {0.5, -0.1, 0.3, 0.3};
  EXPECT_EQ(CodeOf([&] { JointTable::FromWeights(2, 2, negative); }),
            ErrorCode::kNegativeMass);
  const std::vector<double> nan = {0.5, std::nan(""), 0.3, 0.3};
  EXPECT_EQ(CodeOf([&] { JointTable::FromWeights(2, 2, nan); }),
            ErrorCode::kNegativeMass);
  const std::vector<double> zeros = {0, 0, 0, 0};
  EXPECT_EQ(CodeOf([&] { JointTable::FromWeights(2, 2, zeros); }),
            ErrorCode::kAllZero);
}

TEST(JointTableTest, RejectsBadShape) {
  const std::vector<double> w = {1, 2, 3};
  EXPECT_EQ(CodeOf([&] { JointTable::FromWeights(2, 2, w); }),
            ErrorCode::kShapeMismatch);
  EXPECT_EQ(CodeOf([&] { JointTable::FromWeights(0, 3, w); }),
            ErrorCode::kShapeMismatch);
}

TEST(JointTableTest, ZeroRowsAndColumnsRetained) {
  const std::vector<double> w = {0, 0, 0, 0, 3, 0, 0, 1, 0};
  const auto t = JointTable::FromWeights(3, 3, w);
  EXPECT_EQ(t.x_arity(), 3u);
  EXPECT_EQ(t.s_arity(), 3u);
  EXPECT_THAT(t.XMarginal(), ElementsAre(0.0, 0.75, 0.25));
  EXPECT_THAT(t.SMarginal(), ElementsAre(0.0, 1.0, 0.0));
}

TEST(JointTableTest, EntriesAreSummed) {
  const auto t = JointTable::FromEntries(2, 2, {{0, 1, 1.0}, {0, 1, 1.0}, {1, 0, 2.0}});
  EXPECT_THAT(t.ToDense(), ElementsAre(0.0, 0.5, 0.5, 0.0));
}

TEST(JointTableTest, ObservationsCount) {
  const std::vector<std::size_t> x = {0, 0, 1, 1};
  const std::vector<std::uint64_t> s = {0, 1, 0, 1};
  const auto t = JointTable::FromObservations(2, 2, x, s);
  EXPECT_THAT(t.ToDense(), ElementsAre(0.25, 0.25, 0.25, 0.25));
  EXPECT_DOUBLE_EQ(t.pre_normalization_total(), 4.0);
}

TEST(JointTableTest, LargeTablesAreSparseAndAgreeWithDense) {
  std::mt19937_64 rng(5);
  std::vector<std::size_t> x;
  std::vector<std::uint64_t> s;
  for (int i = 0; i < 5000; ++i) {
    x.push_back(UniformBelow(rng, 3));
    s.push_back(UniformBelow(rng, 20'000));
  }
  const auto sparse = JointTable::FromObservations(3, 20'000, x, s);
  EXPECT_TRUE(sparse.is_sparse());
  const auto dense_copy = sparse.ToDense();
  double total = 0.0;
  for (std::size_t i = 0; i < 5000; ++i) {
    EXPECT_EQ(sparse.mass(x[i], s[i]), dense_copy[x[i] * 20'000 + s[i]]);
  }
  for (double m : dense_copy) total += m;
  EXPECT_THAT(total, DoubleNear(1.0, 1e-9));
  EXPECT_EQ(sparse.mass(2, 19'999), dense_copy[2 * 20'000 + 19'999]);
}

TEST(JointTableTest, TransposeSwapsAxes) {
  const std::vector<double> w = {1, 2, 3, 4, 5, 6};
  const auto t = JointTable::FromWeights(2, 3, w);
  const auto tt = t.Transposed();
  ASSERT_EQ(tt.x_arity(), 3u);
  ASSERT_EQ(tt.s_arity(), 2u);
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t s = 0; s < 3; ++s) EXPECT_DOUBLE_EQ(tt.mass(s, x), t.mass(x, s));
  }
}

// Normalization and marginal invariants over random weight tables.
TEST(JointTableProperty, NormalizedWithBoundedMarginals) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t nx = 1 + UniformBelow(rng, 12);
    const std::size_t ns = 1 + UniformBelow(rng, 12);
    std::vector<double> w(nx * ns);
    for (double& v : w) v = UniformUnit(rng) < 0.3 ? 0.0 : 1e3 * UniformUnit(rng);
    w[UniformBelow(rng, w.size())] = 1.0;
    const auto t = JointTable::FromWeights(nx, ns, w);
    double total = 0.0;
    for (double m : t.ToDense()) total += m;
    ASSERT_NEAR(total, 1.0, 1e-9);
    double px_total = 0.0, ps_total = 0.0;
    for (double p : t.XMarginal()) {
      ASSERT_GE(p, 0.0);
      ASSERT_LE(p, 1.0 + 1e-12);
      px_total += p;
    }
    for (double p : t.SMarginal()) {
      ASSERT_GE(p, 0.0);
      ASSERT_LE(p, 1.0 + 1e-12);
      ps_total += p;
    }
    ASSERT_NEAR(px_total, 1.0, 1e-9);
    ASSERT_NEAR(ps_total, 1.0, 1e-9);

    // Re-validating a normalized table changes no cell beyond 1e-12.
    const auto again = JointTable::FromWeights(nx, ns, t.ToDense());
    const auto a = t.ToDense();
    const auto b = again.ToDense();
    for (std::size_t i = 0; i < a.size(); ++i) ASSERT_NEAR(a[i], b[i], 1e-12);
  }
}

}  // namespace
}  // namespace leakprice
