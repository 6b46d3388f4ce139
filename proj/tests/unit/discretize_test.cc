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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "leakprice/random.h"
#include "oracle/test_util.h"

namespace leakprice {
namespace {

using ::leakprice::testing::CodeOf;
using ::testing::ElementsAre;
using ::testing::IsEmpty;

TEST(DiscretizeTest, EqualWidthMidpointSplit) {
  const std::vector<double> v = {1, 2, 3, 4};
  const auto d = Discretize(v, BinSpec::EqualWidth(2));
  EXPECT_THAT(d.cells, ElementsAre(0, 0, 1, 1));
  EXPECT_THAT(d.edges, ElementsAre(1.0, 2.5, 4.0));
  EXPECT_EQ(d.bin_count, 2u);
  EXPECT_THAT(d.warnings, IsEmpty());
}

TEST(DiscretizeTest, EqualWidthBinsAreRightOpenExceptLast) {
  const std::vector<double> v = {0, 1, 2, 3, 4};
  const auto d = Discretize(v, BinSpec::EqualWidth(2));
  EXPECT_THAT(d.cells, ElementsAre(0, 0, 1, 1, 1));
}

TEST(DiscretizeTest, ConstantColumnCollapsesWithWarning) {
  const std::vector<double> v = {5, 5, 5};
  const auto d = Discretize(v, BinSpec::EqualFrequency(3));
  EXPECT_TRUE(d.constant_column);
  EXPECT_EQ(d.bin_count, 1u);
  EXPECT_THAT(d.cells, ElementsAre(0, 0, 0));
  EXPECT_EQ(d.warnings.size(), 1u);
  EXPECT_EQ(CodeOf([&] {
              Discretize(v, BinSpec::EqualFrequency(3), {.require_multiple_bins = true});
            }),
            ErrorCode::kConstantColumn);
  // A single requested bin is never an error.
  EXPECT_EQ(Discretize(v, BinSpec::EqualWidth(1), {.require_multiple_bins = true}).bin_count,
            1u);
}

TEST(DiscretizeTest, EqualFrequencyTiesGoToLowerBin) {
  const std::vector<double> v = {4, 2, 1, 2, 3, 2};
  const auto d = Discretize(v, BinSpec::EqualFrequency(2));
  EXPECT_THAT(d.cells, ElementsAre(1, 0, 0, 0, 1, 0));
  EXPECT_THAT(d.edges, ElementsAre(1.0, 2.0, 4.0));
}

TEST(DiscretizeTest, EqualFrequencyMergesDuplicateEdges) {
  const std::vector<double> v = {1, 1, 1, 1, 1, 2};
  const auto d = Discretize(v, BinSpec::EqualFrequency(3));
  EXPECT_EQ(d.bin_count, 2u);
  EXPECT_THAT(d.cells, ElementsAre(0, 0, 0, 0, 0, 1));
  EXPECT_EQ(d.warnings.size(), 1u);
}

TEST(DiscretizeTest, EqualFrequencyOnNormalDraws) {
  // Box-Muller on the deterministic uniform stream.
  std::mt19937_64 rng(2026);
  std::vector<double> v;
  while (v.size() < 10'000) {
    const double u1 = 1.0 - UniformUnit(rng);
    const double u2 = UniformUnit(rng);
    v.push_back(std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2));
  }
  const auto d = Discretize(v, BinSpec::EqualFrequency(4));
  ASSERT_EQ(d.bin_count, 4u);
  std::vector<std::size_t> counts(4, 0);
  for (std::size_t c : d.cells) ++counts[c];
  EXPECT_THAT(counts, ElementsAre(2500, 2500, 2500, 2500));
}

TEST(DiscretizeTest, ExplicitEdgesClampWithCount) {
  const std::vector<double> v = {-1, 0, 5, 6, 10, 12};
  const auto d = Discretize(v, BinSpec::Explicit({0, 6, 10}));
  EXPECT_THAT(d.cells, ElementsAre(0, 0, 0, 1, 1, 1));
  EXPECT_EQ(d.clamped_count, 2u);
  EXPECT_EQ(d.warnings.size(), 1u);
  EXPECT_THAT(d.edges, ElementsAre(0.0, 6.0, 10.0));
}

TEST(DiscretizeTest, InvalidSpecsAndInputs) {
  const std::vector<double> v = {1, 2, 3};
  EXPECT_EQ(CodeOf([&] { Discretize(v, BinSpec::EqualWidth(0)); }),
            ErrorCode::kInvalidBinSpec);
  EXPECT_EQ(CodeOf([&] { Discretize(v, BinSpec::EqualWidth(4)); }),
            ErrorCode::kInvalidBinSpec);
  EXPECT_EQ(CodeOf([&] { Discretize(v, BinSpec::Explicit({1, 1, 2})); }),
            ErrorCode::kInvalidBinSpec);
  EXPECT_EQ(CodeOf([&] { Discretize(v, BinSpec::Explicit({1})); }),
            ErrorCode::kInvalidBinSpec);
  EXPECT_EQ(CodeOf([] { Discretize(std::vector<double>{}, BinSpec::EqualWidth(1)); }),
            ErrorCode::kTooFewRows);
  const std::vector<double> inf = {1, INFINITY};
  EXPECT_EQ(CodeOf([&] { Discretize(inf, BinSpec::EqualWidth(1)); }),
            ErrorCode::kBadNumber);
  EXPECT_EQ(CodeOf([] { ParseBinStrategy("quantile"); }), ErrorCode::kInvalidBinSpec);
}

// Every value lands in exactly one bin, whatever the strategy.
TEST(DiscretizeProperty, CellsWithinRange) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + UniformBelow(rng, 200);
    std::vector<double> v(n);
    for (double& x : v) x = std::round(UniformUnit(rng) * 20.0) / 2.0;
    const std::size_t b = 1 + UniformBelow(rng, n);
    for (const BinSpec& spec : {BinSpec::EqualWidth(b), BinSpec::EqualFrequency(b),
                                BinSpec::Explicit({2.0, 5.0, 7.5})}) {
      const auto d = Discretize(v, spec);
      ASSERT_EQ(d.cells.size(), n);
      ASSERT_EQ(d.edges.size(), d.bin_count + 1);
      for (std::size_t c : d.cells) ASSERT_LT(c, d.bin_count);
    }
  }
}

}  // namespace
}  // namespace leakprice
