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

#ifndef LEAKPRICE_TESTS_ORACLE_TEST_UTIL_H_
#define LEAKPRICE_TESTS_ORACLE_TEST_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leakprice/error.h"
#include "leakprice/records.h"
#include "leakprice/schema.h"

namespace leakprice::testing {

// Code of the leakprice::Error thrown by `fn`, or nullopt if none was thrown.
template <typename Fn>
std::optional<ErrorCode> CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Protected dims d0, d1, ... with levels "0".."k-1", and categorical channels
// with levels "0".."k-1" in the given order, followed by continuous channels.
AttributeSchema MakeSchema(
    const std::vector<std::size_t>& dim_cards,
    const std::vector<std::pair<std::string, std::size_t>>& categorical,
    const std::vector<std::pair<std::string, BinSpec>>& continuous = {});

CategoricalColumn CategoricalFromCells(const std::vector<std::size_t>& cells,
                                       std::size_t arity);

// Batch whose protected codes come from unflattening `profiles`.
RecordBatch MakeBatch(const AttributeSchema& schema,
                      const std::vector<std::uint64_t>& profiles,
                      std::vector<ChannelColumn> channels);

}  // namespace leakprice::testing

#endif  // LEAKPRICE_TESTS_ORACLE_TEST_UTIL_H_
