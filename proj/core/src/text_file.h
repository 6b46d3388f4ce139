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

#ifndef LEAKPRICE_SRC_TEXT_FILE_H_
#define LEAKPRICE_SRC_TEXT_FILE_H_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "leakprice/error.h"

namespace leakprice::internal {

inline std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoReadFailed,
                "cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::kIoReadFailed, "read error on '" + path.string() + "'");
  }
  return buffer.str();
}

}  // namespace leakprice::internal

#endif  // LEAKPRICE_SRC_TEXT_FILE_H_
