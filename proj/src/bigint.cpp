// Copyright 2026 The ldpjoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ldpjoint/bigint.hpp"

#include <cstdio>

#include "ldpjoint/error.hpp"

namespace ldpjoint {

std::string to_scientific(const BigCount& value, int significant) {
  if (value < 0) {
    throw Error(ErrorCode::kOutOfRange, "scientific format expects a count");
  }
  if (significant < 1) {
    throw Error(ErrorCode::kOutOfRange, "need at least one significant digit");
  }
  std::string digits = value.str();
  int exponent = static_cast<int>(digits.size()) - 1;
  if (static_cast<int>(digits.size()) > significant) {
    bool round_up = digits[significant] >= '5';
    digits.resize(significant);
    if (round_up) {
      int i = significant - 1;
      while (i >= 0 && digits[i] == '9') {
        digits[i] = '0';
        --i;
      }
      if (i < 0) {
        digits.insert(digits.begin(), '1');
        digits.resize(significant);
        ++exponent;
      } else {
        ++digits[i];
      }
    }
  } else {
    digits.append(significant - digits.size(), '0');
  }
  std::string out;
  out += digits[0];
  if (significant > 1) {
    out += '.';
    out.append(digits.begin() + 1, digits.end());
  }
  char tail[16];
  std::snprintf(tail, sizeof(tail), "e+%02d", exponent);
  if (exponent < 0) {
    std::snprintf(tail, sizeof(tail), "e-%02d", -exponent);
  }
  out += tail;
  return out;
}

}  // namespace ldpjoint
