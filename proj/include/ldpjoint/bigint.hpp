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

#ifndef LDPJOINT_BIGINT_HPP_
#define LDPJOINT_BIGINT_HPP_

#include <cstddef>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ldpjoint {

// Cross-attribute domain sizes overflow 64 bits on wide datasets, so they are
// carried as arbitrary-precision integers.
using BigCount = boost::multiprecision::cpp_int;

// Renders a nonnegative count as "1.711505e+44" style scientific notation
// with `significant` digits (round half up on the digit after the last kept).
std::string to_scientific(const BigCount& value, int significant = 7);

}  // namespace ldpjoint

#endif  // LDPJOINT_BIGINT_HPP_
