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

#include <gtest/gtest.h>

namespace ldpjoint {
namespace {

TEST(BigintTest, SmallValues) {
  EXPECT_EQ(to_scientific(BigCount(1)), "1.000000e+00");
  EXPECT_EQ(to_scientific(BigCount(9)), "9.000000e+00");
  EXPECT_EQ(to_scientific(BigCount(10)), "1.000000e+01");
  EXPECT_EQ(to_scientific(BigCount(999)), "9.990000e+02");
}

TEST(BigintTest, SevenSignificantDigitsWithRounding) {
  EXPECT_EQ(to_scientific(BigCount(12345678)), "1.234568e+07");
  EXPECT_EQ(to_scientific(BigCount(12345644)), "1.234564e+07");
  // Round half up.
  EXPECT_EQ(to_scientific(BigCount(12345650)), "1.234565e+07");
  EXPECT_EQ(to_scientific(BigCount(12345655)), "1.234566e+07");
}

TEST(BigintTest, RoundingCarryBumpsExponent) {
  EXPECT_EQ(to_scientific(BigCount(99999995)), "1.000000e+08");
  EXPECT_EQ(to_scientific(BigCount(99999994)), "9.999999e+07");
}

TEST(BigintTest, DatasetDomainSizes) {
  // 9 * 16 * 7 * 15 * 6 * 5 * 2 * 2 and 9 * 5 * 4 * 4 * 3 * 5 * 4 * 3 * 3.
  EXPECT_EQ(to_scientific(BigCount(1814400)), "1.814400e+06");
  EXPECT_EQ(to_scientific(BigCount(64800)), "6.480000e+04");
  EXPECT_EQ(to_scientific(BigCount(34560000)), "3.456000e+07");
}

TEST(BigintTest, HugeValueKeepsExactPrefix) {
  BigCount big = 1;
  for (int i = 0; i < 44; ++i) big *= 10;
  big = big / 10000000 * 17115046;  // 1.7115046... * 10^44
  EXPECT_EQ(to_scientific(big), "1.711505e+44");
}

TEST(BigintTest, ConvertsToDoubleForPlotting) {
  BigCount big("1000000000000000000000");
  EXPECT_NEAR(big.convert_to<double>(), 1e21, 1e6);
}

TEST(BigintTest, CustomPrecision) {
  EXPECT_EQ(to_scientific(BigCount(12345678), 3), "1.23e+07");
  EXPECT_EQ(to_scientific(BigCount(12355678), 3), "1.24e+07");
  EXPECT_EQ(to_scientific(BigCount(7), 1), "7e+00");
}

}  // namespace
}  // namespace ldpjoint
