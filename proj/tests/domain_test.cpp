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

#include "ldpjoint/domain.hpp"

#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "testing_util.hpp"

namespace ldpjoint {
namespace {

using testing_util::expect_tensor_near;
using testing_util::make_pair_schema;
using testing_util::make_worked_true_data;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

TEST(DomainTest, MakeAttributeUsesNumericLabels) {
  const AttributeSchema a = make_attribute("x", 3);
  EXPECT_EQ(a.name, "x");
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a.categories[0], "0");
  EXPECT_EQ(a.categories[2], "2");
}

TEST(DomainTest, SchemaLookupAndDomainSize) {
  DatasetSchema schema;
  for (std::size_t d : {9, 16, 7, 15, 6, 5, 2, 2}) {
    schema.attributes.push_back(
        make_attribute("a" + std::to_string(schema.attribute_count()), d));
  }
  EXPECT_EQ(schema.index_of("a0"), 0u);
  EXPECT_EQ(schema.index_of("a7"), 7u);
  EXPECT_EQ(code_of([&] { schema.index_of("nope"); }),
            ErrorCode::kUnknownColumn);
  EXPECT_EQ(schema.domain_size(), BigCount(1814400));
}

TEST(DomainTest, SubsetValidation) {
  const DatasetSchema schema = make_pair_schema();
  const AttributeSubset by_name(schema, std::vector<std::string>{"B", "A"});
  EXPECT_EQ(by_name.indices(), (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(by_name.sizes(), (std::vector<std::size_t>{2, 2}));
  EXPECT_EQ(by_name.domain_size(), BigCount(4));

  EXPECT_EQ(code_of([&] { AttributeSubset(schema, std::vector<std::size_t>{}); }),
            ErrorCode::kSubsetMismatch);
  EXPECT_EQ(code_of([&] { AttributeSubset(schema, std::vector<std::size_t>{0, 0}); }),
            ErrorCode::kSubsetMismatch);
  EXPECT_EQ(code_of([&] { AttributeSubset(schema, std::vector<std::size_t>{0, 2}); }),
            ErrorCode::kSubsetMismatch);
}

TEST(DomainTest, AppendValidatesRecords) {
  CategoricalDataset data(make_pair_schema());
  data.append({0, 1});
  EXPECT_EQ(data.record_count(), 1u);
  EXPECT_EQ(data.cell(0, 1), 1u);
  EXPECT_EQ(code_of([&] { data.append({0}); }), ErrorCode::kShapeMismatch);
  EXPECT_EQ(code_of([&] { data.append({0, 2}); }),
            ErrorCode::kIndexOutOfDomain);
}

TEST(DomainTest, ValidateDatasetCatchesDegenerateCases) {
  CategoricalDataset empty(make_pair_schema());
  EXPECT_EQ(code_of([&] { validate_dataset(empty); }),
            ErrorCode::kEmptyDataset);

  DatasetSchema degenerate;
  degenerate.attributes.push_back(make_attribute("one", 1));
  CategoricalDataset narrow(degenerate);
  narrow.append({0});
  EXPECT_EQ(code_of([&] { validate_dataset(narrow); }),
            ErrorCode::kDegenerateAttribute);

  CategoricalDataset fine = make_worked_true_data();
  EXPECT_NO_THROW(validate_dataset(fine));
}

TEST(DomainTest, SelectColumnsHonorsSubsetOrder) {
  const CategoricalDataset data = make_worked_true_data();
  const AttributeSubset reversed(data.schema(),
                                 std::vector<std::string>{"B", "A"});
  const CategoricalDataset selected = select_columns(data, reversed);
  ASSERT_EQ(selected.attribute_count(), 2u);
  EXPECT_EQ(selected.schema().attributes[0].name, "B");
  EXPECT_EQ(selected.schema().attributes[1].name, "A");
  for (std::size_t r = 0; r < data.record_count(); ++r) {
    EXPECT_EQ(selected.cell(r, 0), data.cell(r, 1));
    EXPECT_EQ(selected.cell(r, 1), data.cell(r, 0));
  }
}

TEST(DomainTest, EmpiricalDistributionMatchesHandCount) {
  const CategoricalDataset data = make_worked_true_data();
  const AttributeSubset both(data.schema(), std::vector<std::size_t>{0, 1});
  const ProbTensor joint = empirical_distribution(data, both);
  EXPECT_EQ(joint.role, TensorRole::kEmpirical);
  EXPECT_EQ(joint.shape, (std::vector<std::size_t>{2, 2}));
  expect_tensor_near(joint, {0.4, 0.0, 0.2, 0.4}, 1e-15);

  // Every empirical cell is a multiple of 1/n.
  for (double v : joint.values) {
    const double scaled = v * 10.0;
    EXPECT_NEAR(scaled, std::round(scaled), 1e-12);
  }

  const AttributeSubset reversed(data.schema(), std::vector<std::size_t>{1, 0});
  const ProbTensor transposed = empirical_distribution(data, reversed);
  expect_tensor_near(transposed, {0.4, 0.2, 0.0, 0.4}, 1e-15);
}

TEST(DomainTest, FlatIndexRoundTrip) {
  const std::vector<std::size_t> shape{5, 2, 2};
  for (std::size_t flat = 0; flat < 20; ++flat) {
    const std::vector<std::size_t> index = unflatten_index(shape, flat);
    EXPECT_EQ(flat_index(shape, index), flat);
  }
  EXPECT_EQ(flat_index(shape, {3, 1, 0}), 3u * 4u + 1u * 2u);
}

TEST(DomainTest, TensorAtReadsAndWrites) {
  ProbTensor t = make_tensor({2, 3}, TensorRole::kEstimated);
  t.at({1, 2}) = 0.5;
  EXPECT_DOUBLE_EQ(t.at({1, 2}), 0.5);
  EXPECT_DOUBLE_EQ(t.values[5], 0.5);
  EXPECT_EQ(code_of([&] { t.at({2, 0}); }), ErrorCode::kIndexOutOfDomain);
}

TEST(DomainTest, ValidateTensorFollowsRole) {
  ProbTensor empirical = make_tensor({2}, TensorRole::kEmpirical);
  empirical.values = {0.5, 0.5};
  EXPECT_NO_THROW(validate_tensor(empirical));
  empirical.values = {1.5, -0.5};
  EXPECT_EQ(code_of([&] { validate_tensor(empirical); }),
            ErrorCode::kOutOfRange);

  ProbTensor estimated = make_tensor({2}, TensorRole::kEstimated);
  estimated.values = {1.5, -0.5};
  EXPECT_NO_THROW(validate_tensor(estimated));
  estimated.values = {0.5, 0.3};
  EXPECT_EQ(code_of([&] { validate_tensor(estimated); }),
            ErrorCode::kOutOfRange);

  ProbTensor truncated = make_tensor({2}, TensorRole::kTruncated);
  truncated.values = {0.5, 0.3};
  EXPECT_NO_THROW(validate_tensor(truncated));
  truncated.values = {0.5, -0.1};
  EXPECT_EQ(code_of([&] { validate_tensor(truncated); }),
            ErrorCode::kOutOfRange);
}

TEST(DomainTest, MarginalOfSumsOutDroppedAxes) {
  const CategoricalDataset data = make_worked_true_data();
  const AttributeSubset both(data.schema(), std::vector<std::size_t>{0, 1});
  const ProbTensor joint = empirical_distribution(data, both);

  const ProbTensor first = marginal_of(joint, {0});
  expect_tensor_near(first, {0.4, 0.6}, 1e-15);
  const ProbTensor second = marginal_of(joint, {1});
  expect_tensor_near(second, {0.6, 0.4}, 1e-15);
  const ProbTensor same = marginal_of(joint, {0, 1});
  expect_tensor_near(same, joint.values, 0.0);

  EXPECT_EQ(code_of([&] { marginal_of(joint, {1, 0}); }),
            ErrorCode::kAxisOutOfRange);
  EXPECT_EQ(code_of([&] { marginal_of(joint, {0, 2}); }),
            ErrorCode::kAxisOutOfRange);
}

TEST(DomainTest, MarginalOfThreeWayTensor) {
  ProbTensor t = make_tensor({2, 3, 2}, TensorRole::kEmpirical);
  for (std::size_t i = 0; i < 12; ++i) t.values[i] = (i + 1) / 78.0;
  const ProbTensor mid = marginal_of(t, {1});
  ASSERT_EQ(mid.shape, (std::vector<std::size_t>{3}));
  // Brute-force sums over axes 0 and 2.
  for (std::size_t b = 0; b < 3; ++b) {
    double expected = 0.0;
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t c = 0; c < 2; ++c)
        expected += t.at({a, b, c});
    EXPECT_NEAR(mid.values[b], expected, 1e-15);
  }
  const ProbTensor outer = marginal_of(t, {0, 2});
  ASSERT_EQ(outer.shape, (std::vector<std::size_t>{2, 2}));
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t c = 0; c < 2; ++c) {
      double expected = 0.0;
      for (std::size_t b = 0; b < 3; ++b) expected += t.at({a, b, c});
      EXPECT_NEAR(outer.at({a, c}), expected, 1e-15);
    }
  }
}

}  // namespace
}  // namespace ldpjoint
