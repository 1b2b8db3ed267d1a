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

#ifndef LDPJOINT_DOMAIN_HPP_
#define LDPJOINT_DOMAIN_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ldpjoint/bigint.hpp"
#include "ldpjoint/error.hpp"

namespace ldpjoint {

// One categorical attribute. Cell values in datasets are indices into
// `categories`, so the domain size is always categories.size().
struct AttributeSchema {
  std::string name;
  std::vector<std::string> categories;

  std::size_t size() const { return categories.size(); }
};

// Attribute with numeric labels "0".."d-1", for synthetic data and tests.
AttributeSchema make_attribute(const std::string& name, std::size_t d);

struct DatasetSchema {
  std::vector<AttributeSchema> attributes;

  std::size_t attribute_count() const { return attributes.size(); }

  // Index of the attribute named `name`; raises kUnknownColumn if absent.
  std::size_t index_of(const std::string& name) const;

  // Product of all attribute domain sizes.
  BigCount domain_size() const;
};

// Ordered list of attribute positions. Validated on construction: nonempty,
// distinct, within the schema. Order is significant; it fixes the axis order
// of every tensor built over the subset.
class AttributeSubset {
 public:
  AttributeSubset(const DatasetSchema& schema, std::vector<std::size_t> indices);
  AttributeSubset(const DatasetSchema& schema,
                  const std::vector<std::string>& names);

  const std::vector<std::size_t>& indices() const { return indices_; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  std::size_t size() const { return indices_.size(); }

  BigCount domain_size() const;

 private:
  std::vector<std::size_t> indices_;
  std::vector<std::size_t> sizes_;
};

enum class DataRole { kTrueData, kRandomized };

// Records of category indices, stored row-major in a flat array.
class CategoricalDataset {
 public:
  explicit CategoricalDataset(DatasetSchema schema,
                              DataRole role = DataRole::kTrueData);

  void reserve(std::size_t n);

  // Appends one record; every value must lie inside its attribute's domain.
  void append(const std::vector<std::uint32_t>& record);

  std::size_t record_count() const { return record_count_; }
  std::size_t attribute_count() const { return schema_.attribute_count(); }

  std::uint32_t cell(std::size_t row, std::size_t col) const {
    return cells_[row * schema_.attribute_count() + col];
  }
  void set_cell(std::size_t row, std::size_t col, std::uint32_t value);

  const DatasetSchema& schema() const { return schema_; }
  DataRole role() const { return role_; }
  void set_role(DataRole role) { role_ = role; }

 private:
  DatasetSchema schema_;
  std::vector<std::uint32_t> cells_;
  std::size_t record_count_ = 0;
  DataRole role_;
};

// Full-scan check: at least one record, every attribute has at least two
// categories, every cell is inside its domain. Raises on the first violation.
void validate_dataset(const CategoricalDataset& data);

// Copies the subset's columns into a new dataset whose schema is exactly the
// subset's attributes, in subset order.
CategoricalDataset select_columns(const CategoricalDataset& data,
                                  const AttributeSubset& subset);

enum class TensorRole { kEmpirical, kEstimated, kTruncated };

// Dense w-way probability tensor, row-major over `shape`.
struct ProbTensor {
  std::vector<std::size_t> shape;
  std::vector<double> values;
  TensorRole role = TensorRole::kEmpirical;

  std::size_t cell_count() const { return values.size(); }
  double sum() const;

  double at(const std::vector<std::size_t>& index) const;
  double& at(const std::vector<std::size_t>& index);
};

ProbTensor make_tensor(std::vector<std::size_t> shape, TensorRole role);

std::size_t flat_index(const std::vector<std::size_t>& shape,
                       const std::vector<std::size_t>& index);
std::vector<std::size_t> unflatten_index(const std::vector<std::size_t>& shape,
                                         std::size_t flat);

// Role-dependent sanity check. Empirical tensors must be nonnegative and sum
// to 1 within 1e-9; estimated tensors must sum to 1 within 1e-6 but may hold
// negative cells; truncated tensors must be nonnegative with sum at most
// 1 + 1e-6 (they give up probability mass by design).
void validate_tensor(const ProbTensor& tensor);

// Relative frequency of every category combination of `subset` in `data`.
ProbTensor empirical_distribution(const CategoricalDataset& data,
                                  const AttributeSubset& subset);

// Sums out all axes not in `keep_axes` (strictly increasing positions into
// tensor.shape). The result keeps the surviving axes in their original order.
ProbTensor marginal_of(const ProbTensor& tensor,
                       const std::vector<std::size_t>& keep_axes);

}  // namespace ldpjoint

#endif  // LDPJOINT_DOMAIN_HPP_
