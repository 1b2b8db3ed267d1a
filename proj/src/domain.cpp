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

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace ldpjoint {
namespace {

constexpr double kEmpiricalSumTol = 1e-9;
constexpr double kEstimatedSumTol = 1e-6;

std::string axis_message(const char* what, std::size_t value, std::size_t bound) {
  return std::string(what) + " " + std::to_string(value) + " with bound " +
         std::to_string(bound);
}

}  // namespace

AttributeSchema make_attribute(const std::string& name, std::size_t d) {
  AttributeSchema attr;
  attr.name = name;
  attr.categories.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    attr.categories.push_back(std::to_string(i));
  }
  return attr;
}

std::size_t DatasetSchema::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].name == name) return i;
  }
  throw Error(ErrorCode::kUnknownColumn, "no attribute named '" + name + "'");
}

BigCount DatasetSchema::domain_size() const {
  BigCount total = 1;
  for (const auto& attr : attributes) total *= attr.size();
  return total;
}

AttributeSubset::AttributeSubset(const DatasetSchema& schema,
                                 std::vector<std::size_t> indices)
    : indices_(std::move(indices)) {
  if (indices_.empty()) {
    throw Error(ErrorCode::kSubsetMismatch, "attribute subset is empty");
  }
  std::set<std::size_t> seen;
  sizes_.reserve(indices_.size());
  for (std::size_t idx : indices_) {
    if (idx >= schema.attribute_count()) {
      throw Error(ErrorCode::kSubsetMismatch,
                  axis_message("subset index", idx, schema.attribute_count()));
    }
    if (!seen.insert(idx).second) {
      throw Error(ErrorCode::kSubsetMismatch,
                  "subset repeats attribute " + std::to_string(idx));
    }
    sizes_.push_back(schema.attributes[idx].size());
  }
}

AttributeSubset::AttributeSubset(const DatasetSchema& schema,
                                 const std::vector<std::string>& names)
    : AttributeSubset(schema, [&] {
        std::vector<std::size_t> idx;
        idx.reserve(names.size());
        for (const auto& name : names) idx.push_back(schema.index_of(name));
        return idx;
      }()) {}

BigCount AttributeSubset::domain_size() const {
  BigCount total = 1;
  for (std::size_t d : sizes_) total *= d;
  return total;
}

CategoricalDataset::CategoricalDataset(DatasetSchema schema, DataRole role)
    : schema_(std::move(schema)), role_(role) {}

void CategoricalDataset::reserve(std::size_t n) {
  cells_.reserve(n * schema_.attribute_count());
}

void CategoricalDataset::append(const std::vector<std::uint32_t>& record) {
  if (record.size() != schema_.attribute_count()) {
    throw Error(ErrorCode::kShapeMismatch,
                axis_message("record width", record.size(),
                             schema_.attribute_count()));
  }
  for (std::size_t col = 0; col < record.size(); ++col) {
    if (record[col] >= schema_.attributes[col].size()) {
      throw Error(ErrorCode::kIndexOutOfDomain,
                  "value " + std::to_string(record[col]) + " outside domain of '" +
                      schema_.attributes[col].name + "'");
    }
  }
  cells_.insert(cells_.end(), record.begin(), record.end());
  ++record_count_;
}

void CategoricalDataset::set_cell(std::size_t row, std::size_t col,
                                  std::uint32_t value) {
  if (value >= schema_.attributes[col].size()) {
    throw Error(ErrorCode::kIndexOutOfDomain,
                "value " + std::to_string(value) + " outside domain of '" +
                    schema_.attributes[col].name + "'");
  }
  cells_[row * schema_.attribute_count() + col] = value;
}

void validate_dataset(const CategoricalDataset& data) {
  if (data.record_count() == 0) {
    throw Error(ErrorCode::kEmptyDataset, "dataset holds no records");
  }
  for (const auto& attr : data.schema().attributes) {
    if (attr.size() < 2) {
      throw Error(ErrorCode::kDegenerateAttribute,
                  "attribute '" + attr.name + "' has fewer than two categories");
    }
  }
  for (std::size_t row = 0; row < data.record_count(); ++row) {
    for (std::size_t col = 0; col < data.attribute_count(); ++col) {
      if (data.cell(row, col) >= data.schema().attributes[col].size()) {
        throw Error(ErrorCode::kIndexOutOfDomain,
                    "cell (" + std::to_string(row) + ", " + std::to_string(col) +
                        ") outside its attribute domain");
      }
    }
  }
}

CategoricalDataset select_columns(const CategoricalDataset& data,
                                  const AttributeSubset& subset) {
  DatasetSchema out_schema;
  for (std::size_t idx : subset.indices()) {
    if (idx >= data.attribute_count()) {
      throw Error(ErrorCode::kSubsetMismatch,
                  axis_message("subset index", idx, data.attribute_count()));
    }
    out_schema.attributes.push_back(data.schema().attributes[idx]);
  }
  CategoricalDataset out(std::move(out_schema), data.role());
  out.reserve(data.record_count());
  std::vector<std::uint32_t> record(subset.size());
  for (std::size_t row = 0; row < data.record_count(); ++row) {
    for (std::size_t j = 0; j < subset.size(); ++j) {
      record[j] = data.cell(row, subset.indices()[j]);
    }
    out.append(record);
  }
  return out;
}

double ProbTensor::sum() const {
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

double ProbTensor::at(const std::vector<std::size_t>& index) const {
  return values[flat_index(shape, index)];
}

double& ProbTensor::at(const std::vector<std::size_t>& index) {
  return values[flat_index(shape, index)];
}

ProbTensor make_tensor(std::vector<std::size_t> shape, TensorRole role) {
  std::size_t cells = 1;
  for (std::size_t d : shape) {
    if (d == 0) {
      throw Error(ErrorCode::kDegenerateAttribute, "tensor axis of size zero");
    }
    cells *= d;
  }
  ProbTensor t;
  t.shape = std::move(shape);
  t.values.assign(cells, 0.0);
  t.role = role;
  return t;
}

std::size_t flat_index(const std::vector<std::size_t>& shape,
                       const std::vector<std::size_t>& index) {
  if (index.size() != shape.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                axis_message("index arity", index.size(), shape.size()));
  }
  std::size_t flat = 0;
  for (std::size_t axis = 0; axis < shape.size(); ++axis) {
    if (index[axis] >= shape[axis]) {
      throw Error(ErrorCode::kIndexOutOfDomain,
                  axis_message("tensor index", index[axis], shape[axis]));
    }
    flat = flat * shape[axis] + index[axis];
  }
  return flat;
}

std::vector<std::size_t> unflatten_index(const std::vector<std::size_t>& shape,
                                         std::size_t flat) {
  std::vector<std::size_t> index(shape.size(), 0);
  for (std::size_t axis = shape.size(); axis-- > 0;) {
    index[axis] = flat % shape[axis];
    flat /= shape[axis];
  }
  return index;
}

void validate_tensor(const ProbTensor& tensor) {
  if (tensor.shape.empty()) {
    throw Error(ErrorCode::kShapeMismatch, "tensor has no axes");
  }
  std::size_t cells = 1;
  for (std::size_t d : tensor.shape) cells *= d;
  if (cells != tensor.values.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                axis_message("tensor storage", tensor.values.size(), cells));
  }
  const double total = tensor.sum();
  switch (tensor.role) {
    case TensorRole::kEmpirical:
      for (double v : tensor.values) {
        if (v < 0.0) {
          throw Error(ErrorCode::kOutOfRange,
                      "empirical tensor holds a negative cell");
        }
      }
      if (std::fabs(total - 1.0) > kEmpiricalSumTol) {
        throw Error(ErrorCode::kOutOfRange,
                    "empirical tensor mass is " + std::to_string(total));
      }
      break;
    case TensorRole::kEstimated:
      if (std::fabs(total - 1.0) > kEstimatedSumTol) {
        throw Error(ErrorCode::kOutOfRange,
                    "estimated tensor mass is " + std::to_string(total));
      }
      break;
    case TensorRole::kTruncated:
      for (double v : tensor.values) {
        if (v < 0.0) {
          throw Error(ErrorCode::kOutOfRange,
                      "truncated tensor holds a negative cell");
        }
      }
      if (total > 1.0 + kEstimatedSumTol) {
        throw Error(ErrorCode::kOutOfRange,
                    "truncated tensor mass is " + std::to_string(total));
      }
      break;
  }
}

ProbTensor empirical_distribution(const CategoricalDataset& data,
                                  const AttributeSubset& subset) {
  if (data.record_count() == 0) {
    throw Error(ErrorCode::kEmptyDataset, "dataset holds no records");
  }
  for (std::size_t j = 0; j < subset.size(); ++j) {
    const std::size_t idx = subset.indices()[j];
    if (idx >= data.attribute_count() ||
        subset.sizes()[j] != data.schema().attributes[idx].size()) {
      throw Error(ErrorCode::kSubsetMismatch,
                  "subset does not match the dataset schema");
    }
  }
  ProbTensor t = make_tensor(subset.sizes(), TensorRole::kEmpirical);
  std::vector<std::size_t> strides(subset.size(), 1);
  for (std::size_t axis = subset.size(); axis-- > 1;) {
    strides[axis - 1] = strides[axis] * subset.sizes()[axis];
  }
  for (std::size_t row = 0; row < data.record_count(); ++row) {
    std::size_t flat = 0;
    for (std::size_t j = 0; j < subset.size(); ++j) {
      flat += strides[j] * data.cell(row, subset.indices()[j]);
    }
    t.values[flat] += 1.0;
  }
  const double inv_n = 1.0 / static_cast<double>(data.record_count());
  for (double& v : t.values) v *= inv_n;
  return t;
}

ProbTensor marginal_of(const ProbTensor& tensor,
                       const std::vector<std::size_t>& keep_axes) {
  if (keep_axes.empty()) {
    throw Error(ErrorCode::kEmptyCollection, "marginal keeps no axes");
  }
  for (std::size_t j = 0; j < keep_axes.size(); ++j) {
    if (keep_axes[j] >= tensor.shape.size()) {
      throw Error(ErrorCode::kAxisOutOfRange,
                  axis_message("marginal axis", keep_axes[j],
                               tensor.shape.size()));
    }
    if (j > 0 && keep_axes[j] <= keep_axes[j - 1]) {
      throw Error(ErrorCode::kAxisOutOfRange,
                  "marginal axes must be strictly increasing");
    }
  }
  std::vector<std::size_t> out_shape;
  out_shape.reserve(keep_axes.size());
  for (std::size_t axis : keep_axes) out_shape.push_back(tensor.shape[axis]);
  ProbTensor out = make_tensor(std::move(out_shape), tensor.role);

  std::vector<std::size_t> index(tensor.shape.size(), 0);
  std::vector<std::size_t> out_index(keep_axes.size(), 0);
  for (std::size_t flat = 0; flat < tensor.values.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t axis = tensor.shape.size(); axis-- > 0;) {
      index[axis] = rem % tensor.shape[axis];
      rem /= tensor.shape[axis];
    }
    for (std::size_t j = 0; j < keep_axes.size(); ++j) {
      out_index[j] = index[keep_axes[j]];
    }
    out.values[flat_index(out.shape, out_index)] += tensor.values[flat];
  }
  return out;
}

}  // namespace ldpjoint
