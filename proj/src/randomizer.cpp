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

#include "ldpjoint/randomizer.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "ldpjoint/rng.hpp"

namespace ldpjoint {
namespace {

constexpr double kRowSumTol = 1e-12;

void check_row_stochastic(const Mat& entries) {
  if (entries.rows != entries.cols || entries.rows < 2) {
    throw Error(ErrorCode::kDegenerateAttribute,
                "perturbation matrix must be square with d >= 2");
  }
  for (std::size_t r = 0; r < entries.rows; ++r) {
    double total = 0.0;
    for (std::size_t c = 0; c < entries.cols; ++c) {
      const double v = entries.at(r, c);
      if (v < 0.0) {
        throw Error(ErrorCode::kOutOfRange,
                    "perturbation matrix holds a negative probability");
      }
      total += v;
    }
    if (std::fabs(total - 1.0) > kRowSumTol) {
      throw Error(ErrorCode::kOutOfRange,
                  "perturbation matrix row " + std::to_string(r) +
                      " sums to " + std::to_string(total));
    }
  }
}

double worst_column_log_ratio(const Mat& entries) {
  double worst = 0.0;
  for (std::size_t c = 0; c < entries.cols; ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t r = 0; r < entries.rows; ++r) {
      lo = std::min(lo, entries.at(r, c));
      hi = std::max(hi, entries.at(r, c));
    }
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::log(hi / lo));
  }
  return worst;
}

}  // namespace

RandomizationMatrix make_uniform_matrix(std::size_t d, double epsilon) {
  if (d < 2) {
    throw Error(ErrorCode::kDegenerateAttribute,
                "uniform design needs at least two categories");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kOutOfRange, "privacy budget must be positive");
  }
  RandomizationMatrix m;
  m.d = d;
  m.epsilon = epsilon;
  const double grow = std::exp(epsilon);
  m.retain_prob = grow / (grow + static_cast<double>(d) - 1.0);
  m.flip_prob = 1.0 / (grow + static_cast<double>(d) - 1.0);
  m.uniform = true;
  m.entries = Mat(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      m.entries.at(r, c) = (r == c) ? m.retain_prob : m.flip_prob;
    }
  }
  return m;
}

RandomizationMatrix make_matrix(Mat entries) {
  check_row_stochastic(entries);
  RandomizationMatrix m;
  m.d = entries.rows;
  m.uniform = false;
  m.epsilon = worst_column_log_ratio(entries);
  m.retain_prob = 0.0;
  m.flip_prob = 0.0;
  m.entries = std::move(entries);
  return m;
}

Mat estimation_inverse(const RandomizationMatrix& m) {
  if (m.uniform) {
    const double spread = m.retain_prob - m.flip_prob;
    if (spread <= 0.0) {
      throw Error(ErrorCode::kSingularMatrix,
                  "uniform design with retain <= flip cannot be inverted");
    }
    Mat inv(m.d, m.d);
    const double diag = (1.0 - m.flip_prob) / spread;
    const double off = -m.flip_prob / spread;
    for (std::size_t r = 0; r < m.d; ++r) {
      for (std::size_t c = 0; c < m.d; ++c) {
        inv.at(r, c) = (r == c) ? diag : off;
      }
    }
    return inv;
  }
  return gauss_jordan_inverse(transpose(m.entries));
}

RandomizationMatrix kronecker_joint(const std::vector<RandomizationMatrix>& ms,
                                    std::size_t cap) {
  if (ms.empty()) {
    throw Error(ErrorCode::kEmptyCollection, "no matrices to combine");
  }
  std::size_t dim = 1;
  double epsilon = 0.0;
  for (const auto& m : ms) {
    if (m.d == 0 || dim > cap / m.d) {
      throw Error(ErrorCode::kDomainTooLarge,
                  "joint perturbation domain exceeds the cap of " +
                      std::to_string(cap));
    }
    dim *= m.d;
    epsilon += m.epsilon;
  }
  Mat joint = ms.front().entries;
  for (std::size_t i = 1; i < ms.size(); ++i) {
    joint = kronecker_product(joint, ms[i].entries);
  }
  RandomizationMatrix out;
  out.d = dim;
  out.epsilon = epsilon;
  out.uniform = false;
  out.retain_prob = 0.0;
  out.flip_prob = 0.0;
  out.entries = std::move(joint);
  return out;
}

double RandomizationPlan::total_epsilon() const {
  double total = 0.0;
  for (const auto& m : matrices) total += m.epsilon;
  return total;
}

RandomizationPlan make_uniform_plan(const DatasetSchema& schema,
                                    double epsilon_total) {
  if (schema.attribute_count() == 0) {
    throw Error(ErrorCode::kDegenerateAttribute, "schema has no attributes");
  }
  const double per_attr =
      epsilon_total / static_cast<double>(schema.attribute_count());
  RandomizationPlan plan;
  plan.matrices.reserve(schema.attribute_count());
  for (const auto& attr : schema.attributes) {
    plan.matrices.push_back(make_uniform_matrix(attr.size(), per_attr));
  }
  return plan;
}

RandomizationPlan make_plan(const DatasetSchema& schema,
                            const std::vector<double>& epsilons) {
  if (epsilons.size() != schema.attribute_count()) {
    throw Error(ErrorCode::kPlanSchemaMismatch,
                "one budget per attribute is required");
  }
  RandomizationPlan plan;
  plan.matrices.reserve(schema.attribute_count());
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    plan.matrices.push_back(
        make_uniform_matrix(schema.attributes[i].size(), epsilons[i]));
  }
  return plan;
}

std::vector<RandomizationMatrix> plan_for_subset(const RandomizationPlan& plan,
                                                 const AttributeSubset& subset) {
  std::vector<RandomizationMatrix> out;
  out.reserve(subset.size());
  for (std::size_t j = 0; j < subset.size(); ++j) {
    const std::size_t idx = subset.indices()[j];
    if (idx >= plan.attribute_count() ||
        plan.matrices[idx].d != subset.sizes()[j]) {
      throw Error(ErrorCode::kPlanSchemaMismatch,
                  "plan does not cover the requested subset");
    }
    out.push_back(plan.matrices[idx]);
  }
  return out;
}

CategoricalDataset randomize_dataset(const CategoricalDataset& data,
                                     const RandomizationPlan& plan,
                                     std::uint64_t seed) {
  const std::size_t m = data.attribute_count();
  if (plan.attribute_count() != m) {
    throw Error(ErrorCode::kPlanSchemaMismatch,
                "plan covers " + std::to_string(plan.attribute_count()) +
                    " attributes, dataset has " + std::to_string(m));
  }
  for (std::size_t col = 0; col < m; ++col) {
    if (plan.matrices[col].d != data.schema().attributes[col].size()) {
      throw Error(ErrorCode::kPlanSchemaMismatch,
                  "plan domain mismatch on attribute '" +
                      data.schema().attributes[col].name + "'");
    }
  }

  // Per-attribute CDF rows, so each cell needs one uniform draw and one scan.
  std::vector<Mat> cdf(m);
  for (std::size_t col = 0; col < m; ++col) {
    const Mat& p = plan.matrices[col].entries;
    cdf[col] = Mat(p.rows, p.cols);
    for (std::size_t r = 0; r < p.rows; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < p.cols; ++c) {
        acc += p.at(r, c);
        cdf[col].at(r, c) = acc;
      }
    }
  }

  CategoricalDataset out(data.schema(), DataRole::kRandomized);
  out.reserve(data.record_count());
  std::vector<std::uint32_t> record(m);
  for (std::size_t row = 0; row < data.record_count(); ++row) {
    for (std::size_t col = 0; col < m; ++col) {
      const double u = keyed_uniform(seed, row, col);
      const std::uint32_t truth = data.cell(row, col);
      const Mat& c = cdf[col];
      std::uint32_t reported = static_cast<std::uint32_t>(c.cols - 1);
      for (std::size_t v = 0; v < c.cols; ++v) {
        if (u < c.at(truth, v)) {
          reported = static_cast<std::uint32_t>(v);
          break;
        }
      }
      record[col] = reported;
    }
    out.append(record);
  }
  return out;
}

}  // namespace ldpjoint
