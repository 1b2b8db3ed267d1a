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

#include "ldpjoint/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace ldpjoint {
namespace {

void check_same_shape(const ProbTensor& a, const ProbTensor& b) {
  if (a.shape != b.shape || a.values.size() != b.values.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "metric inputs must share one shape");
  }
  if (a.values.empty()) {
    throw Error(ErrorCode::kEmptyCollection, "metric inputs hold no cells");
  }
}

double v_from_phi2(double phi2, std::size_t d1, std::size_t d2) {
  const std::size_t denom = std::min(d1, d2) - 1;
  if (denom == 0) {
    throw Error(ErrorCode::kDegenerateAttribute,
                "association needs at least two categories per attribute");
  }
  const double v = std::sqrt(phi2 / static_cast<double>(denom));
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

double mae(const ProbTensor& truth, const ProbTensor& estimate) {
  check_same_shape(truth, estimate);
  double total = 0.0;
  for (std::size_t i = 0; i < truth.values.size(); ++i) {
    total += std::fabs(truth.values[i] - estimate.values[i]);
  }
  return total / static_cast<double>(truth.values.size());
}

double mse(const ProbTensor& truth, const ProbTensor& estimate) {
  check_same_shape(truth, estimate);
  double total = 0.0;
  for (std::size_t i = 0; i < truth.values.size(); ++i) {
    const double diff = truth.values[i] - estimate.values[i];
    total += diff * diff;
  }
  return total / static_cast<double>(truth.values.size());
}

double sup_distance(const ProbTensor& truth, const ProbTensor& estimate) {
  check_same_shape(truth, estimate);
  double worst = 0.0;
  for (std::size_t i = 0; i < truth.values.size(); ++i) {
    worst = std::max(worst, std::fabs(truth.values[i] - estimate.values[i]));
  }
  return worst;
}

double avd(const std::vector<ProbTensor>& truths,
           const std::vector<ProbTensor>& estimates) {
  if (truths.empty() || estimates.empty()) {
    throw Error(ErrorCode::kEmptyCollection, "no queries to average over");
  }
  if (truths.size() != estimates.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "each truth needs exactly one estimate");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    total += sup_distance(truths[i], estimates[i]);
  }
  return total / static_cast<double>(truths.size());
}

double cramers_v(const CategoricalDataset& data, std::size_t i, std::size_t j) {
  if (data.record_count() == 0) {
    throw Error(ErrorCode::kEmptyDataset, "dataset holds no records");
  }
  if (i >= data.attribute_count() || j >= data.attribute_count() || i == j) {
    throw Error(ErrorCode::kSubsetMismatch,
                "association needs two distinct attributes");
  }
  const std::size_t d1 = data.schema().attributes[i].size();
  const std::size_t d2 = data.schema().attributes[j].size();
  std::vector<double> counts(d1 * d2, 0.0);
  std::vector<double> row(d1, 0.0);
  std::vector<double> col(d2, 0.0);
  for (std::size_t r = 0; r < data.record_count(); ++r) {
    const std::uint32_t a = data.cell(r, i);
    const std::uint32_t b = data.cell(r, j);
    counts[a * d2 + b] += 1.0;
    row[a] += 1.0;
    col[b] += 1.0;
  }
  const double n = static_cast<double>(data.record_count());
  double chi2 = 0.0;
  for (std::size_t a = 0; a < d1; ++a) {
    for (std::size_t b = 0; b < d2; ++b) {
      const double expected = row[a] * col[b] / n;
      if (expected <= 0.0) continue;
      const double diff = counts[a * d2 + b] - expected;
      chi2 += diff * diff / expected;
    }
  }
  return v_from_phi2(chi2 / n, d1, d2);
}

double cramers_v(const ProbTensor& joint) {
  if (joint.shape.size() != 2) {
    throw Error(ErrorCode::kShapeMismatch,
                "population association needs a two-way joint");
  }
  const std::size_t d1 = joint.shape[0];
  const std::size_t d2 = joint.shape[1];
  std::vector<double> row(d1, 0.0);
  std::vector<double> col(d2, 0.0);
  for (std::size_t a = 0; a < d1; ++a) {
    for (std::size_t b = 0; b < d2; ++b) {
      const double v = joint.values[a * d2 + b];
      row[a] += v;
      col[b] += v;
    }
  }
  double phi2 = 0.0;
  for (std::size_t a = 0; a < d1; ++a) {
    for (std::size_t b = 0; b < d2; ++b) {
      const double expected = row[a] * col[b];
      if (expected <= 0.0) continue;
      const double diff = joint.values[a * d2 + b] - expected;
      phi2 += diff * diff / expected;
    }
  }
  return v_from_phi2(phi2, d1, d2);
}

MetricReport compare(const ProbTensor& truth, const ProbTensor& estimate) {
  MetricReport report;
  report.mae = mae(truth, estimate);
  report.mse = mse(truth, estimate);
  report.sup = sup_distance(truth, estimate);
  return report;
}

}  // namespace ldpjoint
