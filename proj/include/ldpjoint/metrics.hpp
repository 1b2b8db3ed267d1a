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

#ifndef LDPJOINT_METRICS_HPP_
#define LDPJOINT_METRICS_HPP_

#include <cstddef>
#include <vector>

#include "ldpjoint/domain.hpp"

namespace ldpjoint {

// Mean absolute cell difference between two same-shape tensors.
double mae(const ProbTensor& truth, const ProbTensor& estimate);

// Mean squared cell difference.
double mse(const ProbTensor& truth, const ProbTensor& estimate);

// Largest absolute cell difference (the per-query distance that `avd`
// averages).
double sup_distance(const ProbTensor& truth, const ProbTensor& estimate);

// Average variation distance over a collection of queries: the mean of
// sup_distance across aligned (truth, estimate) pairs. Raises
// kEmptyCollection on an empty list.
double avd(const std::vector<ProbTensor>& truths,
           const std::vector<ProbTensor>& estimates);

// Cramer's V between attributes i and j of a dataset, from the observed
// contingency table. Cells whose expected count is zero are skipped; the
// result is clamped to [0, 1].
double cramers_v(const CategoricalDataset& data, std::size_t i, std::size_t j);

// Population Cramer's V of a two-way joint distribution.
double cramers_v(const ProbTensor& joint);

struct MetricReport {
  double mae = 0.0;
  double mse = 0.0;
  double sup = 0.0;
};

MetricReport compare(const ProbTensor& truth, const ProbTensor& estimate);

}  // namespace ldpjoint

#endif  // LDPJOINT_METRICS_HPP_
