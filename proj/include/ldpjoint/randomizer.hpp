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

#ifndef LDPJOINT_RANDOMIZER_HPP_
#define LDPJOINT_RANDOMIZER_HPP_

#include <cstdint>
#include <vector>

#include "ldpjoint/domain.hpp"
#include "ldpjoint/linalg.hpp"

namespace ldpjoint {

// Default ceiling on the flattened domain a dense joint matrix may span.
inline constexpr std::size_t kDefaultOmegaCap = 4096;

// Row-stochastic perturbation matrix. entries.at(u, v) is the probability of
// reporting category v when the true category is u. `uniform` marks the
// standard two-value design (retain_prob on the diagonal, flip_prob off it),
// which admits a closed-form inverse.
struct RandomizationMatrix {
  std::size_t d = 0;
  double epsilon = 0.0;
  double retain_prob = 0.0;
  double flip_prob = 0.0;
  bool uniform = false;
  Mat entries;
};

// Uniform design for one attribute: retain with probability
// e^eps / (e^eps + d - 1), otherwise report each other category with equal
// probability. Requires d >= 2 and eps > 0.
RandomizationMatrix make_uniform_matrix(std::size_t d, double epsilon);

// General matrix from explicit row-stochastic entries (rows sum to 1 within
// 1e-12, entries nonnegative). epsilon is recorded as the largest log-ratio
// max_v ln(max_u entries(u,v) / min_u entries(u,v)).
RandomizationMatrix make_matrix(Mat entries);

// The inverse used for estimation: M with M * entries^T = I within 1e-10.
// Uniform matrices use the closed form
//   diagonal (1 - q) / (p - q), off-diagonal -q / (p - q),
// everything else goes through Gauss-Jordan elimination.
Mat estimation_inverse(const RandomizationMatrix& m);

// Dense perturbation matrix of the product domain, the Kronecker product of
// the per-attribute matrices in order. Raises kDomainTooLarge when the
// flattened domain exceeds `cap`.
RandomizationMatrix kronecker_joint(const std::vector<RandomizationMatrix>& ms,
                                    std::size_t cap = kDefaultOmegaCap);

// Per-attribute matrices aligned with a dataset schema.
struct RandomizationPlan {
  std::vector<RandomizationMatrix> matrices;

  std::size_t attribute_count() const { return matrices.size(); }
  double total_epsilon() const;
};

// Splits `epsilon_total` evenly across the schema's attributes.
RandomizationPlan make_uniform_plan(const DatasetSchema& schema,
                                    double epsilon_total);

// One budget value per attribute.
RandomizationPlan make_plan(const DatasetSchema& schema,
                            const std::vector<double>& epsilons);

// Matrices for the subset's attributes, in subset order.
std::vector<RandomizationMatrix> plan_for_subset(const RandomizationPlan& plan,
                                                 const AttributeSubset& subset);

// Applies the plan to every cell independently. The draw for record r,
// column c depends only on (seed, r, c), so output is reproducible and
// independent of traversal order. Raises kPlanSchemaMismatch when the plan
// does not line up with the dataset schema.
CategoricalDataset randomize_dataset(const CategoricalDataset& data,
                                     const RandomizationPlan& plan,
                                     std::uint64_t seed);

}  // namespace ldpjoint

#endif  // LDPJOINT_RANDOMIZER_HPP_
