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

#ifndef LDPJOINT_ESTIMATOR_HPP_
#define LDPJOINT_ESTIMATOR_HPP_

#include <string>
#include <vector>

#include "ldpjoint/bounds.hpp"
#include "ldpjoint/domain.hpp"
#include "ldpjoint/randomizer.hpp"

namespace ldpjoint {

enum class EstimationMethod {
  kRrJoint,         // invert one matrix over the flattened product domain
  kRrIndependent,   // product of per-attribute marginal estimates
  kIndJointNaive,   // invert the dense Kronecker product
  kIndJointReduced, // Kronecker product of the per-attribute inverses
  kIndJointCastell, // per-axis inverse products, no dense joint matrix
  kTruncated,       // castell, clamped and capped by lower-order estimates
  kHybrid,          // bound-driven choice between independent and castell
};

std::string method_name(EstimationMethod method);
EstimationMethod parse_method(const std::string& name);

// Reshapes a w-way tensor into a d_axis x (product of the other sizes)
// matrix: rows follow the chosen axis, columns walk the remaining axes
// row-major in their original order. Lossless.
Mat transpose_axis(const ProbTensor& tensor, std::size_t axis);

// Exact inverse of transpose_axis for the given axis and shape.
ProbTensor inverse_transpose_axis(const Mat& m, std::size_t axis,
                                  const std::vector<std::size_t>& shape);

// Unbiased joint estimate through one flattened-domain inverse. The joint
// matrix dimension must equal the tensor's cell count.
ProbTensor estimate_rr_joint(const ProbTensor& observed,
                             const RandomizationMatrix& joint);

// Product of the per-axis marginal estimates; exact only when the attributes
// are independent.
ProbTensor estimate_rr_independent(const ProbTensor& observed,
                                   const std::vector<RandomizationMatrix>& ms);

// Dense reference path: inverts the Kronecker product of the per-axis
// matrices. Cubic in the flattened domain, capped at `cap`.
ProbTensor estimate_naive(const ProbTensor& observed,
                          const std::vector<RandomizationMatrix>& ms,
                          std::size_t cap = kDefaultOmegaCap);

// Same estimate built as the Kronecker product of the small inverses; still
// materializes the dense product matrix, capped at `cap`.
ProbTensor estimate_reduced(const ProbTensor& observed,
                            const std::vector<RandomizationMatrix>& ms,
                            std::size_t cap = kDefaultOmegaCap);

// Same estimate again without ever forming a dense joint matrix: one
// axis-transposed product with each small inverse. Linear in the cell count
// per axis, which is what makes high orders tractable.
ProbTensor estimate_castell(const ProbTensor& observed,
                            const std::vector<RandomizationMatrix>& ms);

// Castell estimate made consistent: negatives clamp to zero, then every cell
// is capped by the estimated (w-1)-way marginal obtained by dropping each
// axis in turn. Caps clamp to zero before use. With `recursive` set, the
// caps are themselves truncated estimates. The result keeps whatever mass
// survives; it is not renormalized. Requires w >= 2.
ProbTensor estimate_truncated(const ProbTensor& observed,
                              const std::vector<RandomizationMatrix>& ms,
                              bool recursive = false);

struct HybridChoice {
  EstimationMethod method = EstimationMethod::kRrIndependent;
  double bound_rr_independent = 0.0;
  double bound_ind_joint = 0.0;
  Thresholds thresholds;
};

// Picks castell estimation exactly when its error envelope undercuts the
// independence envelope. d_small and d_large are the smallest and largest
// domain sizes in the subset (equal for homogeneous subsets).
HybridChoice select_hybrid(std::size_t n, std::size_t w, std::size_t d_small,
                           std::size_t d_large, double epsilon_per_attribute);
HybridChoice select_hybrid(std::size_t n, std::size_t w, std::size_t d,
                           double epsilon_per_attribute);

struct EstimationOptions {
  EstimationMethod method = EstimationMethod::kIndJointCastell;
  std::size_t omega_cap = kDefaultOmegaCap;
  bool recursive_truncation = false;
};

struct EstimationResult {
  ProbTensor estimate;
  EstimationMethod method_used = EstimationMethod::kIndJointCastell;
  // Probability mass given up by truncation (zero for other methods).
  double mass_deficit = 0.0;
  double elapsed_sec = 0.0;
  // Error envelopes and crossovers for the request, when n is known.
  bool bounds_valid = false;
  double bound_rr_independent = 0.0;
  double bound_ind_joint = 0.0;
  Thresholds thresholds;
};

// Tensor-level entry point. `n` is the record count behind `observed`; pass
// 0 when unknown (bounds are then skipped; the hybrid method requires it).
EstimationResult estimate(const ProbTensor& observed,
                          const std::vector<RandomizationMatrix>& ms,
                          std::size_t n, const EstimationOptions& options);

// Dataset-level entry point: builds the observed tensor over `subset` from
// the randomized records, pulls the matching matrices from the plan.
EstimationResult estimate(const CategoricalDataset& randomized,
                          const AttributeSubset& subset,
                          const RandomizationPlan& plan,
                          const EstimationOptions& options);

}  // namespace ldpjoint

#endif  // LDPJOINT_ESTIMATOR_HPP_
