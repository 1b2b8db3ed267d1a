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

#include "ldpjoint/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

namespace ldpjoint {
namespace {

void check_axis_matrices(const ProbTensor& observed,
                         const std::vector<RandomizationMatrix>& ms) {
  if (ms.size() != observed.shape.size()) {
    throw Error(ErrorCode::kPlanSchemaMismatch,
                "need one perturbation matrix per tensor axis");
  }
  for (std::size_t axis = 0; axis < ms.size(); ++axis) {
    if (ms[axis].d != observed.shape[axis]) {
      throw Error(ErrorCode::kPlanSchemaMismatch,
                  "matrix domain mismatch on axis " + std::to_string(axis));
    }
  }
}

std::size_t checked_cells(const std::vector<RandomizationMatrix>& ms,
                          std::size_t cap) {
  std::size_t cells = 1;
  for (const auto& m : ms) {
    if (m.d == 0 || cells > cap / m.d) {
      throw Error(ErrorCode::kDomainTooLarge,
                  "flattened domain exceeds the cap of " + std::to_string(cap));
    }
    cells *= m.d;
  }
  return cells;
}

void clamp_negative(ProbTensor& t) {
  for (double& v : t.values) v = std::max(v, 0.0);
}

std::vector<std::size_t> axes_without(std::size_t w, std::size_t dropped) {
  std::vector<std::size_t> keep;
  keep.reserve(w - 1);
  for (std::size_t axis = 0; axis < w; ++axis) {
    if (axis != dropped) keep.push_back(axis);
  }
  return keep;
}

}  // namespace

std::string method_name(EstimationMethod method) {
  switch (method) {
    case EstimationMethod::kRrJoint:
      return "rr_joint";
    case EstimationMethod::kRrIndependent:
      return "rr_independent";
    case EstimationMethod::kIndJointNaive:
      return "naive";
    case EstimationMethod::kIndJointReduced:
      return "reduced";
    case EstimationMethod::kIndJointCastell:
      return "castell";
    case EstimationMethod::kTruncated:
      return "truncated";
    case EstimationMethod::kHybrid:
      return "hybrid";
  }
  return "unknown";
}

EstimationMethod parse_method(const std::string& name) {
  if (name == "rr_joint") return EstimationMethod::kRrJoint;
  if (name == "rr_independent") return EstimationMethod::kRrIndependent;
  if (name == "naive") return EstimationMethod::kIndJointNaive;
  if (name == "reduced") return EstimationMethod::kIndJointReduced;
  if (name == "castell") return EstimationMethod::kIndJointCastell;
  if (name == "truncated") return EstimationMethod::kTruncated;
  if (name == "hybrid") return EstimationMethod::kHybrid;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown estimation method '" + name + "'");
}

Mat transpose_axis(const ProbTensor& tensor, std::size_t axis) {
  const std::size_t w = tensor.shape.size();
  if (axis >= w) {
    throw Error(ErrorCode::kAxisOutOfRange,
                "axis " + std::to_string(axis) + " of a " + std::to_string(w) +
                    "-way tensor");
  }
  const std::size_t d = tensor.shape[axis];
  const std::size_t rest = tensor.values.size() / d;

  // Strides of the flattened input, and the stride layout of the columns
  // (remaining axes, row-major in original order).
  std::size_t inner = 1;  // product of sizes after `axis`
  for (std::size_t a = axis + 1; a < w; ++a) inner *= tensor.shape[a];
  const std::size_t outer = tensor.values.size() / (inner * d);

  Mat out(d, rest);
  // Input flat index decomposes as (hi * d + r) * inner + lo with
  // hi < outer, lo < inner; the column index is hi * inner + lo.
  std::size_t flat = 0;
  for (std::size_t hi = 0; hi < outer; ++hi) {
    for (std::size_t r = 0; r < d; ++r) {
      double* row = &out.a[r * rest + hi * inner];
      for (std::size_t lo = 0; lo < inner; ++lo) {
        row[lo] = tensor.values[flat++];
      }
    }
  }
  return out;
}

ProbTensor inverse_transpose_axis(const Mat& m, std::size_t axis,
                                  const std::vector<std::size_t>& shape) {
  const std::size_t w = shape.size();
  if (axis >= w) {
    throw Error(ErrorCode::kAxisOutOfRange,
                "axis " + std::to_string(axis) + " of a " + std::to_string(w) +
                    "-way tensor");
  }
  std::size_t cells = 1;
  for (std::size_t dsize : shape) cells *= dsize;
  const std::size_t d = shape[axis];
  if (m.rows != d || m.rows * m.cols != cells) {
    throw Error(ErrorCode::kShapeMismatch,
                "matrix does not fold back into the given shape");
  }
  std::size_t inner = 1;
  for (std::size_t a = axis + 1; a < w; ++a) inner *= shape[a];
  const std::size_t outer = cells / (inner * d);

  ProbTensor out = make_tensor(shape, TensorRole::kEstimated);
  std::size_t flat = 0;
  for (std::size_t hi = 0; hi < outer; ++hi) {
    for (std::size_t r = 0; r < d; ++r) {
      const double* row = &m.a[r * m.cols + hi * inner];
      for (std::size_t lo = 0; lo < inner; ++lo) {
        out.values[flat++] = row[lo];
      }
    }
  }
  return out;
}

ProbTensor estimate_rr_joint(const ProbTensor& observed,
                             const RandomizationMatrix& joint) {
  if (joint.d != observed.values.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "joint matrix dimension does not match the tensor");
  }
  const Mat inv = estimation_inverse(joint);
  ProbTensor out = make_tensor(observed.shape, TensorRole::kEstimated);
  out.values = multiply(inv, observed.values);
  return out;
}

ProbTensor estimate_rr_independent(const ProbTensor& observed,
                                   const std::vector<RandomizationMatrix>& ms) {
  check_axis_matrices(observed, ms);
  const std::size_t w = observed.shape.size();
  std::vector<std::vector<double>> marginals(w);
  for (std::size_t axis = 0; axis < w; ++axis) {
    const ProbTensor lambda = marginal_of(observed, {axis});
    marginals[axis] = multiply(estimation_inverse(ms[axis]), lambda.values);
  }
  ProbTensor out = make_tensor(observed.shape, TensorRole::kEstimated);
  for (std::size_t flat = 0; flat < out.values.size(); ++flat) {
    const std::vector<std::size_t> index = unflatten_index(out.shape, flat);
    double v = 1.0;
    for (std::size_t axis = 0; axis < w; ++axis) {
      v *= marginals[axis][index[axis]];
    }
    out.values[flat] = v;
  }
  return out;
}

ProbTensor estimate_naive(const ProbTensor& observed,
                          const std::vector<RandomizationMatrix>& ms,
                          std::size_t cap) {
  check_axis_matrices(observed, ms);
  checked_cells(ms, cap);
  return estimate_rr_joint(observed, kronecker_joint(ms, cap));
}

ProbTensor estimate_reduced(const ProbTensor& observed,
                            const std::vector<RandomizationMatrix>& ms,
                            std::size_t cap) {
  check_axis_matrices(observed, ms);
  checked_cells(ms, cap);
  Mat inv = estimation_inverse(ms.front());
  for (std::size_t axis = 1; axis < ms.size(); ++axis) {
    inv = kronecker_product(inv, estimation_inverse(ms[axis]));
  }
  ProbTensor out = make_tensor(observed.shape, TensorRole::kEstimated);
  out.values = multiply(inv, observed.values);
  return out;
}

ProbTensor estimate_castell(const ProbTensor& observed,
                            const std::vector<RandomizationMatrix>& ms) {
  check_axis_matrices(observed, ms);
  ProbTensor current = observed;
  current.role = TensorRole::kEstimated;
  for (std::size_t axis = observed.shape.size(); axis-- > 0;) {
    const Mat inv = estimation_inverse(ms[axis]);
    const Mat unfolded = transpose_axis(current, axis);
    current = inverse_transpose_axis(multiply(inv, unfolded), axis,
                                     observed.shape);
  }
  return current;
}

ProbTensor estimate_truncated(const ProbTensor& observed,
                              const std::vector<RandomizationMatrix>& ms,
                              bool recursive) {
  check_axis_matrices(observed, ms);
  const std::size_t w = observed.shape.size();
  if (w < 2) {
    throw Error(ErrorCode::kOutOfRange,
                "truncation needs at least a two-way tensor");
  }
  ProbTensor out = estimate_castell(observed, ms);
  clamp_negative(out);

  std::vector<std::size_t> sub_index(w - 1);
  for (std::size_t dropped = 0; dropped < w; ++dropped) {
    const std::vector<std::size_t> keep = axes_without(w, dropped);
    const ProbTensor sub_observed = marginal_of(observed, keep);
    std::vector<RandomizationMatrix> sub_ms;
    sub_ms.reserve(w - 1);
    for (std::size_t axis : keep) sub_ms.push_back(ms[axis]);

    ProbTensor cap_tensor = (recursive && keep.size() >= 2)
                                ? estimate_truncated(sub_observed, sub_ms, true)
                                : estimate_castell(sub_observed, sub_ms);
    clamp_negative(cap_tensor);

    for (std::size_t flat = 0; flat < out.values.size(); ++flat) {
      const std::vector<std::size_t> index = unflatten_index(out.shape, flat);
      for (std::size_t j = 0; j < keep.size(); ++j) {
        sub_index[j] = index[keep[j]];
      }
      out.values[flat] =
          std::min(out.values[flat], cap_tensor.at(sub_index));
    }
  }
  out.role = TensorRole::kTruncated;
  return out;
}

HybridChoice select_hybrid(std::size_t n, std::size_t w, std::size_t d_small,
                           std::size_t d_large,
                           double epsilon_per_attribute) {
  if (n == 0) {
    throw Error(ErrorCode::kOutOfRange,
                "hybrid selection needs the record count");
  }
  const double epsilon_total =
      epsilon_per_attribute * static_cast<double>(w);
  HybridChoice choice;
  choice.bound_rr_independent = bound_avd_rr_ind(d_small, w);
  choice.bound_ind_joint = bound_avd_ind_joint(d_large, w, epsilon_total, n);
  choice.thresholds = compute_thresholds(n, d_large, static_cast<double>(w),
                                         epsilon_total);
  choice.method = choice.bound_ind_joint < choice.bound_rr_independent
                      ? EstimationMethod::kIndJointCastell
                      : EstimationMethod::kRrIndependent;
  return choice;
}

HybridChoice select_hybrid(std::size_t n, std::size_t w, std::size_t d,
                           double epsilon_per_attribute) {
  return select_hybrid(n, w, d, d, epsilon_per_attribute);
}

EstimationResult estimate(const ProbTensor& observed,
                          const std::vector<RandomizationMatrix>& ms,
                          std::size_t n, const EstimationOptions& options) {
  check_axis_matrices(observed, ms);
  EstimationResult result;
  result.method_used = options.method;

  std::size_t d_small = ms.front().d;
  std::size_t d_large = ms.front().d;
  double epsilon_total = 0.0;
  for (const auto& m : ms) {
    d_small = std::min(d_small, m.d);
    d_large = std::max(d_large, m.d);
    epsilon_total += m.epsilon;
  }
  const std::size_t w = ms.size();

  if (options.method == EstimationMethod::kHybrid) {
    result.method_used =
        select_hybrid(n, w, d_small, d_large,
                      epsilon_total / static_cast<double>(w))
            .method;
  }

  const auto started = std::chrono::steady_clock::now();
  switch (result.method_used) {
    case EstimationMethod::kRrJoint:
      result.estimate =
          estimate_rr_joint(observed, kronecker_joint(ms, options.omega_cap));
      break;
    case EstimationMethod::kRrIndependent:
      result.estimate = estimate_rr_independent(observed, ms);
      break;
    case EstimationMethod::kIndJointNaive:
      result.estimate = estimate_naive(observed, ms, options.omega_cap);
      break;
    case EstimationMethod::kIndJointReduced:
      result.estimate = estimate_reduced(observed, ms, options.omega_cap);
      break;
    case EstimationMethod::kIndJointCastell:
      result.estimate = estimate_castell(observed, ms);
      break;
    case EstimationMethod::kTruncated:
      result.estimate =
          estimate_truncated(observed, ms, options.recursive_truncation);
      break;
    case EstimationMethod::kHybrid:
      throw Error(ErrorCode::kInvalidArgument,
                  "hybrid selection must resolve before estimation");
  }
  const auto finished = std::chrono::steady_clock::now();
  result.elapsed_sec =
      std::chrono::duration<double>(finished - started).count();
  result.mass_deficit = result.method_used == EstimationMethod::kTruncated
                            ? 1.0 - result.estimate.sum()
                            : 0.0;

  if (n > 0 && w >= 1) {
    result.bounds_valid = true;
    result.bound_rr_independent = bound_avd_rr_ind(d_small, w);
    result.bound_ind_joint =
        bound_avd_ind_joint(d_large, w, epsilon_total, n);
    result.thresholds =
        compute_thresholds(n, d_large, static_cast<double>(w), epsilon_total);
  }
  return result;
}

EstimationResult estimate(const CategoricalDataset& randomized,
                          const AttributeSubset& subset,
                          const RandomizationPlan& plan,
                          const EstimationOptions& options) {
  const ProbTensor observed = empirical_distribution(randomized, subset);
  const std::vector<RandomizationMatrix> ms = plan_for_subset(plan, subset);
  return estimate(observed, ms, randomized.record_count(), options);
}

}  // namespace ldpjoint
