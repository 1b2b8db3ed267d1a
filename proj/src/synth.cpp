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

#include "ldpjoint/synth.hpp"

#include <cmath>
#include <string>

#include "ldpjoint/metrics.hpp"
#include "ldpjoint/rng.hpp"

namespace ldpjoint {
namespace {

constexpr double kAssociationTol = 0.02;
constexpr int kMaxBisectionSteps = 60;
constexpr std::size_t kMaxJointCells = std::size_t{1} << 24;

std::uint32_t sample_category(const std::vector<double>& cdf, double u) {
  for (std::size_t i = 0; i + 1 < cdf.size(); ++i) {
    if (u < cdf[i]) return static_cast<std::uint32_t>(i);
  }
  return static_cast<std::uint32_t>(cdf.size() - 1);
}

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> cdf(p.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
  }
  return cdf;
}

}  // namespace

std::vector<double> harmonic_marginal(std::size_t d, bool include_unit) {
  const std::size_t first = include_unit ? 1 : 2;
  if (d < first + 1) {
    throw Error(ErrorCode::kDegenerateAttribute,
                "harmonic marginal needs at least two categories");
  }
  std::vector<double> p;
  p.reserve(d - first + 1);
  double total = 0.0;
  for (std::size_t a = first; a <= d; ++a) {
    p.push_back(1.0 / static_cast<double>(a));
    total += p.back();
  }
  for (double& v : p) v /= total;
  return p;
}

ProbTensor diagonal_mixture_joint(const std::vector<double>& marginal,
                                  std::size_t w, double theta) {
  if (marginal.size() < 2) {
    throw Error(ErrorCode::kDegenerateAttribute,
                "marginal needs at least two categories");
  }
  if (w < 1) {
    throw Error(ErrorCode::kOutOfRange, "joint order must be at least 1");
  }
  if (theta < 0.0 || theta > 1.0) {
    throw Error(ErrorCode::kOutOfRange, "mixing weight must lie in [0, 1]");
  }
  const std::size_t k = marginal.size();
  std::size_t cells = 1;
  for (std::size_t axis = 0; axis < w; ++axis) {
    if (cells > kMaxJointCells / k) {
      throw Error(ErrorCode::kDomainTooLarge, "joint tensor would not fit");
    }
    cells *= k;
  }
  ProbTensor joint = make_tensor(std::vector<std::size_t>(w, k),
                                 TensorRole::kEmpirical);
  for (std::size_t flat = 0; flat < cells; ++flat) {
    std::size_t rem = flat;
    double independent = 1.0;
    bool on_diagonal = true;
    const std::size_t last = flat % k;
    for (std::size_t axis = 0; axis < w; ++axis) {
      const std::size_t a = rem % k;
      rem /= k;
      independent *= marginal[a];
      if (a != last) on_diagonal = false;
    }
    double v = (1.0 - theta) * independent;
    if (on_diagonal) v += theta * marginal[last];
    joint.values[flat] = v;
  }
  return joint;
}

double solve_theta_for_v(const std::vector<double>& marginal, double target_v) {
  if (target_v < 0.0 || target_v > 1.0) {
    throw Error(ErrorCode::kUnattainableTarget,
                "association target must lie in [0, 1]");
  }
  if (target_v == 0.0) return 0.0;
  if (target_v == 1.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  double mid = target_v;
  for (int step = 0; step < kMaxBisectionSteps; ++step) {
    mid = 0.5 * (lo + hi);
    const double v = cramers_v(diagonal_mixture_joint(marginal, 2, mid));
    if (std::fabs(v - target_v) <= kAssociationTol) return mid;
    if (v < target_v) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return mid;
}

SynthResult sample_dataset(const SynthSpec& spec) {
  if (spec.n == 0) {
    throw Error(ErrorCode::kEmptyDataset, "cannot sample zero records");
  }
  if (spec.attribute_count < 1) {
    throw Error(ErrorCode::kOutOfRange, "need at least one attribute");
  }
  if (spec.marginal == MarginalKind::kUniform && spec.d < 2) {
    throw Error(ErrorCode::kDegenerateAttribute,
                "uniform marginal needs at least two categories");
  }
  std::vector<double> marginal =
      spec.marginal == MarginalKind::kUniform
          ? std::vector<double>(spec.d, 1.0 / static_cast<double>(spec.d))
          : harmonic_marginal(spec.d, spec.include_unit_category);
  const double theta = solve_theta_for_v(marginal, spec.target_v);
  const std::vector<double> cdf = cumulative(marginal);

  DatasetSchema schema;
  for (std::size_t c = 0; c < spec.attribute_count; ++c) {
    schema.attributes.push_back(
        make_attribute("a" + std::to_string(c + 1), marginal.size()));
  }
  CategoricalDataset data(schema, DataRole::kTrueData);
  data.reserve(spec.n);

  std::vector<std::uint32_t> record(spec.attribute_count);
  for (std::size_t r = 0; r < spec.n; ++r) {
    const double branch = keyed_uniform(spec.seed, r, 0);
    if (branch < theta) {
      const std::uint32_t shared =
          sample_category(cdf, keyed_uniform(spec.seed, r, 1));
      for (auto& v : record) v = shared;
    } else {
      for (std::size_t c = 0; c < spec.attribute_count; ++c) {
        record[c] = sample_category(cdf, keyed_uniform(spec.seed, r, 1 + c));
      }
    }
    data.append(record);
  }

  SynthResult result{std::move(data), std::move(marginal), theta, 0.0};
  result.population_v =
      cramers_v(diagonal_mixture_joint(result.marginal, 2, theta));
  return result;
}

}  // namespace ldpjoint
