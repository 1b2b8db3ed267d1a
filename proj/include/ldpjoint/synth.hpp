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

#ifndef LDPJOINT_SYNTH_HPP_
#define LDPJOINT_SYNTH_HPP_

#include <cstdint>
#include <vector>

#include "ldpjoint/domain.hpp"

namespace ldpjoint {

enum class MarginalKind { kHarmonic, kUniform };

// Skewed marginal with mass proportional to 1/a. By default the weights run
// over a = 2..d, which yields d - 1 categories; with `include_unit` they run
// over a = 1..d and yield d categories.
std::vector<double> harmonic_marginal(std::size_t d, bool include_unit = false);

// w-way joint with identical marginals and tunable association:
//   (1 - theta) * product of marginals + theta * shared-diagonal mass.
// Every lower-order margin keeps the same form, and for w = 2 the population
// Cramer's V equals theta for any marginal.
ProbTensor diagonal_mixture_joint(const std::vector<double>& marginal,
                                  std::size_t w, double theta);

// Mixing weight whose population Cramer's V matches `target_v`, found by
// bisection to within 0.02 in at most 60 steps. Raises kUnattainableTarget
// outside [0, 1].
double solve_theta_for_v(const std::vector<double>& marginal, double target_v);

struct SynthSpec {
  std::size_t n = 0;
  std::size_t d = 2;
  double target_v = 0.0;
  std::uint64_t seed = 0;
  std::size_t attribute_count = 2;
  MarginalKind marginal = MarginalKind::kHarmonic;
  bool include_unit_category = false;
};

struct SynthResult {
  CategoricalDataset data;
  std::vector<double> marginal;
  double theta = 0.0;
  double population_v = 0.0;
};

// Draws n records of `attribute_count` coupled attributes. Sampling walks
// the mixture directly (association branch, then category draws), one keyed
// substream per record, so no dense joint is ever materialized and a fixed
// seed reproduces the dataset exactly.
SynthResult sample_dataset(const SynthSpec& spec);

}  // namespace ldpjoint

#endif  // LDPJOINT_SYNTH_HPP_
