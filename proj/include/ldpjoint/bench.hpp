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

#ifndef LDPJOINT_BENCH_HPP_
#define LDPJOINT_BENCH_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ldpjoint/estimator.hpp"
#include "ldpjoint/synth.hpp"

namespace ldpjoint {

// All C(m, w) subsets when there are at most max_count of them, otherwise a
// seeded uniform sample of max_count distinct ones. Subsets come out with
// ascending indices.
std::vector<AttributeSubset> sample_subsets(const DatasetSchema& schema,
                                            std::size_t w,
                                            std::size_t max_count,
                                            std::uint64_t seed);

struct SweepDatasetSpec {
  enum class Kind { kSynth, kFile } kind = Kind::kSynth;
  SynthSpec synth;
  std::string path;
  std::string profile;
};

struct ExperimentSpec {
  SweepDatasetSpec dataset;
  std::vector<EstimationMethod> schemes;
  enum class Variable { kW, kN, kEps, kOmega } variable = Variable::kEps;
  std::vector<double> grid;
  std::size_t fixed_w = 2;
  double fixed_eps = 1.0;
  std::size_t fixed_n = 0;  // 0 keeps every record
  std::size_t trials = 3;
  std::size_t subset_count = 30;
  std::uint64_t seed = 1;
  std::size_t omega_cap = kDefaultOmegaCap;
  bool recursive_truncation = false;
  // Sup-distance level at which the omega fit reports its crossing point.
  double fit_target = 0.5;
};

ExperimentSpec experiment_from_json(const nlohmann::json& j);

// One line-delimited record per (grid point, scheme, trial), plus a summary
// object with per-point aggregates. For a fixed seed everything is
// reproducible across runs except the summary's "timestamp" and the wall-time
// fields ("elapsed_sec", "elapsed_sec_mean").
struct SweepOutput {
  std::vector<nlohmann::ordered_json> records;
  nlohmann::ordered_json summary;
};

SweepOutput run_sweep(const ExperimentSpec& spec);

// Median wall time per estimation path at each order w, over `samples`
// measurements (short operations are batched until a measurement spans at
// least 200us). The dense path is skipped once the flattened domain exceeds
// naive_dim_cap, since its cubic cost dwarfs everything else.
struct TimingRow {
  std::size_t w = 0;
  std::size_t cells = 0;
  double castell_sec = 0.0;
  double reduced_sec = 0.0;
  double naive_sec = 0.0;
  bool naive_measured = false;
};

std::vector<TimingRow> run_timing(std::size_t d,
                                  const std::vector<std::size_t>& w_grid,
                                  double retain_prob, std::size_t samples,
                                  std::size_t naive_dim_cap);

// Least squares line through (domain size, sup distance) points and the
// domain size at which the line reaches `target`. Raises kDegenerateFit
// with fewer than two distinct abscissae; the crossing is only defined for
// a positive slope.
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
  double omega_star = 0.0;
  bool omega_star_defined = false;
};

LinearFit fit_avd_vs_omega(const std::vector<std::pair<double, double>>& pts,
                           double target);

}  // namespace ldpjoint

#endif  // LDPJOINT_BENCH_HPP_
