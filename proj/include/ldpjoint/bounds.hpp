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

#ifndef LDPJOINT_BOUNDS_HPP_
#define LDPJOINT_BOUNDS_HPP_

#include <cstddef>

namespace ldpjoint {

// Worst-case mean squared error of the independence-assuming estimate of a
// pair joint when the attributes have association v (Cramer's V) and share
// domain size d: v * v / d.
double bound_mse_rr_ind(double v, std::size_t d);

// Worst-case max-cell error of the independence-assuming estimate over a
// w-way joint with smallest domain size d:
//   max(d^-w, 1/d - d^-w).
// The two branches cover perfectly dependent and fully independent data.
double bound_avd_rr_ind(std::size_t d, std::size_t w);

// Sampling-driven max-cell error envelope for inverse-based joint estimation
// over w attributes of domain size at most d, total budget epsilon_total
// split evenly, n records:
//   (1 + (d - 1) / e^(epsilon_total / w))^w * d^w / n.
double bound_avd_ind_joint(std::size_t d, std::size_t w, double epsilon_total,
                           std::size_t n);

// Crossover points where the two envelopes above meet.
//   n_star:   records needed before inverse estimation wins at (d, w, eps).
//   eps_star: budget needed before inverse estimation wins at (d, w, n);
//             undefined (set to +inf, flag false) when no finite budget
//             suffices, and can come out nonpositive when every budget works.
//   w_star:   order below which inverse estimation wins for any budget,
//             (ln n - ln d) / ln d^2, depends on (n, d) only.
// w is real-valued here so the crossovers can be evaluated at w_star itself.
struct Thresholds {
  double n_star = 0.0;
  double eps_star = 0.0;
  bool eps_star_defined = false;
  double w_star = 0.0;
};

Thresholds compute_thresholds(std::size_t n, std::size_t d, double w,
                              double epsilon_total);

}  // namespace ldpjoint

#endif  // LDPJOINT_BOUNDS_HPP_
