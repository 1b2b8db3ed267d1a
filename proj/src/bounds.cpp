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

#include "ldpjoint/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ldpjoint/error.hpp"

namespace ldpjoint {
namespace {

void check_domain(std::size_t d) {
  if (d < 2) {
    throw Error(ErrorCode::kOutOfRange, "domain size must be at least 2");
  }
}

void check_order(double w) {
  if (!(w >= 1.0) || !std::isfinite(w)) {
    throw Error(ErrorCode::kOutOfRange, "order must be at least 1");
  }
}

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kOutOfRange, "privacy budget must be positive");
  }
}

double avd_rr_ind_real(double d, double w) {
  const double dep = std::pow(d, -w);
  return std::max(dep, 1.0 / d - dep);
}

double avd_ind_joint_real(double d, double w, double epsilon_total, double n) {
  const double damp = std::exp(epsilon_total / w);
  return std::pow((1.0 + (d - 1.0) / damp) * d, w) / n;
}

}  // namespace

double bound_mse_rr_ind(double v, std::size_t d) {
  check_domain(d);
  if (v < 0.0 || v > 1.0) {
    throw Error(ErrorCode::kOutOfRange, "association must lie in [0, 1]");
  }
  return v * v / static_cast<double>(d);
}

double bound_avd_rr_ind(std::size_t d, std::size_t w) {
  check_domain(d);
  check_order(static_cast<double>(w));
  return avd_rr_ind_real(static_cast<double>(d), static_cast<double>(w));
}

double bound_avd_ind_joint(std::size_t d, std::size_t w, double epsilon_total,
                           std::size_t n) {
  check_domain(d);
  check_order(static_cast<double>(w));
  check_epsilon(epsilon_total);
  if (n == 0) {
    throw Error(ErrorCode::kOutOfRange, "record count must be positive");
  }
  return avd_ind_joint_real(static_cast<double>(d), static_cast<double>(w),
                            epsilon_total, static_cast<double>(n));
}

Thresholds compute_thresholds(std::size_t n, std::size_t d, double w,
                              double epsilon_total) {
  check_domain(d);
  check_order(w);
  check_epsilon(epsilon_total);
  if (n == 0) {
    throw Error(ErrorCode::kOutOfRange, "record count must be positive");
  }
  const double dd = static_cast<double>(d);
  const double nn = static_cast<double>(n);
  const double envelope = avd_rr_ind_real(dd, w);

  Thresholds t;
  // The inverse-estimation envelope is C / n, so it crosses the flat
  // independence envelope exactly at n_star = C / envelope.
  t.n_star = avd_ind_joint_real(dd, w, epsilon_total, 1.0) / envelope;

  // Solve (1 + (d-1) e^(-eps/w))^w d^w / n = envelope for eps.
  const double root = std::pow(envelope * nn, 1.0 / w) / dd;
  if (root - 1.0 > 0.0) {
    t.eps_star = w * std::log((dd - 1.0) / (root - 1.0));
    t.eps_star_defined = true;
  } else {
    t.eps_star = std::numeric_limits<double>::infinity();
    t.eps_star_defined = false;
  }

  t.w_star = (std::log(nn) - std::log(dd)) / std::log(dd * dd);
  return t;
}

}  // namespace ldpjoint
