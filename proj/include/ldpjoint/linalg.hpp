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

#ifndef LDPJOINT_LINALG_HPP_
#define LDPJOINT_LINALG_HPP_

#include <cstddef>
#include <vector>

namespace ldpjoint {

// Dense row-major matrix. The sizes this library needs stay small (a few
// thousand rows at most), so a flat vector with no blocking is enough.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

Mat identity_matrix(std::size_t n);
Mat transpose(const Mat& m);
Mat multiply(const Mat& lhs, const Mat& rhs);
std::vector<double> multiply(const Mat& m, const std::vector<double>& v);

// Inverse by Gauss-Jordan elimination with partial pivoting. Raises
// kSingularMatrix when a pivot is smaller than 1e-13 times the largest
// input magnitude.
Mat gauss_jordan_inverse(const Mat& m);

Mat kronecker_product(const Mat& lhs, const Mat& rhs);

double max_abs_diff(const Mat& lhs, const Mat& rhs);

}  // namespace ldpjoint

#endif  // LDPJOINT_LINALG_HPP_
