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

#include "ldpjoint/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "ldpjoint/error.hpp"

namespace ldpjoint {

Mat identity_matrix(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat transpose(const Mat& m) {
  Mat out(m.cols, m.rows);
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t c = 0; c < m.cols; ++c) {
      out.at(c, r) = m.at(r, c);
    }
  }
  return out;
}

Mat multiply(const Mat& lhs, const Mat& rhs) {
  if (lhs.cols != rhs.rows) {
    throw Error(ErrorCode::kShapeMismatch, "matrix product shape mismatch");
  }
  Mat out(lhs.rows, rhs.cols);
  for (std::size_t r = 0; r < lhs.rows; ++r) {
    for (std::size_t k = 0; k < lhs.cols; ++k) {
      const double l = lhs.at(r, k);
      if (l == 0.0) continue;
      const double* rhs_row = &rhs.a[k * rhs.cols];
      double* out_row = &out.a[r * out.cols];
      for (std::size_t c = 0; c < rhs.cols; ++c) {
        out_row[c] += l * rhs_row[c];
      }
    }
  }
  return out;
}

std::vector<double> multiply(const Mat& m, const std::vector<double>& v) {
  if (m.cols != v.size()) {
    throw Error(ErrorCode::kShapeMismatch, "matrix-vector shape mismatch");
  }
  std::vector<double> out(m.rows, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double* row = &m.a[r * m.cols];
    double acc = 0.0;
    for (std::size_t c = 0; c < m.cols; ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
  return out;
}

Mat gauss_jordan_inverse(const Mat& m) {
  if (m.rows != m.cols) {
    throw Error(ErrorCode::kShapeMismatch, "only square matrices invert");
  }
  const std::size_t n = m.rows;
  Mat work = m;
  Mat inv = identity_matrix(n);

  double scale = 0.0;
  for (double v : m.a) scale = std::max(scale, std::fabs(v));
  const double pivot_floor = 1e-13 * std::max(scale, 1.0);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::fabs(work.at(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double cand = std::fabs(work.at(r, col));
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best < pivot_floor) {
      throw Error(ErrorCode::kSingularMatrix, "matrix is singular");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(work.at(col, c), work.at(pivot, c));
        std::swap(inv.at(col, c), inv.at(pivot, c));
      }
    }
    const double inv_pivot = 1.0 / work.at(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      work.at(col, c) *= inv_pivot;
      inv.at(col, c) *= inv_pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = work.at(r, col);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        work.at(r, c) -= factor * work.at(col, c);
        inv.at(r, c) -= factor * inv.at(col, c);
      }
    }
  }
  return inv;
}

Mat kronecker_product(const Mat& lhs, const Mat& rhs) {
  Mat out(lhs.rows * rhs.rows, lhs.cols * rhs.cols);
  for (std::size_t lr = 0; lr < lhs.rows; ++lr) {
    for (std::size_t lc = 0; lc < lhs.cols; ++lc) {
      const double l = lhs.at(lr, lc);
      if (l == 0.0) continue;
      for (std::size_t rr = 0; rr < rhs.rows; ++rr) {
        for (std::size_t rc = 0; rc < rhs.cols; ++rc) {
          out.at(lr * rhs.rows + rr, lc * rhs.cols + rc) = l * rhs.at(rr, rc);
        }
      }
    }
  }
  return out;
}

double max_abs_diff(const Mat& lhs, const Mat& rhs) {
  if (lhs.rows != rhs.rows || lhs.cols != rhs.cols) {
    throw Error(ErrorCode::kShapeMismatch, "matrix difference shape mismatch");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.a.size(); ++i) {
    worst = std::max(worst, std::fabs(lhs.a[i] - rhs.a[i]));
  }
  return worst;
}

}  // namespace ldpjoint
