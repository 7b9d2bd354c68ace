// Copyright 2026 The hybrid-magic Authors
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

#pragma once

#include <utility>
#include <vector>

#include "hybrid_magic/core.hpp"
#include "hybrid_magic/quadrature.hpp"

namespace hybrid_magic {

// Real basis of phase-point matrix elements O_{m,n}(alpha; r) restricted to a
// support set of pairs m <= n. Diagonal pairs contribute one column (O_mm is
// real), off-diagonal pairs two (Re, Im).
//
// Any Hermitian coefficient matrix C gives the real field
//   w(alpha) = sum_{m,n} O_{m,n}(alpha) C(n, m)
// as a dot product of a basis row with coefficients().
class PhasePointBasis {
 public:
  PhasePointBasis(double r, std::vector<std::pair<int, int>> support);

  // Support pairs (m <= n) where any of the matrices has a nonzero entry.
  static std::vector<std::pair<int, int>> support_of(const std::vector<MatrixXc>& coeffs);

  int columns() const { return columns_; }
  double r() const { return r_; }
  int max_index() const { return max_index_; }
  // Sorted, deduplicated support pairs.
  const std::vector<std::pair<int, int>>& support() const { return support_; }

  // Writes the `columns()` basis values at alpha.
  void evaluate(Complex alpha, double* out) const;

  // Column-major B x Q real matrix mapping basis values to the Q fields.
  Matrix<double> coefficients(const std::vector<MatrixXc>& coeffs) const;

 private:
  struct Entry {
    int m;
    int col;
    double constant;  // ((r+1)/(r-1))^m sqrt(m!/(m+k)!) (2/(1-r))^{k+1}
  };
  struct Group {
    int k;
    int m_max;
    std::vector<Entry> entries;
  };

  double r_;
  int columns_ = 0;
  int max_index_ = 0;
  int k_max_ = 0;
  std::vector<std::pair<int, int>> support_;
  std::vector<int> column_of_;  // first column of each support pair
  std::vector<Group> groups_;
};

// Sum over a fixed grid of weight * sum_q mult_q |field_q|^p, where the fields
// are basis rows times a coefficient matrix. The basis table is cached when it
// fits the memory budget and rebuilt chunk by chunk otherwise.
class GridLpIntegrator {
 public:
  GridLpIntegrator(const PhasePointBasis& basis, const PhaseGrid& grid,
                   std::size_t cache_bytes = std::size_t(256) << 20);

  double lp_sum(const Matrix<double>& coef, const Vector<double>& mult, double p) const;

  // Plain integrals (no absolute value) of each field.
  Vector<double> integrals(const Matrix<double>& coef) const;

  const PhaseGrid& grid() const { return grid_; }

 private:
  template <typename Reduce>
  void for_each_block(const Matrix<double>& coef, Reduce&& reduce) const;

  PhasePointBasis basis_;
  PhaseGrid grid_;
  bool cached_ = false;
  Matrix<double> table_;  // columns x nodes
};

// Refines the grid until sum_q mult_q int |field_q|^p converges.
QuadratureResult lp_sum_refined(const PhasePointBasis& basis, const Matrix<double>& coef,
                                const Vector<double>& mult, double p, const QuadratureSpec& spec);

}  // namespace hybrid_magic
