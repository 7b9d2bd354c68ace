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

#include "hybrid_magic/overlap_basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hybrid_magic/numerics.hpp"

namespace hybrid_magic {

PhasePointBasis::PhasePointBasis(double r, std::vector<std::pair<int, int>> support)
    : r_(r), support_(std::move(support)) {
  OrderingParams{r, 0.0}.validate();
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
  std::map<int, Group> by_k;
  const double ratio = (r + 1.0) / (r - 1.0);
  const double scale = 2.0 / (1.0 - r);
  for (auto [m, n] : support_) {
    if (m < 0 || m > n) throw DomainError("support pairs must satisfy 0 <= m <= n");
    const int k = n - m;
    column_of_.push_back(columns_);
    Entry e{m, columns_, std::pow(ratio, m) * std::exp(0.5 * log_factorial_ratio(m, n)) *
                             std::pow(scale, k + 1)};
    columns_ += (k == 0) ? 1 : 2;
    auto& g = by_k[k];
    g.k = k;
    g.m_max = std::max(g.m_max, m);
    g.entries.push_back(e);
    max_index_ = std::max(max_index_, n);
    k_max_ = std::max(k_max_, k);
  }
  for (auto& kv : by_k) groups_.push_back(std::move(kv.second));
}

std::vector<std::pair<int, int>> PhasePointBasis::support_of(const std::vector<MatrixXc>& coeffs) {
  std::vector<std::pair<int, int>> out;
  if (coeffs.empty()) return out;
  const int d = static_cast<int>(coeffs.front().rows());
  double scale = 0.0;
  for (const auto& c : coeffs) scale = std::max(scale, c.cwiseAbs().maxCoeff());
  const double cut = 1e-15 * std::max(scale, 1e-300);
  for (int m = 0; m < d; ++m) {
    for (int n = m; n < d; ++n) {
      for (const auto& c : coeffs) {
        if (std::abs(c(n, m)) > cut || std::abs(c(m, n)) > cut) {
          out.emplace_back(m, n);
          break;
        }
      }
    }
  }
  return out;
}

void PhasePointBasis::evaluate(Complex alpha, double* out) const {
  const double a2 = std::norm(alpha);
  const double gauss = std::exp(-2.0 * a2 / (1.0 - r_));
  const double x = 4.0 * a2 / (1.0 - r_ * r_);
  const Complex abar = std::conj(alpha);
  double lag[201];
  Complex power(1.0, 0.0);
  int power_k = 0;
  for (const auto& g : groups_) {
    while (power_k < g.k) {
      power *= abar;
      ++power_k;
    }
    laguerre_assoc_row(g.m_max, g.k, x, lag);
    const Complex phase = gauss * power;
    for (const auto& e : g.entries) {
      const double v = e.constant * lag[e.m];
      if (g.k == 0) {
        out[e.col] = v * gauss;
      } else {
        out[e.col] = v * phase.real();
        out[e.col + 1] = v * phase.imag();
      }
    }
  }
}

Matrix<double> PhasePointBasis::coefficients(const std::vector<MatrixXc>& coeffs) const {
  Matrix<double> out = Matrix<double>::Zero(columns_, static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t q = 0; q < coeffs.size(); ++q) {
    const auto& c = coeffs[q];
    for (std::size_t i = 0; i < support_.size(); ++i) {
      auto [m, n] = support_[i];
      if (n >= c.rows()) continue;
      const int col = column_of_[i];
      if (m == n) {
        out(col, q) = c(m, m).real();
      } else {
        const Complex cnm = c(n, m);
        out(col, q) = 2.0 * cnm.real();
        out(col + 1, q) = -2.0 * cnm.imag();
      }
    }
  }
  return out;
}

namespace {

// Chunks cover whole grid rows.
long long row_chunk(const PhaseGrid& g) {
  return static_cast<long long>(std::max(1, 2048 / g.n)) * g.n;
}

}  // namespace

GridLpIntegrator::GridLpIntegrator(const PhasePointBasis& basis, const PhaseGrid& grid,
                                   std::size_t cache_bytes)
    : basis_(basis), grid_(grid) {
  const long long nodes = grid_.size();
  const std::size_t need = static_cast<std::size_t>(nodes) * basis_.columns() * sizeof(double);
  if (need <= cache_bytes) {
    cached_ = true;
    // One column per node so each chunk is a contiguous block.
    table_.resize(basis_.columns(), nodes);
    parallel_chunks(nodes, row_chunk(grid_), [&](long long, long long b, long long e) {
      for (long long k = b; k < e; ++k) basis_.evaluate(grid_.node(k), table_.col(k).data());
    });
  }
}

template <typename Reduce>
void GridLpIntegrator::for_each_block(const Matrix<double>& coef, Reduce&& reduce) const {
  const long long nodes = grid_.size();
  const int cols = basis_.columns();
  parallel_chunks(nodes, row_chunk(grid_), [&](long long c, long long b, long long e) {
    const long long len = e - b;
    Matrix<double> fields;
    if (cached_) {
      fields.noalias() = coef.transpose() * table_.middleCols(b, len);
    } else {
      Matrix<double> block(cols, len);
      for (long long k = b; k < e; ++k) basis_.evaluate(grid_.node(k), block.col(k - b).data());
      fields.noalias() = coef.transpose() * block;
    }
    reduce(c, b, fields);
  });
}

double GridLpIntegrator::lp_sum(const Matrix<double>& coef, const Vector<double>& mult,
                                double p) const {
  const long long nodes = grid_.size();
  const long long chunk = row_chunk(grid_);
  const int q = static_cast<int>(coef.cols());
  const int n = grid_.n;
  std::vector<double> partial((nodes + chunk - 1) / chunk, 0.0);
  for_each_block(coef, [&](long long c, long long b, const Matrix<double>& fields) {
    double acc = 0.0;
    for (long long j = 0; j < fields.cols(); ++j) {
      const long long k = b + j;
      const double w = grid_.weight(static_cast<int>(k % n), static_cast<int>(k / n));
      acc += w * weighted_abs_pow(fields.col(j).data(), mult.data(), q, p);
    }
    partial[c] = acc;
  });
  double sum = 0.0;
  for (double v : partial) sum += v;
  return sum;
}

Vector<double> GridLpIntegrator::integrals(const Matrix<double>& coef) const {
  const long long nodes = grid_.size();
  const long long chunk = row_chunk(grid_);
  const int q = static_cast<int>(coef.cols());
  std::vector<Vector<double>> partial((nodes + chunk - 1) / chunk, Vector<double>::Zero(q));
  for_each_block(coef, [&](long long c, long long b, const Matrix<double>& fields) {
    Vector<double> acc = Vector<double>::Zero(q);
    for (long long j = 0; j < fields.cols(); ++j) {
      const long long k = b + j;
      acc += grid_.weight(static_cast<int>(k % grid_.n), static_cast<int>(k / grid_.n)) * fields.col(j);
    }
    partial[c] = acc;
  });
  Vector<double> sum = Vector<double>::Zero(q);
  for (const auto& v : partial) sum += v;
  return sum;
}

QuadratureResult lp_sum_refined(const PhasePointBasis& basis, const Matrix<double>& coef,
                                const Vector<double>& mult, double p, const QuadratureSpec& spec) {
  return integrate_refined(spec, [&](const PhaseGrid& g) {
    // Single-use grids: skip the cache.
    GridLpIntegrator integ(basis, g, 0);
    return integ.lp_sum(coef, mult, p);
  });
}

}  // namespace hybrid_magic
