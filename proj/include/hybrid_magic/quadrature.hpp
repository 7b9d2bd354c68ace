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

#include <functional>

#include "hybrid_magic/core.hpp"

namespace hybrid_magic {

// Integration over the square [-L, L]^2 of the complex alpha plane with the
// measure d^2 alpha / pi, by the tensor trapezoid rule under grid doubling.
// half_width <= 0 asks the caller to pick L with auto_half_width().
struct QuadratureSpec {
  double half_width = 0.0;
  int points_per_axis = 64;
  double refine_tolerance = 1e-4;
  int max_refinements = 5;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  bool converged = false;
  int refinements = 0;
  int points_per_axis = 0;
  double relative_change = 0.0;
};

// A magic value together with the quadrature that produced it.
struct MagicResult {
  double value = 0.0;
  QuadratureResult quadrature;

  bool converged() const { return quadrature.converged; }
};

// L = beta_max + sqrt(n_max + 1) + 4 sqrt((1 - r) / 2).
double auto_half_width(double beta_max, int n_max, double r);

// Uniform node layout of one refinement level.
struct PhaseGrid {
  double half_width;
  int n;  // nodes per axis

  double step() const { return 2.0 * half_width / (n - 1); }
  double coord(int i) const { return -half_width + step() * i; }
  // Trapezoid weight of node (i, j) including the 1/pi of the measure.
  double weight(int i, int j) const;
  long long size() const { return static_cast<long long>(n) * n; }
  Complex node(long long k) const { return {coord(static_cast<int>(k % n)), coord(static_cast<int>(k / n))}; }
};

// Runs `level` on successively doubled grids until two consecutive values
// differ relatively by less than refine_tolerance.
QuadratureResult integrate_refined(const QuadratureSpec& spec,
                                   const std::function<double(const PhaseGrid&)>& level);

// Integral of f over the spec square with measure d^2 alpha / pi. f must be
// safe to call concurrently.
QuadratureResult integrate_phase_space(const std::function<double(Complex)>& f,
                                       const QuadratureSpec& spec);

// Integral of sum_q mult_q |f_q(alpha)|^p for a vector-valued field that
// writes q values per call.
QuadratureResult integrate_lp_fields(const std::function<void(Complex, double*)>& f, int q,
                                     const Vector<double>& mult, double p,
                                     const QuadratureSpec& spec);

// sum_q mult_q |x_q|^p with fast paths for p = 1, 2, 4.
double weighted_abs_pow(const double* x, const double* mult, int q, double p);

// Worker count: HYBRID_MAGIC_THREADS if set, else hardware concurrency.
int worker_count();

// Splits [0, n) into fixed-size chunks handled by worker threads. Chunk
// boundaries do not depend on the worker count, so reductions done per chunk
// and then summed in chunk order are deterministic.
void parallel_chunks(long long n, long long chunk,
                     const std::function<void(long long chunk_index, long long begin, long long end)>& fn);

}  // namespace hybrid_magic
