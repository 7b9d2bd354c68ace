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

#include "hybrid_magic/core.hpp"

namespace hybrid_magic {

// Truncation contract for the infinite series used throughout.
struct SeriesSpec {
  double term_threshold = 1e-16;
  int max_terms = 100000;

  void validate() const;
};

// Value of a truncated series plus whether it met term_threshold.
struct SeriesResult {
  double value = 0.0;
  bool converged = true;
  int terms = 0;
};

// Associated Laguerre polynomial L_m^{(k)}(x) by the three-term recurrence in m.
// Stable envelope: m, k <= 200.
double laguerre_assoc(int m, int k, double x);

// Fills out[j] = L_j^{(k)}(x) for j = 0..m_max (one recurrence pass).
void laguerre_assoc_row(int m_max, int k, double x, double* out);

// ln(m!) - ln(n!) via lgamma; m, n <= 1e6.
double log_factorial_ratio(int m, int n);

double erf(double x);

// E[|sin T| + |cos T|] for T ~ Normal(mean, variance), from the Fourier series
// of |sin| and |cos|.
SeriesResult gaussian_abs_trig_expect(double mean, double variance,
                                      const SeriesSpec& spec = {});

// sum_{n>=1} exp(-8 n^2 |a|^2) / (16 n^2 - 1); exact (4 - pi)/8 at a = 0.
double cd_power_series_tail(double abs_alpha, const SeriesSpec& spec = {});

}  // namespace hybrid_magic
