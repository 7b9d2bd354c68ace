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

#include <array>
#include <string>
#include <vector>

#include "hybrid_magic/core.hpp"
#include "hybrid_magic/hybrid.hpp"
#include "hybrid_magic/quadrature.hpp"

namespace hybrid_magic {

// Free oscillator H = a^dag a + c^dag c; ground state |0>_b |0>_f.
// Closed form: pref ln ||W_vac(.; r)||_p^p + pref ln[(1 + |1 - s|^p) / 2],
// with the bosonic norm integrated numerically.
MagicResult susy_magic(double p, OrderingParams orderings = {}, QuadratureSpec spec = {});

// r-ordered vacuum Wigner function (2/(1-r)) exp(-2|alpha|^2/(1-r)).
double vacuum_wigner(Complex alpha, double r);

// <beta| Upsilon(alpha; r) |beta> and <beta| Upsilon(alpha; r) |-beta>.
double coherent_overlap(Complex beta, Complex alpha, double r);
Complex cat_cross_overlap(Complex beta, Complex alpha, double r);

// (|beta>|0> + |-beta>|1>) / sqrt(2): components for the strings 1, g1, g2,
// i g1 g2 (+ s).
std::array<double, 4> dressed_cat_components(Complex beta, Complex alpha, OrderingParams orderings = {});
HybridState dressed_cat_state(Complex beta, int d_max = 0);

// Even cat (|beta> + |-beta>) / N with N^2 = 2(1 + exp(-2|beta|^2)).
double bosonic_cat_wigner(Complex beta, Complex alpha, double r);

struct HolsteinParams {
  double tau = 1.0;
  double omega0 = 1.0;
  double g = 0.0;

  double beta() const { return -2.0 * g / omega0; }
  void validate() const;
};

struct HolsteinEffective {
  double tau_eff;
  double energy;
};

HolsteinEffective holstein_effective(const HolsteinParams& params);

// Lang-Firsov ground state (|beta>|10> + |-beta>|01>) / sqrt(2) with
// fermion columns in the usual occupation order.
HybridState holstein_state(const HolsteinParams& params, int d_max = 0);

// All 16 components in Majorana-string mask order; 8 vanish identically.
std::array<double, 16> holstein_components(const HolsteinParams& params, Complex alpha,
                                           OrderingParams orderings = {});

enum class CatModel { dressed_cat, bosonic_cat, holstein };

CatModel parse_cat_model(const std::string& name);
std::string to_string(CatModel model);

// M_p of one model at displacement beta (for holstein, beta = -2g/omega0 with
// the remaining parameters taken from `holstein`).
MagicResult model_magic(CatModel model, Complex beta, double p, OrderingParams orderings = {},
                        QuadratureSpec spec = {});
MagicResult holstein_magic(const HolsteinParams& params, double p, OrderingParams orderings = {},
                           QuadratureSpec spec = {});

struct CurvePoint {
  double x;     // sweep value as given (beta, or g for holstein)
  double beta;  // displacement used
  double magic;
  bool converged;
};

// Sweeps `grid`; for holstein the grid holds g and omega0/tau come from `holstein`.
std::vector<CurvePoint> magic_vs_beta_curves(CatModel model, const std::vector<double>& grid, double p,
                                             OrderingParams orderings = {}, QuadratureSpec spec = {},
                                             HolsteinParams holstein = {});

}  // namespace hybrid_magic
