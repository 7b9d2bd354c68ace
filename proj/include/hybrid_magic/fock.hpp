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
#include "hybrid_magic/quadrature.hpp"

namespace hybrid_magic {

// Truncated single-mode state; index n is the photon number.
struct FockVector {
  VectorXc amplitudes;

  int d_max() const { return static_cast<int>(amplitudes.size()); }
  MatrixXc density() const { return amplitudes * amplitudes.adjoint(); }
};

// rho_{mn}; Hermitian, unit trace, PSD.
using BosonDensityMatrix = MatrixXc;

void validate_density(const MatrixXc& rho, const char* what = "density matrix");

struct StateSpec {
  enum class Kind { fock, coherent, cat };
  Kind kind = Kind::fock;
  int n = 0;
  Complex beta{0.0, 0.0};

  static StateSpec fock(int n) { return {Kind::fock, n, {}}; }
  static StateSpec coherent(Complex b) { return {Kind::coherent, 0, b}; }
  static StateSpec cat(Complex b) { return {Kind::cat, 0, b}; }
  // Parses "fock:3", "coherent:1.5", "coherent:1+0.5i", "cat:2".
  static StateSpec parse(const std::string& text);
  std::string str() const;
};

// max(15, ceil(|b|^2 + 7|b| + 10)) for coherent/cat, max(15, n + 1) for Fock.
int auto_cutoff(const StateSpec& spec);

// Builds the normalized truncated state. d_max <= 0 selects auto_cutoff.
// Throws CutoffError when the weight beyond d_max is >= tail_tolerance.
FockVector make_state(const StateSpec& spec, int d_max = 0, double tail_tolerance = 1e-10);

// Weight the untruncated state carries at n >= d_max.
double tail_weight(const StateSpec& spec, int d_max);

// Pure single-mode Gaussian state parameters.
struct GaussianStateParams {
  Complex delta{0.0, 0.0};
  double r_sq = 0.0;
  double phi_sq = 0.0;

  double mu() const { return std::cosh(r_sq); }
  Complex nu() const { return std::polar(std::sinh(r_sq), phi_sq); }
};

// <m| Upsilon(alpha; r) |n>, the r-ordered phase-point operator element.
Complex phase_point_element(int m, int n, Complex alpha, double r);

// All elements O_{m,n}(alpha; r) for m, n < d_max.
MatrixXc phase_point_matrix(Complex alpha, double r, int d_max);

// 2 D(alpha) (-1)^{a^dag a} D(alpha)^dag from truncated matrix exponentials.
// Built in a padded space and cropped to d_max x d_max.
MatrixXc phase_point_matrix_oracle(Complex alpha, int d_max);

// Truncated displacement operator exp(alpha a^dag - conj(alpha) a) on d_max levels.
MatrixXc displacement_matrix(Complex alpha, int d_max);
MatrixXc annihilation_matrix(int d_max);

// W(alpha; r) = Tr[rho Upsilon(alpha; r)]. Throws RealityError when the
// imaginary part exceeds 1e-6.
double bosonic_wigner(const MatrixXc& rho, Complex alpha, double r);
double bosonic_wigner(const FockVector& psi, Complex alpha, double r);

// Largest index whose population exceeds 1e-12.
int occupied_extent(const MatrixXc& rho);

// Mana_p = (1 / (1 - p/2)) ln int |W(alpha; r)|^p d^2 alpha / pi. A spec with
// half_width <= 0 gets the auto half-width.
MagicResult mana_p(const MatrixXc& rho, double p, double r, QuadratureSpec spec = {});
MagicResult mana_p(const FockVector& psi, double p, double r, QuadratureSpec spec = {});

}  // namespace hybrid_magic
