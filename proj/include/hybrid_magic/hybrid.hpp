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

#include <memory>
#include <vector>

#include "hybrid_magic/core.hpp"
#include "hybrid_magic/fock.hpp"
#include "hybrid_magic/majorana.hpp"
#include "hybrid_magic/overlap_basis.hpp"
#include "hybrid_magic/quadrature.hpp"

namespace hybrid_magic {

// Pure state of one bosonic mode and N <= 2 fermionic modes. Row n is the
// photon number, column f the fermionic occupation index (see MajoranaString).
struct HybridState {
  MatrixXc amplitudes;

  HybridState() = default;
  // Validates shape (2 or 4 columns) and normalization.
  explicit HybridState(MatrixXc amps);

  static HybridState product(const FockVector& boson, const VectorXc& fermion);

  int modes() const { return amplitudes.cols() == 2 ? 1 : 2; }
  int d_max() const { return static_cast<int>(amplitudes.rows()); }
  // False when both even and odd fermion numbers carry weight.
  bool parity_homogeneous() const;
  // Full density matrix with row index n * 2^N + f.
  MatrixXc density() const;
};

// Mixed hybrid state with row index n * 2^N + f.
struct HybridDensity {
  MatrixXc rho;
  int modes = 1;

  int d_max() const { return static_cast<int>(rho.rows()) >> modes; }
};

MatrixXc reduced_boson(const HybridState& psi);
MatrixXc reduced_fermion(const HybridState& psi);

// Hybrid Wigner coefficients w_I(alpha) for all 4^N Majorana strings I:
//   w_I(alpha) = Tr[rho Upsilon(alpha; r) (x) G_I(s)]
// with G_I the shifted Hermitian string. Each component is a phase-point
// contraction sum_{m,n} O_{m,n}(alpha) C_I(n, m).
class WignerComponentField {
 public:
  WignerComponentField(int modes, OrderingParams orderings, std::vector<MatrixXc> contractions);

  int modes() const { return modes_; }
  int count() const { return static_cast<int>(contractions_.size()); }
  const OrderingParams& orderings() const { return orderings_; }
  const std::vector<MajoranaString>& strings() const { return strings_; }
  const std::vector<MatrixXc>& contractions() const { return contractions_; }
  int d_max() const { return static_cast<int>(contractions_.front().rows()); }

  // All count() components at alpha.
  void evaluate(Complex alpha, double* out) const;
  Vector<double> values(Complex alpha) const;
  double component(int index, Complex alpha) const;
  // Component before discarding the imaginary part.
  Complex raw_component(int index, Complex alpha) const;

  const PhasePointBasis& basis() const { return *basis_; }
  const Matrix<double>& coefficients() const { return coefficients_; }

  // Half-width suited to the state's Fock extent.
  double auto_half_width() const;

 private:
  int modes_;
  OrderingParams orderings_;
  std::vector<MajoranaString> strings_;
  std::vector<MatrixXc> contractions_;
  std::shared_ptr<PhasePointBasis> basis_;
  Matrix<double> coefficients_;
};

// C_I(n, m) = sum_{f,g} psi(n, f) G_I(g, f) conj(psi(m, g)).
std::vector<MatrixXc> component_contractions(const HybridState& psi, double s);
std::vector<MatrixXc> component_contractions(const HybridDensity& rho, double s);

WignerComponentField components_from_state(const HybridState& psi, OrderingParams orderings = {});
WignerComponentField components_from_state(const HybridDensity& rho, OrderingParams orderings = {});

// (sum_I int |w_I|^p d^2 alpha / pi)^{1/p}.
MagicResult superspace_lp_norm(const WignerComponentField& field, double p, QuadratureSpec spec = {});

// Signed integral of one component.
QuadratureResult component_integral(const WignerComponentField& field, int index, QuadratureSpec spec = {});

// (1 / (1 - p/2)) ln[2^{-N} sum_I int |w_I|^p d^2 alpha / pi].
MagicResult hybrid_magic_p(const WignerComponentField& field, double p, QuadratureSpec spec = {});
MagicResult hybrid_magic_p(const HybridState& psi, double p, OrderingParams orderings = {},
                           QuadratureSpec spec = {});

struct MutualMagic {
  double value = 0.0;
  double hybrid = 0.0;
  double mana = 0.0;
  double fermion = 0.0;
  bool converged = true;
};

// Hybrid magic minus reduced-boson mana minus the purity-corrected SRE of the
// reduced fermion state, at Weyl ordering.
MutualMagic mutual_magic(const HybridState& psi, double p = 1.0, QuadratureSpec spec = {});

}  // namespace hybrid_magic
