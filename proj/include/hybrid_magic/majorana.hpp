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

#include <string>
#include <vector>

#include "hybrid_magic/core.hpp"

namespace hybrid_magic {

// Hermitian Majorana string on N <= 2 modes. Bit a-1 of `mask` selects gamma_a,
// with gamma_{2k-1} = c_k + c_k^dag and gamma_{2k} = -i(c_k - c_k^dag).
// Jordan-Wigner order: c_1 = a (x) 1, c_2 = Z (x) a; occupation basis index
// f = n_1 * 2^{N-1} + ... + n_N.
struct MajoranaString {
  int modes = 1;
  unsigned mask = 0;

  int size() const;  // number of Majorana factors
  // Names like "1", "g1", "g2 g3", "i g1 g2".
  std::string label() const;
  void validate() const;

  // All 4^N strings in mask order.
  static std::vector<MajoranaString> all(int modes);
};

// gamma_a (1-based) on `modes` modes.
MatrixXc majorana_generator(int a, int modes);

// Hermitian matrix of the string: per mode 1, gamma, or i gamma gamma, times
// i^{c(c-1)/2} for c modes that carry a single gamma.
MatrixXc string_matrix(const MajoranaString& str);

// Same with every complete pair i gamma_{2k-1} gamma_{2k} replaced by
// (i gamma_{2k-1} gamma_{2k} + s). This is the fermionic operator of the
// s-ordered Wigner component labelled by the string.
MatrixXc shifted_string_matrix(const MajoranaString& str, double s);

// Pure or mixed state of N <= 2 fermionic modes, stored as a density matrix.
struct FermionState {
  int modes = 1;
  MatrixXc rho;

  static FermionState pure(const VectorXc& psi);
  static FermionState mixed(const MatrixXc& rho);

  double purity() const { return (rho * rho).trace().real(); }
  bool is_pure(double tol = 1e-10) const { return std::abs(purity() - 1.0) < tol; }
};

// p_mu = 2^{-N} |Tr(rho Gamma_mu)|^2 over all 4^N strings in mask order.
Vector<double> string_spectrum(const FermionState& state);

// Stabilizer alpha-Renyi entropy (1/(1-alpha)) ln sum p^alpha - N ln 2 of a
// pure state. Rejects mixed input.
double sre_alpha(const FermionState& state, double alpha);

// Single-mode fermionic magic
//   (1/(1-p/2)) ln[(1 + |<g1>|^p + |<g2>|^p + |<i g1 g2 + s>|^p) / 2].
double fermionic_magic_p(const FermionState& state, double p, double s);

// Purity-corrected SRE with N_F = 1. Two-mode inputs must live in the
// single-excitation sector span{|01>, |10>}, which is treated as one
// effective mode.
double modified_sre(const FermionState& state, double p);

// Same correction over all 4^N strings with N_F = N.
double modified_sre_all_strings(const FermionState& state, double p);

}  // namespace hybrid_magic
