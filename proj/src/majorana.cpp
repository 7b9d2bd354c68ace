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

#include "hybrid_magic/majorana.hpp"

#include <bit>
#include <cmath>

#include "hybrid_magic/numerics.hpp"

namespace hybrid_magic {

namespace {

MatrixXc kron(const MatrixXc& a, const MatrixXc& b) {
  MatrixXc out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

MatrixXc lowering(int k, int modes) {
  MatrixXc a = MatrixXc::Zero(2, 2);
  a(0, 1) = 1.0;
  MatrixXc z = MatrixXc::Identity(2, 2);
  z(1, 1) = -1.0;
  MatrixXc out = MatrixXc::Identity(1, 1);
  for (int j = 1; j <= modes; ++j) {
    if (j < k) out = kron(out, z);
    else if (j == k) out = kron(out, a);
    else out = kron(out, MatrixXc::Identity(2, 2));
  }
  return out;
}

MatrixXc build_string(const MajoranaString& str, double s) {
  str.validate();
  const int dim = 1 << str.modes;
  MatrixXc out = MatrixXc::Identity(dim, dim);
  int singles = 0;
  for (int k = 1; k <= str.modes; ++k) {
    const bool first = str.mask & (1u << (2 * k - 2));
    const bool second = str.mask & (1u << (2 * k - 1));
    if (first && second) {
      const MatrixXc pair = Complex(0.0, 1.0) * majorana_generator(2 * k - 1, str.modes) *
                                majorana_generator(2 * k, str.modes) +
                            s * MatrixXc::Identity(dim, dim);
      out = out * pair;
    } else if (first || second) {
      out = out * majorana_generator(first ? 2 * k - 1 : 2 * k, str.modes);
      ++singles;
    }
  }
  const int omega = (singles * (singles - 1) / 2) % 4;
  static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return ipow[omega] * out;
}

}  // namespace

int MajoranaString::size() const { return std::popcount(mask); }

void MajoranaString::validate() const {
  if (modes < 1 || modes > 2) throw DomainError("Majorana strings support 1 or 2 modes");
  if (mask >= (1u << (2 * modes))) throw DomainError("Majorana string mask out of range");
}

std::string MajoranaString::label() const {
  if (mask == 0) return "1";
  std::string out;
  int singles = 0;
  for (int k = 1; k <= modes; ++k) {
    const bool first = mask & (1u << (2 * k - 2));
    const bool second = mask & (1u << (2 * k - 1));
    if (first != second) ++singles;
  }
  const int omega = (singles * (singles - 1) / 2) % 4;
  const int pairs = (size() - singles) / 2;
  if ((omega + pairs) % 2 == 1) out = "i";
  for (int a = 1; a <= 2 * modes; ++a) {
    if (mask & (1u << (a - 1))) {
      if (!out.empty()) out += " ";
      out += "g" + std::to_string(a);
    }
  }
  return out;
}

std::vector<MajoranaString> MajoranaString::all(int modes) {
  std::vector<MajoranaString> out;
  for (unsigned m = 0; m < (1u << (2 * modes)); ++m) out.push_back({modes, m});
  return out;
}

MatrixXc majorana_generator(int a, int modes) {
  if (modes < 1 || modes > 2 || a < 1 || a > 2 * modes) throw DomainError("Majorana index out of range");
  const int k = (a + 1) / 2;
  const MatrixXc c = lowering(k, modes);
  if (a % 2 == 1) return c + c.adjoint();
  return Complex(0.0, -1.0) * (c - c.adjoint());
}

MatrixXc string_matrix(const MajoranaString& str) { return build_string(str, 0.0); }

MatrixXc shifted_string_matrix(const MajoranaString& str, double s) { return build_string(str, s); }

FermionState FermionState::pure(const VectorXc& psi) {
  const Eigen::Index dim = psi.size();
  if (dim != 2 && dim != 4) throw StateError("fermion state must have dimension 2 or 4");
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw StateError("fermion state is not normalized");
  return {dim == 2 ? 1 : 2, psi * psi.adjoint()};
}

FermionState FermionState::mixed(const MatrixXc& rho) {
  const Eigen::Index dim = rho.rows();
  if (rho.cols() != dim || (dim != 2 && dim != 4)) throw StateError("fermion density matrix must be 2x2 or 4x4");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) throw StateError("fermion density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-10) throw StateError("fermion density matrix does not have unit trace");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8) throw StateError("fermion density matrix is not positive semidefinite");
  return {dim == 2 ? 1 : 2, rho};
}

namespace {

Vector<double> expectations(const MatrixXc& rho, int modes) {
  const auto strings = MajoranaString::all(modes);
  Vector<double> out(strings.size());
  for (std::size_t i = 0; i < strings.size(); ++i) {
    out(i) = (rho * string_matrix(strings[i])).trace().real();
  }
  return out;
}

double corrected_sre(const MatrixXc& rho, int modes, double p) {
  const double pref = lp_prefactor(p);
  const double purity = (rho * rho).trace().real();
  if (!(purity > 0.0)) throw StateError("state has zero purity");
  const double norm = std::sqrt(std::ldexp(purity, modes));
  double sum = 0.0;
  for (double e : expectations(rho, modes)) sum += std::pow(std::abs(e) / norm, p);
  return pref * std::log(sum) - std::log(purity) - modes * std::log(2.0);
}

}  // namespace

Vector<double> string_spectrum(const FermionState& state) {
  Vector<double> e = expectations(state.rho, state.modes);
  return e.array().square() / static_cast<double>(1 << state.modes);
}

double sre_alpha(const FermionState& state, double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0) throw DomainError("SRE order must be positive and different from 1");
  if (!state.is_pure()) throw StateError("sre_alpha requires a pure state; use modified_sre");
  double sum = 0.0;
  for (double p : string_spectrum(state)) {
    if (p > 0.0) sum += std::pow(p, alpha);
  }
  return std::log(sum) / (1.0 - alpha) - state.modes * std::log(2.0);
}

double fermionic_magic_p(const FermionState& state, double p, double s) {
  const double pref = lp_prefactor(p);
  if (state.modes != 1) throw DomainError("fermionic_magic_p is defined for a single mode");
  const Complex g1 = (state.rho * majorana_generator(1, 1)).trace();
  const Complex g2 = (state.rho * majorana_generator(2, 1)).trace();
  const Complex b = (state.rho * shifted_string_matrix({1, 3u}, s)).trace();
  const double sum = 1.0 + std::pow(std::abs(g1.real()), p) + std::pow(std::abs(g2.real()), p) +
                     std::pow(std::abs(b.real()), p);
  return pref * std::log(sum / 2.0);
}

double modified_sre(const FermionState& state, double p) {
  if (state.modes == 1) return corrected_sre(state.rho, 1, p);
  // Effective qubit on {|10>, |01>} (basis indices 2 and 1).
  const double outside = std::abs(state.rho(0, 0)) + std::abs(state.rho(3, 3));
  if (outside > 1e-10) throw StateError("modified_sre expects a two-mode state in the single-excitation sector");
  MatrixXc q(2, 2);
  q << state.rho(2, 2), state.rho(2, 1), state.rho(1, 2), state.rho(1, 1);
  return corrected_sre(q, 1, p);
}

double modified_sre_all_strings(const FermionState& state, double p) {
  return corrected_sre(state.rho, state.modes, p);
}

}  // namespace hybrid_magic
