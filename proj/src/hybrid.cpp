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

#include "hybrid_magic/hybrid.hpp"

#include <bit>
#include <cmath>

namespace hybrid_magic {

HybridState::HybridState(MatrixXc amps) : amplitudes(std::move(amps)) {
  if (amplitudes.cols() != 2 && amplitudes.cols() != 4) {
    throw StateError("hybrid state needs 2 or 4 fermionic basis columns");
  }
  if (amplitudes.rows() < 1) throw StateError("hybrid state needs at least one Fock level");
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10) throw StateError("hybrid state is not normalized");
}

HybridState HybridState::product(const FockVector& boson, const VectorXc& fermion) {
  return HybridState(boson.amplitudes * fermion.transpose());
}

bool HybridState::parity_homogeneous() const {
  double even = 0.0;
  double odd = 0.0;
  for (int f = 0; f < amplitudes.cols(); ++f) {
    const double w = amplitudes.col(f).squaredNorm();
    if (std::popcount(static_cast<unsigned>(f)) % 2 == 0) even += w;
    else odd += w;
  }
  return even < 1e-12 || odd < 1e-12;
}

MatrixXc HybridState::density() const {
  const Eigen::Index f = amplitudes.cols();
  VectorXc flat(amplitudes.size());
  for (Eigen::Index n = 0; n < amplitudes.rows(); ++n) {
    for (Eigen::Index j = 0; j < f; ++j) flat(n * f + j) = amplitudes(n, j);
  }
  return flat * flat.adjoint();
}

MatrixXc reduced_boson(const HybridState& psi) { return psi.amplitudes * psi.amplitudes.adjoint(); }

MatrixXc reduced_fermion(const HybridState& psi) {
  return psi.amplitudes.transpose() * psi.amplitudes.conjugate();
}

std::vector<MatrixXc> component_contractions(const HybridState& psi, double s) {
  std::vector<MatrixXc> out;
  for (const auto& str : MajoranaString::all(psi.modes())) {
    const MatrixXc g = shifted_string_matrix(str, s);
    out.push_back(psi.amplitudes * g.transpose() * psi.amplitudes.adjoint());
  }
  return out;
}

std::vector<MatrixXc> component_contractions(const HybridDensity& rho, double s) {
  const int nf = 1 << rho.modes;
  const int d = rho.d_max();
  if (rho.rho.rows() != d * nf || rho.rho.cols() != d * nf) throw StateError("hybrid density has the wrong shape");
  std::vector<MatrixXc> out;
  for (const auto& str : MajoranaString::all(rho.modes)) {
    const MatrixXc g = shifted_string_matrix(str, s);
    MatrixXc c = MatrixXc::Zero(d, d);
    for (int n = 0; n < d; ++n) {
      for (int m = 0; m < d; ++m) {
        // Tr over the fermion block (n, m) against G.
        c(n, m) = (rho.rho.block(n * nf, m * nf, nf, nf) * g).trace();
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

WignerComponentField::WignerComponentField(int modes, OrderingParams orderings,
                                           std::vector<MatrixXc> contractions)
    : modes_(modes),
      orderings_(orderings),
      strings_(MajoranaString::all(modes)),
      contractions_(std::move(contractions)) {
  orderings_.validate();
  if (contractions_.size() != strings_.size()) throw DomainError("need one contraction per Majorana string");
  basis_ = std::make_shared<PhasePointBasis>(orderings_.r, PhasePointBasis::support_of(contractions_));
  coefficients_ = basis_->coefficients(contractions_);
}

void WignerComponentField::evaluate(Complex alpha, double* out) const {
  Vector<double> row(basis_->columns());
  basis_->evaluate(alpha, row.data());
  Eigen::Map<Vector<double>>(out, count()) = coefficients_.transpose() * row;
}

Vector<double> WignerComponentField::values(Complex alpha) const {
  Vector<double> out(count());
  evaluate(alpha, out.data());
  return out;
}

Complex WignerComponentField::raw_component(int index, Complex alpha) const {
  const MatrixXc o = phase_point_matrix(alpha, orderings_.r, d_max());
  return o.cwiseProduct(contractions_.at(index).transpose()).sum();
}

double WignerComponentField::component(int index, Complex alpha) const {
  const Complex v = raw_component(index, alpha);
  if (std::abs(v.imag()) > 1e-6) throw RealityError("hybrid Wigner component has an imaginary part");
  return v.real();
}

double WignerComponentField::auto_half_width() const {
  return hybrid_magic::auto_half_width(0.0, occupied_extent(contractions_.front()), orderings_.r);
}

WignerComponentField components_from_state(const HybridState& psi, OrderingParams orderings) {
  return {psi.modes(), orderings, component_contractions(psi, orderings.s)};
}

WignerComponentField components_from_state(const HybridDensity& rho, OrderingParams orderings) {
  return {rho.modes, orderings, component_contractions(rho, orderings.s)};
}

namespace {

QuadratureSpec with_width(QuadratureSpec spec, const WignerComponentField& field) {
  if (spec.half_width <= 0.0) spec.half_width = field.auto_half_width();
  return spec;
}

}  // namespace

MagicResult superspace_lp_norm(const WignerComponentField& field, double p, QuadratureSpec spec) {
  if (!(p >= 1.0)) throw DomainError("superspace L_p norm needs p >= 1");
  spec = with_width(spec, field);
  const Vector<double> mult = Vector<double>::Ones(field.count());
  MagicResult out;
  out.quadrature = lp_sum_refined(field.basis(), field.coefficients(), mult, p, spec);
  out.value = std::pow(out.quadrature.value, 1.0 / p);
  return out;
}

QuadratureResult component_integral(const WignerComponentField& field, int index, QuadratureSpec spec) {
  spec = with_width(spec, field);
  const Matrix<double> coef = field.coefficients().col(index);
  return integrate_refined(spec, [&](const PhaseGrid& g) {
    return GridLpIntegrator(field.basis(), g, 0).integrals(coef)(0);
  });
}

MagicResult hybrid_magic_p(const WignerComponentField& field, double p, QuadratureSpec spec) {
  const double pref = lp_prefactor(p);
  spec = with_width(spec, field);
  const Vector<double> mult = Vector<double>::Ones(field.count());
  MagicResult out;
  out.quadrature = lp_sum_refined(field.basis(), field.coefficients(), mult, p, spec);
  out.value = pref * std::log(std::ldexp(out.quadrature.value, -field.modes()));
  return out;
}

MagicResult hybrid_magic_p(const HybridState& psi, double p, OrderingParams orderings, QuadratureSpec spec) {
  return hybrid_magic_p(components_from_state(psi, orderings), p, spec);
}

MutualMagic mutual_magic(const HybridState& psi, double p, QuadratureSpec spec) {
  const double pref = lp_prefactor(p);
  const WignerComponentField field = components_from_state(psi);
  spec = with_width(spec, field);
  const std::vector<MatrixXc> boson{reduced_boson(psi)};
  const PhasePointBasis boson_basis(0.0, PhasePointBasis::support_of(boson));
  const Matrix<double> boson_coef = boson_basis.coefficients(boson);
  const Vector<double> one = Vector<double>::Ones(1);
  const Vector<double> mult = Vector<double>::Ones(field.count());
  double boson_sum = 0.0;
  // Mana and hybrid magic share every grid so their discretization errors
  // cancel for product states.
  const QuadratureResult q = integrate_refined(spec, [&](const PhaseGrid& g) {
    boson_sum = GridLpIntegrator(boson_basis, g, 0).lp_sum(boson_coef, one, p);
    return GridLpIntegrator(field.basis(), g, 0).lp_sum(field.coefficients(), mult, p);
  });
  const FermionState atom = FermionState::mixed(reduced_fermion(psi));
  MutualMagic out;
  out.hybrid = pref * std::log(std::ldexp(q.value, -field.modes()));
  out.mana = pref * std::log(boson_sum);
  try {
    out.fermion = modified_sre(atom, p);
  } catch (const StateError&) {
    out.fermion = modified_sre_all_strings(atom, p);
  }
  out.value = out.hybrid - out.mana - out.fermion;
  out.converged = q.converged;
  return out;
}

}  // namespace hybrid_magic
