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

#include "hybrid_magic/models.hpp"

#include <cmath>

#include "hybrid_magic/fock.hpp"

namespace hybrid_magic {

double vacuum_wigner(Complex alpha, double r) {
  return 2.0 / (1.0 - r) * std::exp(-2.0 * std::norm(alpha) / (1.0 - r));
}

double coherent_overlap(Complex beta, Complex alpha, double r) {
  return vacuum_wigner(alpha - beta, r);
}

Complex cat_cross_overlap(Complex beta, Complex alpha, double r) {
  const double im = (alpha * std::conj(beta)).imag();
  const Complex expo = -2.0 * Complex(std::norm(alpha) - r * std::norm(beta), -2.0 * im) / (1.0 - r);
  return 2.0 / (1.0 - r) * std::exp(expo);
}

MagicResult susy_magic(double p, OrderingParams orderings, QuadratureSpec spec) {
  const double pref = lp_prefactor(p);
  orderings.validate();
  if (spec.half_width <= 0.0) spec.half_width = auto_half_width(0.0, 0, orderings.r);
  const double r = orderings.r;
  const Vector<double> one = Vector<double>::Ones(1);
  MagicResult out;
  out.quadrature = integrate_lp_fields([r](Complex a, double* v) { v[0] = vacuum_wigner(a, r); }, 1, one, p, spec);
  const double fermion = (1.0 + std::pow(std::abs(1.0 - orderings.s), p)) / 2.0;
  out.value = pref * std::log(out.quadrature.value) + pref * std::log(fermion);
  return out;
}

std::array<double, 4> dressed_cat_components(Complex beta, Complex alpha, OrderingParams orderings) {
  orderings.validate();
  const double r = orderings.r;
  const double s = orderings.s;
  const double op = coherent_overlap(beta, alpha, r);
  const double om = coherent_overlap(-beta, alpha, r);
  const Complex ot = cat_cross_overlap(beta, alpha, r);
  return {(op + om) / 2.0, ot.real(), ot.imag(), (-(1.0 - s) * op + (1.0 + s) * om) / 2.0};
}

HybridState dressed_cat_state(Complex beta, int d_max) {
  if (d_max <= 0) d_max = auto_cutoff(StateSpec::coherent(beta));
  const FockVector plus = make_state(StateSpec::coherent(beta), d_max);
  const FockVector minus = make_state(StateSpec::coherent(-beta), d_max);
  MatrixXc amps(d_max, 2);
  amps.col(0) = plus.amplitudes / std::sqrt(2.0);
  amps.col(1) = minus.amplitudes / std::sqrt(2.0);
  amps /= amps.norm();
  return HybridState(amps);
}

double bosonic_cat_wigner(Complex beta, Complex alpha, double r) {
  OrderingParams{r, 0.0}.validate();
  const double norm_sq = 2.0 * (1.0 + std::exp(-2.0 * std::norm(beta)));
  return (coherent_overlap(beta, alpha, r) + coherent_overlap(-beta, alpha, r) +
          2.0 * cat_cross_overlap(beta, alpha, r).real()) /
         norm_sq;
}

void HolsteinParams::validate() const {
  if (!(omega0 > 0.0)) throw DomainError("Holstein phonon frequency must be positive");
}

HolsteinEffective holstein_effective(const HolsteinParams& params) {
  params.validate();
  const double ratio = params.g / params.omega0;
  const double tau_eff = params.tau * std::exp(-2.0 * ratio * ratio);
  return {tau_eff, -params.g * params.g / params.omega0 - tau_eff};
}

HybridState holstein_state(const HolsteinParams& params, int d_max) {
  params.validate();
  const Complex beta(params.beta(), 0.0);
  if (d_max <= 0) d_max = auto_cutoff(StateSpec::coherent(beta));
  const FockVector plus = make_state(StateSpec::coherent(beta), d_max);
  const FockVector minus = make_state(StateSpec::coherent(-beta), d_max);
  MatrixXc amps = MatrixXc::Zero(d_max, 4);
  amps.col(2) = plus.amplitudes;   // |10>
  amps.col(1) = minus.amplitudes;  // |01>
  amps /= amps.norm();
  return HybridState(amps);
}

std::array<double, 16> holstein_components(const HolsteinParams& params, Complex alpha,
                                           OrderingParams orderings) {
  params.validate();
  orderings.validate();
  const double r = orderings.r;
  const double s = orderings.s;
  const Complex beta(params.beta(), 0.0);
  const double op = coherent_overlap(beta, alpha, r);
  const double om = coherent_overlap(-beta, alpha, r);
  const Complex ot = cat_cross_overlap(beta, alpha, r);
  std::array<double, 16> w{};
  w[0] = (op + om) / 2.0;
  w[3] = ((1.0 + s) * op - (1.0 - s) * om) / 2.0;    // i g1 g2 + s
  w[12] = (-(1.0 - s) * op + (1.0 + s) * om) / 2.0;  // i g3 g4 + s
  w[15] = -(1.0 - s * s) * (op + om) / 2.0;
  w[5] = -ot.imag();   // i g1 g3
  w[6] = -ot.real();   // i g2 g3
  w[9] = ot.real();    // i g1 g4
  w[10] = -ot.imag();  // i g2 g4
  return w;
}

CatModel parse_cat_model(const std::string& name) {
  if (name == "dressed_cat" || name == "dressed-cat") return CatModel::dressed_cat;
  if (name == "bosonic_cat" || name == "bosonic-cat") return CatModel::bosonic_cat;
  if (name == "holstein") return CatModel::holstein;
  throw DomainError("unknown model '" + name + "'");
}

std::string to_string(CatModel model) {
  switch (model) {
    case CatModel::dressed_cat:
      return "dressed_cat";
    case CatModel::bosonic_cat:
      return "bosonic_cat";
    case CatModel::holstein:
      return "holstein";
  }
  return "";
}

namespace {

MagicResult closed_form_magic(int fields, int fermion_modes, double p, double beta_abs, double r,
                              QuadratureSpec spec, const std::function<void(Complex, double*)>& eval) {
  const double pref = lp_prefactor(p);
  if (spec.half_width <= 0.0) spec.half_width = auto_half_width(beta_abs, 0, r);
  const Vector<double> mult = Vector<double>::Ones(fields);
  MagicResult out;
  out.quadrature = integrate_lp_fields(eval, fields, mult, p, spec);
  out.value = pref * std::log(std::ldexp(out.quadrature.value, -fermion_modes));
  return out;
}

}  // namespace

MagicResult holstein_magic(const HolsteinParams& params, double p, OrderingParams orderings, QuadratureSpec spec) {
  params.validate();
  orderings.validate();
  return closed_form_magic(16, 2, p, std::abs(params.beta()), orderings.r, spec, [&](Complex a, double* v) {
    const auto w = holstein_components(params, a, orderings);
    std::copy(w.begin(), w.end(), v);
  });
}

MagicResult model_magic(CatModel model, Complex beta, double p, OrderingParams orderings, QuadratureSpec spec) {
  orderings.validate();
  const double r = orderings.r;
  switch (model) {
    case CatModel::dressed_cat:
      return closed_form_magic(4, 1, p, std::abs(beta), r, spec, [&](Complex a, double* v) {
        const auto w = dressed_cat_components(beta, a, orderings);
        std::copy(w.begin(), w.end(), v);
      });
    case CatModel::bosonic_cat:
      return closed_form_magic(1, 0, p, std::abs(beta), r, spec,
                               [&](Complex a, double* v) { v[0] = bosonic_cat_wigner(beta, a, r); });
    case CatModel::holstein: {
      HolsteinParams hp;
      hp.g = -beta.real() / 2.0;
      return holstein_magic(hp, p, orderings, spec);
    }
  }
  throw DomainError("unknown model");
}

std::vector<CurvePoint> magic_vs_beta_curves(CatModel model, const std::vector<double>& grid, double p,
                                             OrderingParams orderings, QuadratureSpec spec,
                                             HolsteinParams holstein) {
  if (grid.empty()) throw DomainError("sweep grid must not be empty");
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (double x : grid) {
    if (model == CatModel::holstein) {
      HolsteinParams hp = holstein;
      hp.g = x;
      const MagicResult m = holstein_magic(hp, p, orderings, spec);
      out.push_back({x, hp.beta(), m.value, m.converged()});
    } else {
      const MagicResult m = model_magic(model, Complex(x, 0.0), p, orderings, spec);
      out.push_back({x, x, m.value, m.converged()});
    }
  }
  return out;
}

}  // namespace hybrid_magic
