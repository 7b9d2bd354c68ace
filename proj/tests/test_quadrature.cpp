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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "hybrid_magic/fock.hpp"
#include "hybrid_magic/overlap_basis.hpp"
#include "hybrid_magic/quadrature.hpp"

namespace hm = hybrid_magic;

namespace {

hm::QuadratureSpec square(double L) {
  hm::QuadratureSpec s;
  s.half_width = L;
  return s;
}

}  // namespace

TEST(Quadrature, GaussianNormalization) {
  const auto r = hm::integrate_phase_space([](hm::Complex a) { return 2.0 * std::exp(-2.0 * std::norm(a)); }, square(5));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0, 1e-10);
}

TEST(Quadrature, ShiftedAnisotropicGaussian) {
  // int exp(-x^2/s1 - y^2/s2) dx dy / pi = sqrt(s1 s2)
  const auto r = hm::integrate_phase_space(
      [](hm::Complex a) {
        const double x = a.real() - 0.4, y = a.imag() + 0.3;
        return std::exp(-x * x / 0.5 - y * y / 2.0);
      },
      square(8));
  EXPECT_NEAR(r.value, 1.0, 1e-9);
}

TEST(Quadrature, AutoHalfWidth) {
  EXPECT_DOUBLE_EQ(hm::auto_half_width(0.0, 0, 0.0), 1.0 + 4.0 * std::sqrt(0.5));
  EXPECT_DOUBLE_EQ(hm::auto_half_width(2.0, 3, -0.5), 2.0 + 2.0 + 4.0 * std::sqrt(0.75));
}

TEST(Quadrature, FlagsNonConvergence) {
  hm::QuadratureSpec s = square(6);
  s.max_refinements = 1;
  s.refine_tolerance = 1e-14;
  const auto r = hm::integrate_phase_space([](hm::Complex a) { return std::abs(std::cos(7.0 * a.real())); }, s);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.refinements, 1);
}

TEST(Quadrature, SpecValidation) {
  hm::QuadratureSpec s;
  EXPECT_THROW(s.validate(), hm::DomainError);  // half_width unset
  s.half_width = 3.0;
  s.points_per_axis = 8;
  EXPECT_THROW(s.validate(), hm::DomainError);
  s.points_per_axis = 64;
  s.refine_tolerance = 0.0;
  EXPECT_THROW(s.validate(), hm::DomainError);
}

TEST(Quadrature, LpFieldsWeighted) {
  const hm::Vector<double> mult = (hm::Vector<double>(2) << 1.0, 3.0).finished();
  const auto r = hm::integrate_lp_fields(
      [](hm::Complex a, double* v) {
        const double g = 2.0 * std::exp(-2.0 * std::norm(a));
        v[0] = g;
        v[1] = -0.5 * g;
      },
      2, mult, 1.0, square(5));
  EXPECT_NEAR(r.value, 2.5, 1e-10);
}

TEST(Quadrature, WeightedAbsPowFastPaths) {
  const double x[3] = {-1.5, 0.5, 2.0};
  const double m[3] = {1.0, 2.0, 0.5};
  for (double p : {1.0, 2.0, 4.0, 3.0, 0.7}) {
    double ref = 0.0;
    for (int i = 0; i < 3; ++i) ref += m[i] * std::pow(std::abs(x[i]), p);
    EXPECT_NEAR(hm::weighted_abs_pow(x, m, 3, p), ref, 1e-12) << p;
  }
}

TEST(Quadrature, ThreadCountDoesNotChangeResults) {
  const auto f = [](hm::Complex a) { return std::abs(std::cos(3.0 * a.real()) * std::exp(-std::norm(a))); };
  setenv("HYBRID_MAGIC_THREADS", "1", 1);
  const double one = hm::integrate_phase_space(f, square(4)).value;
  setenv("HYBRID_MAGIC_THREADS", "3", 1);
  const double three = hm::integrate_phase_space(f, square(4)).value;
  unsetenv("HYBRID_MAGIC_THREADS");
  EXPECT_EQ(one, three);
}

TEST(OverlapBasis, CoefficientsReproduceContraction) {
  hm::MatrixXc c = hm::MatrixXc::Zero(4, 4);
  c(0, 0) = 0.5;
  c(2, 2) = 0.3;
  c(1, 3) = hm::Complex(0.1, -0.2);
  c(3, 1) = std::conj(c(1, 3));
  c(0, 2) = hm::Complex(-0.05, 0.07);
  c(2, 0) = std::conj(c(0, 2));
  const std::vector<hm::MatrixXc> cs{c};
  const double r = 0.2;
  const hm::PhasePointBasis basis(r, hm::PhasePointBasis::support_of(cs));
  EXPECT_EQ(basis.support().size(), 4u);
  EXPECT_EQ(basis.columns(), 6);
  const hm::Matrix<double> coef = basis.coefficients(cs);
  for (hm::Complex a : {hm::Complex(0.3, -0.1), hm::Complex(-1.2, 0.8)}) {
    hm::Vector<double> row(basis.columns());
    basis.evaluate(a, row.data());
    const double w = (coef.transpose() * row)(0);
    hm::Complex direct = 0.0;
    for (int m = 0; m < 4; ++m) {
      for (int n = 0; n < 4; ++n) direct += hm::phase_point_element(m, n, a, r) * c(n, m);
    }
    EXPECT_NEAR(direct.imag(), 0.0, 1e-12);
    EXPECT_NEAR(w, direct.real(), 1e-12);
  }
}
