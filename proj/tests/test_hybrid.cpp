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
#include <random>

#include "hybrid_magic/hybrid.hpp"

namespace hm = hybrid_magic;
using hm::Complex;

namespace {

hm::VectorXc random_vector(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> n01;
  hm::VectorXc v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(n01(rng), n01(rng));
  return v.normalized();
}

hm::FockVector random_fock(std::mt19937_64& rng, int support, int d_max) {
  hm::FockVector out;
  out.amplitudes = hm::VectorXc::Zero(d_max);
  out.amplitudes.head(support) = random_vector(rng, support);
  return out;
}

}  // namespace

TEST(HybridState, ValidatesShapeAndNorm) {
  EXPECT_THROW(hm::HybridState(hm::MatrixXc::Zero(4, 3)), hm::StateError);
  hm::MatrixXc a = hm::MatrixXc::Zero(4, 2);
  a(0, 0) = 2.0;
  EXPECT_THROW(hm::HybridState{a}, hm::StateError);
}

TEST(HybridState, ParityHomogeneity) {
  hm::MatrixXc a = hm::MatrixXc::Zero(3, 4);
  a(0, 1) = a(1, 2) = std::sqrt(0.5);
  EXPECT_TRUE(hm::HybridState(a).parity_homogeneous());
  a.setZero();
  a(0, 0) = a(1, 1) = std::sqrt(0.5);
  EXPECT_FALSE(hm::HybridState(a).parity_homogeneous());
}

TEST(HybridState, ReducedStatesOfProduct) {
  std::mt19937_64 rng(2);
  const hm::FockVector b = random_fock(rng, 3, 5);
  const hm::VectorXc f = random_vector(rng, 4);
  const auto psi = hm::HybridState::product(b, f);
  EXPECT_LT((hm::reduced_boson(psi) - b.density()).norm(), 1e-13);
  EXPECT_LT((hm::reduced_fermion(psi) - f * f.adjoint()).norm(), 1e-13);
  EXPECT_NEAR(psi.density().trace().real(), 1.0, 1e-13);
}

TEST(Components, ProductFactorizes) {
  std::mt19937_64 rng(4);
  const hm::FockVector b = random_fock(rng, 3, 6);
  const hm::VectorXc f = random_vector(rng, 2);
  const hm::OrderingParams ord{0.3, 0.2};
  const auto field = hm::components_from_state(hm::HybridState::product(b, f), ord);
  ASSERT_EQ(field.count(), 4);
  const hm::MatrixXc rho_f = f * f.adjoint();
  for (Complex alpha : {Complex(0.1, -0.2), Complex(-0.7, 0.4), Complex(1.1, 0.9)}) {
    const double w = hm::bosonic_wigner(b, alpha, ord.r);
    for (int i = 0; i < 4; ++i) {
      const double g = (rho_f * hm::shifted_string_matrix(field.strings()[i], ord.s)).trace().real();
      EXPECT_NEAR(field.component(i, alpha), w * g, 1e-11);
    }
  }
}

TEST(Components, IdentityIntegratesToTrace) {
  std::mt19937_64 rng(8);
  const auto psi = hm::HybridState(random_vector(rng, 8).reshaped(2, 4));
  const auto field = hm::components_from_state(psi);
  const auto r = hm::component_integral(field, 0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
}

TEST(Components, DensityMatchesPureState) {
  std::mt19937_64 rng(9);
  const auto psi = hm::HybridState(random_vector(rng, 12).reshaped(3, 4));
  const hm::HybridDensity rho{psi.density(), 2};
  const hm::OrderingParams ord{-0.2, 0.5};
  const auto a = hm::components_from_state(psi, ord);
  const auto b = hm::components_from_state(rho, ord);
  for (Complex alpha : {Complex(0.2, 0.3), Complex(-1.0, 0.5)}) {
    for (int i = 0; i < 16; ++i) EXPECT_NEAR(a.component(i, alpha), b.component(i, alpha), 1e-12);
  }
}

TEST(Components, ContractionsMatchDensityTrace) {
  std::mt19937_64 rng(10);
  const auto psi = hm::HybridState(random_vector(rng, 6).reshaped(3, 2));
  const auto cs = hm::component_contractions(psi, 0.4);
  const hm::MatrixXc rho = psi.density();
  const auto strings = hm::MajoranaString::all(1);
  for (int i = 0; i < 4; ++i) {
    const hm::MatrixXc g = hm::shifted_string_matrix(strings[i], 0.4);
    for (int n = 0; n < 3; ++n) {
      for (int m = 0; m < 3; ++m) {
        // Tr[rho (|m><n| (x) G)] = sum_{f,g} rho(n f, m g) G(g, f)
        Complex t = 0;
        for (int f = 0; f < 2; ++f)
          for (int gg = 0; gg < 2; ++gg) t += rho(n * 2 + f, m * 2 + gg) * g(gg, f);
        EXPECT_NEAR(std::abs(cs[i](n, m) - t), 0.0, 1e-13);
      }
    }
  }
}

TEST(HybridMagic, AdditiveOnProducts) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 3; ++trial) {
    const hm::FockVector b = random_fock(rng, 2, 3);
    const hm::VectorXc f = random_vector(rng, 2);
    const auto fs = hm::FermionState::pure(f);
    for (double p : {1.0, 4.0}) {
      const auto h = hm::hybrid_magic_p(hm::HybridState::product(b, f), p);
      const auto m = hm::mana_p(b, p, 0.0);
      ASSERT_TRUE(h.converged());
      EXPECT_NEAR(h.value, m.value + hm::fermionic_magic_p(fs, p, 0.0), 2e-4) << p;
    }
  }
}

TEST(HybridMagic, GaussianTimesVacuumIsFree) {
  hm::FockVector vac;
  vac.amplitudes = hm::VectorXc::Zero(1);
  vac.amplitudes(0) = 1.0;
  hm::VectorXc f(2);
  f << 1.0, 0.0;
  EXPECT_NEAR(hm::hybrid_magic_p(hm::HybridState::product(vac, f), 1.0).value, 0.0, 1e-6);
}

TEST(HybridMagic, SuperspaceNormOfProduct) {
  hm::FockVector vac;
  vac.amplitudes = hm::VectorXc::Ones(1);
  hm::VectorXc f(2);
  f << 0.0, 1.0;
  const auto field = hm::components_from_state(hm::HybridState::product(vac, f));
  // vacuum: int W = 1; strings 1 and i g1 g2 contribute, g1, g2 vanish
  EXPECT_NEAR(hm::superspace_lp_norm(field, 1.0).value, 2.0, 1e-6);
}

TEST(MutualMagic, ZeroOnProducts) {
  std::mt19937_64 rng(14);
  const hm::FockVector b = random_fock(rng, 2, 3);
  hm::VectorXc f = hm::VectorXc::Zero(4);
  f.segment(1, 2) = random_vector(rng, 2);
  const auto mm = hm::mutual_magic(hm::HybridState::product(b, f));
  EXPECT_TRUE(mm.converged);
  EXPECT_NEAR(mm.value, 0.0, 2e-4);
}

TEST(MutualMagic, OutsideSectorUsesAllStrings) {
  hm::FockVector vac;
  vac.amplitudes = hm::VectorXc::Ones(1);
  hm::VectorXc f = hm::VectorXc::Zero(4);
  f(0) = f(3) = std::sqrt(0.5);
  const auto mm = hm::mutual_magic(hm::HybridState::product(vac, f));
  EXPECT_NEAR(mm.fermion, hm::modified_sre_all_strings(hm::FermionState::pure(f), 1.0), 1e-12);
  EXPECT_NEAR(mm.value, 0.0, 1e-6);
}
