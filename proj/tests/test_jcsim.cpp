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
#include <numbers>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "hybrid_magic/jcsim.hpp"

namespace hm = hybrid_magic;
using hm::Complex;

namespace {

constexpr double kPi = std::numbers::pi;

// Dense H on the single-excitation sector, index n * 2 + (0: g, 1: e),
// n = 0..levels-1.
hm::MatrixXc dense_hamiltonian(int levels, const hm::JCParams& p) {
  hm::MatrixXc h = hm::MatrixXc::Zero(2 * levels, 2 * levels);
  for (int n = 0; n < levels; ++n) {
    h(2 * n, 2 * n) = n * p.omega_c;
    h(2 * n + 1, 2 * n + 1) = n * p.omega_c + p.omega_a;
    if (n > 0) h(2 * n, 2 * (n - 1) + 1) = h(2 * (n - 1) + 1, 2 * n) = p.g * std::sqrt(double(n));
  }
  return h;
}

hm::FockVector random_cavity(std::mt19937_64& rng, int support, int d) {
  std::normal_distribution<double> n01;
  hm::FockVector c;
  c.amplitudes = hm::VectorXc::Zero(d);
  for (int i = 0; i < support; ++i) c.amplitudes(i) = Complex(n01(rng), n01(rng));
  c.amplitudes.normalize();
  return c;
}

hm::FockVector fock(int n, int d) {
  hm::FockVector c;
  c.amplitudes = hm::VectorXc::Zero(d);
  c.amplitudes(n) = 1.0;
  return c;
}

}  // namespace

TEST(JC, RabiFrequency) {
  const hm::JCParams p{1.3, 1.0, 0.4};
  EXPECT_NEAR(p.rabi(3), std::sqrt(0.09 + 4 * 0.16 * 3), 1e-14);
  EXPECT_THROW((hm::JCParams{1.0, 1.0, -1.0}.validate()), hm::DomainError);
}

TEST(JC, BlockUnitaryMatchesExponential) {
  for (const hm::JCParams p : {hm::JCParams{1.0, 1.0, 0.7}, hm::JCParams{1.4, 0.9, 0.3}}) {
    for (int n : {1, 2, 7}) {
      for (double t : {0.0, 0.37, 5.2}) {
        hm::Matrix2c h;
        h << n * p.omega_c, p.g * std::sqrt(double(n)), p.g * std::sqrt(double(n)), (n - 1) * p.omega_c + p.omega_a;
        const hm::Matrix2c u = (Complex(0.0, -t) * h).exp();
        EXPECT_LT((hm::block_unitary(n, t, p) - u).norm(), 1e-12) << n << ' ' << t;
      }
    }
  }
}

TEST(JC, EvolutionMatchesDenseExponential) {
  std::mt19937_64 rng(21);
  const int d = 6;
  const auto init = hm::JCInitial::bloch(random_cavity(rng, 4, d), 1.1, 0.4);
  for (const hm::JCParams p : {hm::JCParams{1.0, 1.0, 0.5}, hm::JCParams{1.2, 0.8, 0.5}}) {
    const double t = 2.3;
    const auto c0 = hm::initial_coefficients(init);
    const int levels = c0.d_max();
    hm::VectorXc v(2 * levels);
    for (int n = 0; n < levels; ++n) {
      v(2 * n) = c0.alpha(n);
      v(2 * n + 1) = c0.beta(n);
    }
    const hm::VectorXc w = (Complex(0.0, -t) * dense_hamiltonian(levels, p)).exp() * v;
    const auto blocks = hm::evolve_blocks(init, t, p);
    for (int n = 0; n < levels; ++n) {
      EXPECT_NEAR(std::abs(blocks.alpha(n) - w(2 * n)), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(blocks.beta(n) - w(2 * n + 1)), 0.0, 1e-12);
    }
    EXPECT_NEAR(blocks.norm(), 1.0, 1e-12);
  }
}

TEST(JC, ResonantClosedFormMatchesBlocks) {
  std::mt19937_64 rng(22);
  const auto init = hm::JCInitial::bloch(random_cavity(rng, 5, 8), 0.7, 2.0);
  const hm::JCParams p{1.0, 1.0, 0.8};
  for (double t : {0.0, 0.9, 11.0}) {
    const auto a = hm::evolve_resonant(init, t, p);
    const auto b = hm::evolve_blocks(init, t, p);
    EXPECT_LT((a.alpha - b.alpha).norm() + (a.beta - b.beta).norm(), 1e-12);
  }
  EXPECT_THROW(hm::evolve_resonant(init, 1.0, {1.0, 0.5, 0.8}), hm::DomainError);
}

TEST(JC, SeriesMatchGenericComponents) {
  std::mt19937_64 rng(23);
  const auto init = hm::JCInitial::bloch(random_cavity(rng, 3, 5), 1.9, -0.6);
  const auto c = hm::evolve_blocks(init, 1.7, {1.1, 0.9, 0.6});
  for (double r : {-0.3, 0.0, 0.3}) {
    for (double s : {0.0, 0.5}) {
      const auto field = hm::components_from_state(c.state(), {r, s});
      for (Complex a : {Complex(0.2, 0.1), Complex(-0.9, 1.3)}) {
        const auto w = hm::jc_components(hm::st_series(c, a, r), s);
        for (int i = 0; i < 16; ++i) EXPECT_NEAR(w[i], field.component(i, a), 1e-10) << i;
      }
    }
  }
}

TEST(JC, OnlySectorMasksAreNonzero) {
  std::mt19937_64 rng(24);
  const auto c = hm::evolve_blocks(hm::JCInitial::bloch(random_cavity(rng, 3, 4), 1.0, 1.0), 0.5, {});
  const auto w = hm::jc_components(hm::st_series(c, Complex(0.3, -0.2), 0.0), 0.2);
  for (int i = 0; i < 16; ++i) {
    const bool allowed = std::find(hm::kJCMasks.begin(), hm::kJCMasks.end(), i) != hm::kJCMasks.end();
    if (!allowed) EXPECT_EQ(w[i], 0.0) << i;
  }
}

TEST(JC, ReducedStates) {
  std::mt19937_64 rng(25);
  const auto c = hm::evolve_blocks(hm::JCInitial::bloch(random_cavity(rng, 3, 4), 1.0, 1.0), 0.8, {});
  const auto red = hm::reduced_states(c);
  const auto psi = c.state();
  EXPECT_LT((red.cavity - hm::reduced_boson(psi)).norm(), 1e-13);
  EXPECT_LT((hm::atom_fermion_density(red.atom) - hm::reduced_fermion(psi)).norm(), 1e-13);
  EXPECT_NEAR(red.atom.trace().real(), 1.0, 1e-13);
}

TEST(JC, FockAnchorsForOneExcitation) {
  const hm::JCParams p;
  const hm::JCInitial init{fock(1, 2), 1.0, 0.0};
  const double swap = kPi / 2.0;
  const auto ts = hm::magic_timeseries(init, {0.0, swap}, p);
  const double mana1 = hm::mana_p(fock(1, 2), 1.0, 0.0).value;
  EXPECT_NEAR(ts.points[0].magic, mana1, 1e-3);
  EXPECT_NEAR(ts.points[1].magic, 0.0, 1e-3);
}

TEST(JC, FirstMaximumInsideWindow) {
  const hm::JCParams p;
  const hm::JCInitial init{fock(1, 2), 1.0, 0.0};
  const auto m = hm::max_magic(init, p, 0.0, hm::rabi_period(init, p));
  EXPECT_GE(m.t, kPi / 7.0);
  EXPECT_LE(m.t, kPi / 6.0);
}

TEST(JC, MutualMagicOfProductStartIsZero) {
  const hm::JCInitial init{fock(1, 2), 1.0, 0.0};
  const auto ts = hm::mutual_magic_timeseries(init, {0.0}, {});
  EXPECT_NEAR(ts.points[0].value.value, 0.0, 1e-5);
}

TEST(JC, GroundStateIsStationaryAndFree) {
  const hm::JCInitial init{fock(0, 1), 1.0, 0.0};
  const auto m = hm::max_magic(init, {}, 0.0, 2.0);
  EXPECT_NEAR(m.value, 0.0, 1e-6);
  EXPECT_TRUE(m.flat);
}

TEST(LogFit, RecoversExactLine) {
  const std::vector<int> ns{1, 2, 3, 5, 8};
  std::vector<double> v;
  for (int n : ns) v.push_back(0.7 * std::log(n) + 1.3);
  const auto f = hm::log_fit(ns, v);
  EXPECT_NEAR(f.a, 0.7, 1e-12);
  EXPECT_NEAR(f.b, 1.3, 1e-12);
  EXPECT_NEAR(f.residual, 0.0, 1e-12);
}

TEST(LogFit, RejectsDegenerateDesign) {
  EXPECT_THROW(hm::log_fit({2, 2, 2}, {1.0, 1.0, 1.0}), hm::DegenerateDesignError);
  EXPECT_THROW(hm::log_fit({1, 2}, {1.0}), hm::DomainError);
}

TEST(LocalMaxima, StrictInterior) {
  EXPECT_EQ(hm::local_maxima({0, 1, 0, 2, 2, 0, 3}), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(hm::local_maxima({1, 2}).empty());
}
