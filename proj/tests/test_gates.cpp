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
#include <set>
#include <unsupported/Eigen/MatrixFunctions>

#include "hybrid_magic/gates.hpp"
#include "hybrid_magic/jcsim.hpp"

namespace hm = hybrid_magic;
using hm::Complex;

namespace {

constexpr double kPi = std::numbers::pi;

hm::GateSpec spec(hm::GateKind kind, Complex alpha = {}, double theta = 0.0, double phi = 0.0, int d = 12) {
  hm::GateSpec s;
  s.kind = kind;
  s.alpha = alpha;
  s.theta = theta;
  s.phi = phi;
  s.d_max = d;
  return s;
}

hm::HybridState basis_state(int n, int f, int d) {
  hm::MatrixXc a = hm::MatrixXc::Zero(d, 4);
  a(n, f) = 1.0;
  return hm::HybridState(a);
}

double fidelity(const hm::HybridState& a, const hm::HybridState& b) {
  return std::norm((a.amplitudes.conjugate().cwiseProduct(b.amplitudes)).sum());
}

}  // namespace

TEST(Gates, ParseKinds) {
  EXPECT_EQ(hm::parse_gate_kind("cd"), hm::GateKind::conditional_displacement);
  EXPECT_EQ(hm::parse_gate_kind("SQR"), hm::GateKind::sqr);
  EXPECT_EQ(hm::to_string(hm::GateKind::ajc), "AJC");
  EXPECT_THROW(hm::parse_gate_kind("XX"), hm::DomainError);
}

TEST(Gates, BeamSplitterUnsupported) {
  EXPECT_THROW(hm::make_gate(spec(hm::GateKind::beam_splitter)), hm::UnsupportedGateError);
}

TEST(Gates, AllKindsUnitary) {
  hm::GateSpec sqr = spec(hm::GateKind::sqr);
  sqr.thetas = {0.3, 1.1, 2.0};
  sqr.phis = {0.0, 0.5, -1.0};
  for (const auto& s : {spec(hm::GateKind::displacement, {0.4, 0.2}), spec(hm::GateKind::rotation, {}, 0.8, 0.3),
                        spec(hm::GateKind::jc, {}, 0.7, 0.2), spec(hm::GateKind::ajc, {}, 0.7, -0.4),
                        spec(hm::GateKind::conditional_displacement, {0.5, -0.3}), sqr}) {
    const auto g = hm::make_gate(s);
    const int dim = 4 * g.d_max;
    EXPECT_LT((g.matrix.adjoint() * g.matrix - hm::MatrixXc::Identity(dim, dim)).norm(), 1e-10) << g.name();
  }
}

TEST(Gates, FermionOperatorsAnticommute) {
  const hm::MatrixXc cg = hm::fermion_lowering_g();
  const hm::MatrixXc ce = hm::fermion_lowering_e();
  const hm::MatrixXc id = hm::MatrixXc::Identity(4, 4);
  EXPECT_LT((cg * cg.adjoint() + cg.adjoint() * cg - id).norm(), 1e-15);
  EXPECT_LT((ce * ce.adjoint() + ce.adjoint() * ce - id).norm(), 1e-15);
  EXPECT_LT((cg * ce + ce * cg).norm(), 1e-15);
  EXPECT_LT((cg * ce.adjoint() + ce.adjoint() * cg).norm(), 1e-15);
  // |g> = |10> (index 2) and |e> = |01> (index 1).
  EXPECT_NEAR((cg.adjoint() * cg)(2, 2).real(), 1.0, 1e-15);
  EXPECT_NEAR((ce.adjoint() * ce)(1, 1).real(), 1.0, 1e-15);
}

TEST(Gates, ZeroDisplacementIsIdentity) {
  const auto g = hm::make_gate(spec(hm::GateKind::conditional_displacement, {0.0, 0.0}));
  EXPECT_LT((g.matrix - hm::MatrixXc::Identity(g.matrix.rows(), g.matrix.cols())).norm(), 1e-14);
}

TEST(Gates, DisplacementMatchesFockDisplacement) {
  const Complex a(0.3, -0.5);
  const auto g = hm::make_gate(spec(hm::GateKind::displacement, a, 0, 0, 30));
  const auto out = g.apply(basis_state(0, 2, 30));
  const auto coh = hm::make_state(hm::StateSpec::coherent(a), 30);
  EXPECT_GT(std::norm(coh.amplitudes.dot(out.amplitudes.col(2))), 1.0 - 1e-10);
}

TEST(Gates, ConditionalDisplacementOnGround) {
  const Complex a(0.8, 0.3);
  const auto g = hm::make_gate(spec(hm::GateKind::conditional_displacement, a, 0, 0, 0));
  const auto out = g.apply(basis_state(0, 2, 4));
  const auto minus = hm::make_state(hm::StateSpec::coherent(-a), g.d_max);
  hm::MatrixXc expect = hm::MatrixXc::Zero(g.d_max, 4);
  expect.col(2) = minus.amplitudes;
  EXPECT_GT(fidelity(out, hm::HybridState(expect / expect.norm())), 1.0 - 1e-8);
  const auto out_e = g.apply(basis_state(0, 1, 4));
  EXPECT_GT(std::norm(hm::make_state(hm::StateSpec::coherent(a), g.d_max).amplitudes.dot(out_e.amplitudes.col(1))),
            1.0 - 1e-8);
}

TEST(Gates, RotationPeriods) {
  const int d = 2;
  const hm::MatrixXc id = hm::MatrixXc::Identity(4 * d, 4 * d);
  const auto full = hm::make_gate(spec(hm::GateKind::rotation, {}, 4 * kPi, 0.7, d));
  EXPECT_LT((full.matrix - id).norm(), 1e-12);
  const auto half = hm::make_gate(spec(hm::GateKind::rotation, {}, 2 * kPi, 0.7, d));
  for (int n = 0; n < d; ++n) {
    EXPECT_NEAR(half.matrix(4 * n + 1, 4 * n + 1).real(), -1.0, 1e-12);
    EXPECT_NEAR(half.matrix(4 * n + 2, 4 * n + 2).real(), -1.0, 1e-12);
    EXPECT_NEAR(half.matrix(4 * n + 0, 4 * n + 0).real(), 1.0, 1e-12);
    EXPECT_NEAR(half.matrix(4 * n + 3, 4 * n + 3).real(), 1.0, 1e-12);
  }
  const auto flip = hm::make_gate(spec(hm::GateKind::rotation, {}, kPi, 0.0, d));
  EXPECT_NEAR(std::abs(flip.matrix(1, 2)), 1.0, 1e-12);
  EXPECT_EQ(flip.leakage, 0.0);
}

TEST(Gates, RotationMatchesSpinRotation) {
  // exp(-i theta/2 (cos phi X + sin phi Y)) on (|g>, |e>) up to the basis sign.
  const double theta = 1.3, phi = 0.4;
  const auto g = hm::make_gate(spec(hm::GateKind::rotation, {}, theta, phi, 1));
  EXPECT_NEAR(g.matrix(2, 2).real(), std::cos(theta / 2), 1e-13);
  EXPECT_NEAR(g.matrix(1, 1).real(), std::cos(theta / 2), 1e-13);
  EXPECT_NEAR(std::abs(g.matrix(1, 2)), std::sin(theta / 2), 1e-13);
  EXPECT_NEAR(std::abs(g.matrix(1, 2) + std::conj(g.matrix(2, 1))), 0.0, 1e-13);
}

TEST(Gates, SqrActsLevelByLevel) {
  hm::GateSpec s = spec(hm::GateKind::sqr, {}, 0, 0, 4);
  s.thetas = {0.3, 1.1, 2.0};
  s.phis = {0.0, 0.5, -1.0};
  const auto g = hm::make_gate(s);
  for (int n = 0; n < 4; ++n) {
    const double theta = n < 3 ? s.thetas[n] : 0.0;
    const double phi = n < 3 ? s.phis[n] : 0.0;
    const auto r = hm::make_gate(spec(hm::GateKind::rotation, {}, theta, phi, 1));
    EXPECT_LT((g.matrix.block(4 * n, 4 * n, 4, 4) - r.matrix).norm(), 1e-12) << n;
  }
}

TEST(Gates, JcMatchesResonantCoupling) {
  const double theta = 0.9;
  const int d = 6;
  const auto g = hm::make_gate(spec(hm::GateKind::jc, {}, theta, 0.0, d));
  const hm::JCParams free{0.0, 0.0, 1.0};
  for (int n = 1; n < d; ++n) {
    const hm::Matrix2c u = hm::block_unitary(n, theta, free);
    // (|n, g>, |n-1, e>)
    const int ig = 4 * n + 2, ie = 4 * (n - 1) + 1;
    EXPECT_NEAR(std::abs(g.matrix(ig, ig) - u(0, 0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g.matrix(ie, ie) - u(1, 1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(g.matrix(ig, ie) - u(0, 1)), 0.0, 1e-12);
  }
}

TEST(Gates, AjcFlipsUpward) {
  const auto g = hm::make_gate(spec(hm::GateKind::ajc, {}, kPi / 2, 0.0, 3));
  // |0, g> -> |1, e>
  EXPECT_NEAR(std::abs(g.matrix(4 * 1 + 1, 2)), 1.0, 1e-12);
}

TEST(Gates, ApplyRejectsLargerInput) {
  const auto g = hm::make_gate(spec(hm::GateKind::rotation, {}, 0.5, 0.0, 3));
  EXPECT_THROW(g.apply(basis_state(0, 0, 5)), hm::CutoffError);
}

TEST(GaussianState, VacuumCoherentAndSqueezed) {
  EXPECT_NEAR(std::abs(hm::gaussian_state({}).amplitudes(0)), 1.0, 1e-14);
  const Complex delta(0.6, -0.2);
  const auto coh = hm::gaussian_state({delta, 0.0, 0.0}, 25);
  EXPECT_GT(std::norm(coh.amplitudes.dot(hm::make_state(hm::StateSpec::coherent(delta), 25).amplitudes)),
            1.0 - 1e-12);
  const double r = 0.5, phi = 0.8;
  const auto sq = hm::gaussian_state({{}, r, phi}, 30);
  const Complex ratio = -std::polar(std::tanh(r), phi);
  for (int k = 0; k < 10; ++k) {
    const double lf = std::lgamma(2.0 * k + 1) / 2 - k * std::log(2.0) - std::lgamma(k + 1.0);
    const Complex expect = std::pow(ratio, k) * std::exp(lf) / std::sqrt(std::cosh(r));
    EXPECT_NEAR(std::abs(sq.amplitudes(2 * k) - expect), 0.0, 1e-10) << k;
    EXPECT_NEAR(std::abs(sq.amplitudes(2 * k + 1)), 0.0, 1e-12);
  }
  EXPECT_GE(hm::gaussian_cutoff({}), 15);
}

TEST(Stabilizers, DistinctAndStabilized) {
  const auto& all = hm::majorana_stabilizer_states();
  ASSERT_EQ(all.size(), 12u);
  std::set<std::string> labels;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& st = all[i];
    labels.insert(st.label);
    EXPECT_NEAR(st.state.norm(), 1.0, 1e-14);
    for (int k = 0; k < 2; ++k) {
      const hm::MatrixXc g = hm::string_matrix({2, st.pair_masks[k]});
      EXPECT_LT((g * st.state - double(st.eigenvalues[k]) * st.state).norm(), 1e-13) << st.label;
    }
    for (std::size_t j = 0; j < i; ++j) EXPECT_LT(std::abs(all[j].state.dot(st.state)), 1.0 - 1e-6);
    // Free state: unit SRE spectrum on four strings.
    EXPECT_NEAR(hm::sre_alpha(hm::FermionState::pure(st.state), 2.0), 0.0, 1e-12);
  }
  EXPECT_EQ(labels.size(), 12u);
}

TEST(ConditionalDisplacement, ExpectationMatchesBruteForce) {
  const Complex alpha(0.6, 0.25);
  for (int fermion : {0, 5, 9, 11}) {
    for (const hm::GaussianStateParams gp :
         {hm::GaussianStateParams{}, hm::GaussianStateParams{{0.3, -0.2}, 0.3, 0.9}}) {
      const hm::StabilizerInput in{gp, fermion};
      const auto gate = hm::make_gate(spec(hm::GateKind::conditional_displacement, alpha, 0, 0, 40));
      const auto field = hm::components_from_state(gate.apply(in.state(40)));
      for (Complex beta : {Complex(0.1, 0.2), Complex(-0.5, 0.4), Complex(0.9, -0.7)}) {
        for (int i = 0; i < 16; ++i) {
          const Complex e = hm::cd_expectation(beta, field.strings()[i], alpha, in);
          EXPECT_NEAR(std::abs(e - field.raw_component(i, beta)), 0.0, 1e-8) << fermion << ' ' << i;
        }
      }
    }
  }
}

TEST(ConditionalDisplacement, L1SumOfFreeOutputs) {
  const Complex alpha(0.7, 0.0);
  for (int fermion = 0; fermion < 8; ++fermion) {
    const auto r = hm::cd_l1_sum(alpha, {{}, fermion});
    EXPECT_NEAR(r.value, 4.0, 1e-4) << fermion;
  }
  hm::QuadratureSpec fine;
  fine.refine_tolerance = 1e-5;
  fine.max_refinements = 6;
  const double bracket = hm::cd_odd_bell_bracket(alpha, {}).value;
  for (int fermion : {8, 10}) {
    const auto r = hm::cd_l1_sum(alpha, {{}, fermion}, fine);
    EXPECT_NEAR(r.value, bracket, 1e-4) << fermion;
  }
}

TEST(ConditionalDisplacement, ClosedPowerShape) {
  EXPECT_EQ(hm::cd_power_closed({0.0, 0.0}), 0.0);
  const double asym = 2.0 / 3.0 * std::log(1.0 + 2.0 / kPi);
  double prev = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double v = hm::cd_power_closed({3.0 * i / 100.0, 0.0});
    EXPECT_GE(v, prev - 1e-12);
    EXPECT_LE(v, asym + 1e-12);
    prev = v;
  }
  EXPECT_NEAR(hm::cd_power_closed({0.0, 3.0}), asym, 1e-4);
}

TEST(ConditionalDisplacement, GeneralPowerOnVacuum) {
  for (double a : {0.05, 0.3, 1.0, 2.0}) {
    EXPECT_NEAR(hm::cd_power_general({a, 0.0}, {}), hm::cd_power_closed({a, 0.0}), 1e-12);
  }
}

TEST(ConditionalDisplacement, SqueezingAlignment) {
  const Complex alpha(0.5, 0.0);
  const double aligned = hm::cd_power_general(alpha, {{}, 1.0, 0.0});
  const double anti = hm::cd_power_general(alpha, {{}, 1.0, kPi});
  EXPECT_GT(aligned, anti);
  // Depends on the squeezing only through |mu alpha + nu conj(alpha)|.
  const double chi = 0.7;
  const double rotated = hm::cd_power_general(alpha * std::polar(1.0, chi), {{}, 1.0, 2 * chi});
  EXPECT_NEAR(rotated, aligned, 1e-10);
}

TEST(MonteCarlo, StandardErrorScaling) {
  const auto measure = hm::GaussianMeasure::parse("disk");
  const auto f = [](const hm::GaussianStateParams& g) { return hm::cd_power_general({0.5, 0.0}, g); };
  const auto small = hm::monte_carlo_mean(measure, f, 200, 3);
  const auto large = hm::monte_carlo_mean(measure, f, 3200, 3);
  EXPECT_NEAR(large.std_error / small.std_error, 0.25, 0.05);
  EXPECT_NEAR(large.mean, small.mean, 4 * small.std_error);
  const auto vac = hm::monte_carlo_mean(hm::GaussianMeasure{}, f, 50, 1);
  EXPECT_EQ(vac.samples, 1);
  EXPECT_THROW(hm::GaussianMeasure::parse("uniform"), hm::DomainError);
}

TEST(Power, IdentityGateIsFree) {
  const auto gate = hm::make_gate(spec(hm::GateKind::conditional_displacement, {0.0, 0.0}, 0, 0, 0));
  const auto p = hm::power_numeric(gate, {}, 1);
  EXPECT_TRUE(p.converged);
  EXPECT_NEAR(p.mean, 0.0, 1e-5);
}
