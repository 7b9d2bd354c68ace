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

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hybrid_magic/core.hpp"
#include "hybrid_magic/fock.hpp"
#include "hybrid_magic/hybrid.hpp"
#include "hybrid_magic/majorana.hpp"
#include "hybrid_magic/numerics.hpp"
#include "hybrid_magic/quadrature.hpp"

namespace hybrid_magic {

// One cavity mode with the two-mode fermion (c_g, c_e). Matrices act on the
// index n * 4 + f, f the occupation index of HybridState columns.
enum class GateKind { displacement, rotation, sqr, jc, ajc, conditional_displacement, beam_splitter };

// "D", "R", "SQR", "JC", "AJC", "CD", "BS" (case-insensitive).
GateKind parse_gate_kind(const std::string& name);
std::string to_string(GateKind kind);

struct GateSpec {
  GateKind kind = GateKind::conditional_displacement;
  Complex alpha{0.0, 0.0};      // D, CD
  double theta = 0.0;           // R, JC, AJC
  double phi = 0.0;
  std::vector<double> thetas;   // SQR, one angle per Fock level
  std::vector<double> phis;
  int d_max = 0;                // <= 0 picks a cutoff from the parameters

  void validate() const;
};

struct HybridGate {
  GateSpec spec;
  int d_max = 0;
  MatrixXc matrix;
  // Weight that a padded exponential moves from the vacuum columns beyond
  // d_max; zero for gates that conserve the photon number.
  double leakage = 0.0;

  std::string name() const;
  // Inputs with fewer Fock levels are zero-padded; more levels are rejected.
  HybridState apply(const HybridState& psi) const;
};

// exp of the generator on the truncated space (exactly unitary there).
// Throws UnsupportedGateError for the beam splitter.
HybridGate make_gate(const GateSpec& spec);

// c_g and c_e on the four-dimensional fermion space.
MatrixXc fermion_lowering_g();
MatrixXc fermion_lowering_e();

// D(delta) S(zeta) |0> with S(zeta) = exp((conj(zeta) a^2 - zeta a^dag^2) / 2),
// zeta = r_sq e^{i phi_sq}. d_max <= 0 uses gaussian_cutoff(params).
FockVector gaussian_state(const GaussianStateParams& params, int d_max = 0, double tail_tolerance = 1e-10);

// Smallest cutoff (at least 15) whose tail weight is below tail_tolerance.
int gaussian_cutoff(const GaussianStateParams& params, double tail_tolerance = 1e-10);

// Two-mode Majorana stabilizer state with the pair of commuting bilinears
// (given as string masks) it diagonalizes.
struct MajoranaStabilizer {
  std::string label;
  VectorXc state;
  std::array<unsigned, 2> pair_masks;
  std::array<int, 2> eigenvalues;
};

// |00>, |01>, |10>, |11>, (|00> + t|11>)/sqrt2 and (|01> + t|10>)/sqrt2 for
// t = 1, -1, i, -i.
const std::vector<MajoranaStabilizer>& majorana_stabilizer_states();

struct StabilizerInput {
  GaussianStateParams gaussian;
  int fermion = 0;  // index into majorana_stabilizer_states()

  void validate() const;
  HybridState state(int d_max = 0) const;
};

// Wigner function 2 exp(-|2 mu (tau - delta) + 2 nu conj(tau - delta)|^2 / 2)
// of the Gaussian state.
double cd_bosonic_kernel(Complex tau, const GaussianStateParams& gaussian);

// <phi| P_m Gamma P_n |phi> for m, n in {-1, 0, 1}, P_{+1} = |01><01|,
// P_{-1} = |10><10|, P_0 the rest; indexed [m + 1][n + 1].
std::array<std::array<Complex, 3>, 3> cd_fermionic_kernel(const MajoranaString& gamma, const VectorXc& phi);

// Weyl component <U psi| Upsilon(beta) (x) Gamma |U psi> for U = CD(alpha).
Complex cd_expectation(Complex beta, const MajoranaString& gamma, Complex alpha, const StabilizerInput& input);

// Integral of sum over the 16 strings of |cd_expectation|.
QuadratureResult cd_l1_sum(Complex alpha, const StabilizerInput& input, QuadratureSpec spec = {});

// 2 [1 + erf(sqrt2 |mu alpha + nu conj(alpha)|) + E|sin T| + |cos T|], the L1
// sum for the odd Bell inputs, T ~ Normal(4 Im(alpha conj(delta)), 4|mu alpha + nu conj(alpha)|^2).
SeriesResult cd_odd_bell_bracket(Complex alpha, const GaussianStateParams& gaussian, const SeriesSpec& spec = {});

// Power on the vacuum:
// (2/3) ln[(1 + erf(sqrt2 |a|))/2 + 2/pi - (4/pi) sum exp(-32 n^2 |a|^2)/(16 n^2 - 1)].
double cd_power_closed(Complex alpha);

// Power for one Gaussian input state; equals cd_power_closed on the vacuum.
double cd_power_general(Complex alpha, const GaussianStateParams& gaussian, const SeriesSpec& spec = {});

// Distribution of the bosonic part of the stabilizer inputs.
struct GaussianMeasure {
  enum class Kind { dirac_vacuum, displacement_disk, capped_squeezing, disk_squeezing };
  Kind kind = Kind::dirac_vacuum;
  double max_displacement = 2.0;
  double max_squeezing = 1.0;

  bool deterministic() const { return kind == Kind::dirac_vacuum; }
  GaussianStateParams sample(std::mt19937_64& rng) const;
  // "vacuum", "disk", "squeezing", "disk-squeezing".
  static GaussianMeasure parse(const std::string& name);
  std::string str() const;
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  int samples = 0;
};

// Sample mean of f over the measure; deterministic measures take one sample.
MonteCarloEstimate monte_carlo_mean(const GaussianMeasure& measure,
                                    const std::function<double(const GaussianStateParams&)>& f, int n_samples,
                                    std::uint64_t seed);

struct PowerEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
  bool converged = true;             // every quadrature met its tolerance
  double quadrature_change = 0.0;    // largest final relative change seen
};

// Mean of hybrid_magic_p(U |gaussian>|phi>, p = 1, Weyl) over the 12
// stabilizer states, averaged over sampled Gaussian inputs. The gate is
// rebuilt with a larger cutoff when a sampled input needs one.
PowerEstimate power_numeric(const HybridGate& gate, const GaussianMeasure& measure, int n_samples,
                            QuadratureSpec spec = {}, std::uint64_t seed = 1);

// Magic of each of the 12 transformed stabilizer states for one input.
std::vector<MagicResult> transformed_stabilizer_magic(const HybridGate& gate, const GaussianStateParams& gaussian,
                                                      QuadratureSpec spec = {});

}  // namespace hybrid_magic
