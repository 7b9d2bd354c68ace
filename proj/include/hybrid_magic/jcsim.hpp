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
#include <memory>
#include <vector>

#include "hybrid_magic/core.hpp"
#include "hybrid_magic/fock.hpp"
#include "hybrid_magic/hybrid.hpp"
#include "hybrid_magic/overlap_basis.hpp"
#include "hybrid_magic/quadrature.hpp"

namespace hybrid_magic {

using Matrix2c = Eigen::Matrix2cd;

// H = w_c a^dag a + w_a c_e^dag c_e + g (a^dag c_g^dag c_e + a c_e^dag c_g)
// on the single-excitation fermion sector, |g> = |10>, |e> = |01>.
struct JCParams {
  double omega_c = 1.0;
  double omega_a = 1.0;
  double g = 1.0;

  double detuning() const { return omega_c - omega_a; }
  double rabi(int n) const;
  void validate() const;
};

struct JCInitial {
  FockVector cavity;
  Complex mu_g{1.0, 0.0};
  Complex mu_e{0.0, 0.0};

  // cos(theta/2)|g> + e^{i phi} sin(theta/2)|e>.
  static JCInitial bloch(const FockVector& cavity, double theta, double phi);
  void validate() const;
  // Mean of a^dag a + c_e^dag c_e.
  double mean_excitations() const;
};

// |psi> = sum_n |n> (alpha_n |10> + beta_n |01>).
struct JCCoefficients {
  VectorXc alpha;
  VectorXc beta;

  int d_max() const { return static_cast<int>(alpha.size()); }
  double norm() const { return std::sqrt(alpha.squaredNorm() + beta.squaredNorm()); }
  // d_max x 4 amplitudes in the occupation basis.
  HybridState state() const;
};

struct JCTrajectory {
  std::vector<double> times;
  std::vector<JCCoefficients> coefficients;
};

// exp(-i H_n t) on span{|n, g>, |n-1, e>}, n >= 1.
Matrix2c block_unitary(int n, double t, const JCParams& params);

// Coefficients at t = 0. The vectors are one level longer than the cavity so
// that |d_max - 1, e> has its partner |d_max, g>.
JCCoefficients initial_coefficients(const JCInitial& initial);

// Blockwise evolution with block_unitary.
JCCoefficients evolve_blocks(const JCInitial& initial, double t, const JCParams& params);
// Resonant closed form; requires zero detuning.
JCCoefficients evolve_resonant(const JCInitial& initial, double t, const JCParams& params);

// Uses the closed form when resonant.
JCTrajectory evolve(const JCInitial& initial, const std::vector<double>& times, const JCParams& params);

// Double sums over O_{m,n}(alpha; r):
//   S_sym  = sum O (conj(a_m) a_n + conj(b_m) b_n)
//   S_asym = sum O (conj(a_m) a_n - conj(b_m) b_n)
//   T_sym  = sum O (conj(b_m) a_n + conj(a_m) b_n)
//   T_asym = i sum O (conj(b_m) a_n - conj(a_m) b_n)
struct STSeries {
  double s_sym = 0.0;
  double s_asym = 0.0;
  double t_sym = 0.0;
  double t_asym = 0.0;
};

STSeries st_series(const JCCoefficients& coeffs, Complex alpha, double r);

// Coefficient matrices C(n, m) of the four series, in the order above.
std::array<MatrixXc, 4> st_contractions(const JCCoefficients& coeffs);

// The 16 hybrid Wigner components in Majorana-string mask order.
std::array<double, 16> jc_components(const STSeries& st, double s);

// Masks of the eight components that can be nonzero on the sector.
inline constexpr std::array<int, 8> kJCMasks{0, 3, 5, 6, 9, 10, 12, 15};

struct ReducedStates {
  MatrixXc atom;    // 2 x 2 in (g, e) order
  MatrixXc cavity;  // d_max x d_max
};

ReducedStates reduced_states(const JCCoefficients& coeffs);

// Atom state as a two-mode fermion density matrix in the occupation basis.
MatrixXc atom_fermion_density(const MatrixXc& atom);

// Hybrid and mutual magic along one trajectory on a fixed grid. The grid is
// calibrated once by doubling until the magic at every probe time converges,
// then every later call reuses the cached phase-point table.
class JCMagicEvaluator {
 public:
  JCMagicEvaluator(const JCInitial& initial, const JCParams& params, double p, OrderingParams orderings,
                   QuadratureSpec spec, const std::vector<double>& probe_times);
  // Reuses an already calibrated grid.
  JCMagicEvaluator(const JCInitial& initial, const JCParams& params, double p, OrderingParams orderings,
                   const PhaseGrid& grid);

  // Same grid and table for another initial state whose trajectory stays in
  // the calibrated Fock support.
  JCMagicEvaluator rebind(const JCInitial& initial) const;

  // `coarse` evaluates on the grid two doublings below the calibrated one,
  // used to scan for candidate maxima.
  double magic(double t, bool coarse = false) const;
  // Requires Weyl orderings.
  MutualMagic mutual(double t, bool coarse = false) const;
  JCCoefficients state_at(double t) const;

  const PhaseGrid& grid() const { return integrator_->grid(); }
  const QuadratureResult& calibration() const { return calibration_; }

 private:
  void build_basis();
  Matrix<double> coefficients(const JCCoefficients& c) const;

  JCInitial initial_;
  JCParams params_;
  double p_;
  OrderingParams orderings_;
  std::shared_ptr<PhasePointBasis> basis_;
  std::shared_ptr<GridLpIntegrator> integrator_;
  std::shared_ptr<GridLpIntegrator> coarse_;
  // Distinct |component| fields as combinations of (S_sym, S_asym, T_sym,
  // T_asym), with the number of components sharing each.
  Matrix<double> field_map_;
  Vector<double> multiplicity_;
  QuadratureResult calibration_;
};

struct TimePoint {
  double t;
  double magic;
};

struct MagicTimeseries {
  std::vector<TimePoint> points;
  QuadratureResult calibration;
};

MagicTimeseries magic_timeseries(const JCInitial& initial, const std::vector<double>& times,
                                 const JCParams& params, double p = 1.0, OrderingParams orderings = {},
                                 QuadratureSpec spec = {});

// Time of one population cycle, 2 pi / Omega_n at the rounded mean excitation
// number (at least 1).
double rabi_period(const JCInitial& initial, const JCParams& params);

struct MaxMagic {
  double t = 0.0;
  double value = 0.0;
  bool flat = false;  // max - min over the coarse scan below 1e-8
  QuadratureResult calibration;
};

// Coarse scan with at least 512 samples per Rabi period on the coarse grid,
// then golden-section refinement on the calibrated grid (to 1e-6 relative in
// t) of up to three sampled peaks within 2% of the best. Ties go to the
// smaller t.
MaxMagic max_magic(const JCInitial& initial, const JCParams& params, double t_begin, double t_end,
                   double p = 1.0, OrderingParams orderings = {}, QuadratureSpec spec = {});
MaxMagic max_magic(const JCMagicEvaluator& evaluator, double period, double t_begin, double t_end);

// Same search applied to the mutual magic (p = 1, Weyl).
MaxMagic max_mutual_magic(const JCInitial& initial, const JCParams& params, double t_begin, double t_end,
                          QuadratureSpec spec = {});

struct BlochScan {
  std::vector<double> thetas;
  std::vector<double> phis;
  Matrix<double> max_magic;  // thetas x phis
  Matrix<double> t_star;
  PhaseGrid grid{};
  static constexpr double kThetaT = 0.9553166181245093;  // arccos(1/sqrt 3)
  static constexpr double kPhiT = 0.7853981633974483;
  static constexpr double kThetaH = 0.7853981633974483;
  static constexpr double kPhiH = 0.0;
};

// Max magic over [t_begin, t_end] for every atom state on the grid with the
// cavity in vacuum. One grid, calibrated on |e>, serves every cell.
BlochScan bloch_scan(const std::vector<double>& thetas, const std::vector<double>& phis, const JCParams& params,
                     double t_begin, double t_end, double p = 1.0, OrderingParams orderings = {},
                     QuadratureSpec spec = {});

struct MutualPoint {
  double t;
  MutualMagic value;
};

struct MutualTimeseries {
  std::vector<MutualPoint> points;
  double max = 0.0;
  double argmax = 0.0;
  QuadratureResult calibration;
};

MutualTimeseries mutual_magic_timeseries(const JCInitial& initial, const std::vector<double>& times,
                                         const JCParams& params, QuadratureSpec spec = {});

struct LogFit {
  double a;
  double b;
  double residual;  // RMS
};

// Least squares values ~ a ln(n) + b.
LogFit log_fit(const std::vector<int>& ns, const std::vector<double>& values);

// Interior local maxima of a sampled curve, strict on both sides.
std::vector<std::size_t> local_maxima(const std::vector<double>& values);

}  // namespace hybrid_magic
