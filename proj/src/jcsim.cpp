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

#include "hybrid_magic/jcsim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "hybrid_magic/majorana.hpp"

namespace hybrid_magic {

double JCParams::rabi(int n) const {
  const double d = detuning();
  return std::sqrt(d * d + 4.0 * g * g * n);
}

void JCParams::validate() const {
  if (!(g >= 0.0)) throw DomainError("JC coupling g must be >= 0");
  if (!std::isfinite(omega_c) || !std::isfinite(omega_a)) throw DomainError("JC frequencies must be finite");
}

JCInitial JCInitial::bloch(const FockVector& cavity, double theta, double phi) {
  JCInitial out;
  out.cavity = cavity;
  out.mu_g = std::cos(theta / 2.0);
  out.mu_e = std::polar(std::sin(theta / 2.0), phi);
  return out;
}

void JCInitial::validate() const {
  if (cavity.d_max() < 1) throw StateError("JC cavity state is empty");
  if (std::abs(cavity.amplitudes.norm() - 1.0) > 1e-10) throw StateError("JC cavity state is not normalized");
  if (std::abs(std::norm(mu_g) + std::norm(mu_e) - 1.0) > 1e-10) {
    throw StateError("JC atom amplitudes are not normalized");
  }
}

double JCInitial::mean_excitations() const {
  double n = std::norm(mu_e);
  for (int k = 0; k < cavity.d_max(); ++k) n += k * std::norm(cavity.amplitudes(k));
  return n;
}

HybridState JCCoefficients::state() const {
  MatrixXc amps = MatrixXc::Zero(d_max(), 4);
  amps.col(2) = alpha;
  amps.col(1) = beta;
  return HybridState(amps);
}

namespace {

// sin(x t / 2) / x, continuous at x = 0.
double half_sinc(double x, double t) {
  if (std::abs(x * t) < 1e-8) return t / 2.0;
  return std::sin(x * t / 2.0) / x;
}

}  // namespace

Matrix2c block_unitary(int n, double t, const JCParams& params) {
  params.validate();
  if (n < 1) throw DomainError("JC block index must be >= 1");
  const double delta = params.detuning();
  const double omega = params.rabi(n);
  const double c = std::cos(omega * t / 2.0);
  const double sn = half_sinc(omega, t);  // sin(Omega t / 2) / Omega
  const Complex i(0.0, 1.0);
  const Complex phase = std::exp(-i * (n * params.omega_c - delta / 2.0) * t);
  Matrix2c u;
  u(0, 0) = c - i * delta * sn;
  u(1, 1) = c + i * delta * sn;
  u(0, 1) = u(1, 0) = -i * 2.0 * params.g * std::sqrt(static_cast<double>(n)) * sn;
  return phase * u;
}

JCCoefficients initial_coefficients(const JCInitial& initial) {
  initial.validate();
  const int d = initial.cavity.d_max() + 1;
  JCCoefficients c;
  c.alpha = VectorXc::Zero(d);
  c.beta = VectorXc::Zero(d);
  c.alpha.head(d - 1) = initial.mu_g * initial.cavity.amplitudes;
  c.beta.head(d - 1) = initial.mu_e * initial.cavity.amplitudes;
  return c;
}

JCCoefficients evolve_blocks(const JCInitial& initial, double t, const JCParams& params) {
  const JCCoefficients c0 = initial_coefficients(initial);
  JCCoefficients c = c0;
  const int d = c0.d_max();
  // Block n pairs alpha_n with beta_{n-1}. beta_{d-1} starts at zero and its
  // block partner lies beyond the stored range.
  for (int n = 1; n < d; ++n) {
    const Matrix2c u = block_unitary(n, t, params);
    const Eigen::Vector2cd v(c0.alpha(n), c0.beta(n - 1));
    const Eigen::Vector2cd w = u * v;
    c.alpha(n) = w(0);
    c.beta(n - 1) = w(1);
  }
  return c;
}

JCCoefficients evolve_resonant(const JCInitial& initial, double t, const JCParams& params) {
  params.validate();
  if (params.detuning() != 0.0) throw DomainError("resonant closed form needs omega_c == omega_a");
  const JCCoefficients c0 = initial_coefficients(initial);
  JCCoefficients c = c0;
  const int d = c0.d_max();
  const Complex i(0.0, 1.0);
  for (int n = 0; n < d; ++n) {
    const double x = std::sqrt(static_cast<double>(n)) * params.g * t;
    const Complex below = n > 0 ? c0.beta(n - 1) : Complex(0.0);
    c.alpha(n) = std::exp(-i * (n * params.omega_c * t)) * (std::cos(x) * c0.alpha(n) - i * std::sin(x) * below);
    const double y = std::sqrt(n + 1.0) * params.g * t;
    const Complex above = n + 1 < d ? c0.alpha(n + 1) : Complex(0.0);
    c.beta(n) = std::exp(-i * ((n + 1) * params.omega_c * t)) * (-i * std::sin(y) * above + std::cos(y) * c0.beta(n));
  }
  return c;
}

JCTrajectory evolve(const JCInitial& initial, const std::vector<double>& times, const JCParams& params) {
  params.validate();
  initial.validate();
  JCTrajectory out;
  out.times = times;
  out.coefficients.reserve(times.size());
  const bool resonant = params.detuning() == 0.0;
  for (double t : times) {
    out.coefficients.push_back(resonant ? evolve_resonant(initial, t, params) : evolve_blocks(initial, t, params));
  }
  return out;
}

std::array<MatrixXc, 4> st_contractions(const JCCoefficients& c) {
  const Complex i(0.0, 1.0);
  const MatrixXc aa = c.alpha * c.alpha.adjoint();
  const MatrixXc bb = c.beta * c.beta.adjoint();
  const MatrixXc ab = c.alpha * c.beta.adjoint();
  const MatrixXc ba = c.beta * c.alpha.adjoint();
  return {aa + bb, aa - bb, ab + ba, i * (ab - ba)};
}

STSeries st_series(const JCCoefficients& coeffs, Complex alpha, double r) {
  OrderingParams{r, 0.0}.validate();
  const MatrixXc o = phase_point_matrix(alpha, r, coeffs.d_max());
  const auto c = st_contractions(coeffs);
  double v[4];
  for (int q = 0; q < 4; ++q) {
    const Complex z = o.cwiseProduct(c[q].transpose()).sum();
    if (std::abs(z.imag()) > 1e-6) throw RealityError("JC series has an imaginary part");
    v[q] = z.real();
  }
  return {v[0], v[1], v[2], v[3]};
}

namespace {

// Rows: S_sym, S_asym, T_sym, T_asym; columns: kJCMasks order.
Eigen::Matrix<double, 4, 8> component_map(double s) {
  Eigen::Matrix<double, 4, 8> m = Eigen::Matrix<double, 4, 8>::Zero();
  m(0, 0) = 1.0;                        // 1
  m(1, 1) = 1.0, m(0, 1) = s;           // i g1 g2 + s
  m(3, 2) = -1.0;                       // i g1 g3
  m(2, 3) = -1.0;                       // i g2 g3
  m(2, 4) = 1.0;                        // i g1 g4
  m(3, 5) = -1.0;                       // i g2 g4
  m(1, 6) = -1.0, m(0, 6) = s;          // i g3 g4 + s
  m(0, 7) = -(1.0 - s * s);             // (i g1 g2 + s)(i g3 g4 + s)
  return m;
}

}  // namespace

std::array<double, 16> jc_components(const STSeries& st, double s) {
  const Eigen::Vector4d v(st.s_sym, st.s_asym, st.t_sym, st.t_asym);
  const Eigen::Matrix<double, 8, 1> w = component_map(s).transpose() * v;
  std::array<double, 16> out{};
  for (int k = 0; k < 8; ++k) out[kJCMasks[k]] = w(k);
  return out;
}

ReducedStates reduced_states(const JCCoefficients& c) {
  ReducedStates out;
  out.atom.resize(2, 2);
  out.atom(0, 0) = c.alpha.squaredNorm();
  out.atom(1, 1) = c.beta.squaredNorm();
  out.atom(0, 1) = c.beta.dot(c.alpha);  // sum alpha_n conj(beta_n)
  out.atom(1, 0) = std::conj(out.atom(0, 1));
  out.cavity = c.alpha * c.alpha.adjoint() + c.beta * c.beta.adjoint();
  return out;
}

MatrixXc atom_fermion_density(const MatrixXc& atom) {
  if (atom.rows() != 2 || atom.cols() != 2) throw StateError("atom state must be 2 x 2");
  MatrixXc rho = MatrixXc::Zero(4, 4);
  rho(2, 2) = atom(0, 0);
  rho(1, 1) = atom(1, 1);
  rho(2, 1) = atom(0, 1);
  rho(1, 2) = atom(1, 0);
  return rho;
}

namespace {

// Fock levels the trajectory can ever populate: blocks are closed under the
// dynamics, so a level is live when its block carries initial weight.
std::vector<std::pair<int, int>> trajectory_support(const JCInitial& initial) {
  const JCCoefficients c = initial_coefficients(initial);
  const int d = c.d_max();
  std::vector<bool> live(d, false);
  for (int n = 0; n < d; ++n) {
    // block n = {alpha_n, beta_{n-1}}
    const bool weight = std::abs(c.alpha(n)) > 0.0 || (n > 0 && std::abs(c.beta(n - 1)) > 0.0);
    if (weight) {
      live[n] = true;
      if (n > 0) live[n - 1] = true;
    }
  }
  if (std::abs(c.beta(d - 1)) > 0.0) live[d - 1] = true;
  std::vector<std::pair<int, int>> out;
  for (int m = 0; m < d; ++m) {
    for (int n = m; n < d; ++n) {
      if (live[m] && live[n]) out.emplace_back(m, n);
    }
  }
  return out;
}

int support_extent(const std::vector<std::pair<int, int>>& support) {
  int n_max = 0;
  for (auto [m, n] : support) n_max = std::max(n_max, n);
  return n_max;
}

// Trajectories evaluate the same grid hundreds of times, so the phase-point
// table gets a larger budget than one-shot integrals.
constexpr std::size_t kTableBytes = std::size_t(768) << 20;

double magic_from_sum(double sum, double p) { return lp_prefactor(p) * std::log(std::ldexp(sum, -2)); }

// Grid two doublings below `fine`, or `fine` itself when that would drop
// under 33 points per axis.
PhaseGrid coarser(const PhaseGrid& fine) {
  PhaseGrid g = fine;
  for (int k = 0; k < 2; ++k) {
    if ((g.n - 1) % 2 != 0 || (g.n - 1) / 2 + 1 < 33) break;
    g.n = (g.n - 1) / 2 + 1;
  }
  return g;
}

}  // namespace

void JCMagicEvaluator::build_basis() {
  params_.validate();
  initial_.validate();
  orderings_.validate();
  basis_ = std::make_shared<PhasePointBasis>(orderings_.r, trajectory_support(initial_));
  // Components equal up to sign share one field: |w_5| = |w_10| = |T_asym|,
  // |w_6| = |w_9| = |T_sym|, |w_15| = (1 - s^2)|w_0|, and at s = 0 also
  // |w_3| = |w_12|.
  const double s = orderings_.s;
  const bool merge = s == 0.0;
  const int q = merge ? 4 : 5;
  field_map_ = Matrix<double>::Zero(4, q);
  multiplicity_ = Vector<double>::Zero(q);
  field_map_(0, 0) = 1.0;
  multiplicity_(0) = 1.0 + std::pow(1.0 - s * s, p_);
  field_map_(1, 1) = 1.0, field_map_(0, 1) = s;
  multiplicity_(1) = merge ? 2.0 : 1.0;
  int k = 2;
  if (!merge) {
    field_map_(1, 2) = -1.0, field_map_(0, 2) = s;
    multiplicity_(2) = 1.0;
    k = 3;
  }
  field_map_(2, k) = 1.0;
  multiplicity_(k) = 2.0;
  field_map_(3, k + 1) = 1.0;
  multiplicity_(k + 1) = 2.0;
}

JCCoefficients JCMagicEvaluator::state_at(double t) const {
  return params_.detuning() == 0.0 ? evolve_resonant(initial_, t, params_) : evolve_blocks(initial_, t, params_);
}

Matrix<double> JCMagicEvaluator::coefficients(const JCCoefficients& c) const {
  const auto st = st_contractions(c);
  return basis_->coefficients({st.begin(), st.end()}) * field_map_;
}

JCMagicEvaluator::JCMagicEvaluator(const JCInitial& initial, const JCParams& params, double p,
                                   OrderingParams orderings, QuadratureSpec spec,
                                   const std::vector<double>& probe_times)
    : initial_(initial), params_(params), p_(p), orderings_(orderings) {
  lp_prefactor(p_);
  build_basis();
  if (probe_times.empty()) throw DomainError("grid calibration needs at least one probe time");
  if (spec.half_width <= 0.0) {
    spec.half_width = auto_half_width(0.0, support_extent(trajectory_support(initial_)), orderings_.r);
  }
  spec.validate();
  std::vector<Matrix<double>> coefs;
  for (double t : probe_times) coefs.push_back(coefficients(state_at(t)));
  std::vector<std::shared_ptr<GridLpIntegrator>> levels;
  auto level = [&](const PhaseGrid& g, std::vector<double>& out) {
    levels.push_back(std::make_shared<GridLpIntegrator>(*basis_, g, kTableBytes));
    if (levels.size() > 3) levels.erase(levels.begin());
    out.clear();
    for (const auto& cf : coefs) out.push_back(magic_from_sum(levels.back()->lp_sum(cf, multiplicity_, p_), p_));
  };
  PhaseGrid grid{spec.half_width, spec.points_per_axis};
  std::vector<double> prev;
  std::vector<double> cur;
  level(grid, prev);
  calibration_.points_per_axis = grid.n;
  calibration_.value = prev.front();
  for (int k = 1; k <= spec.max_refinements; ++k) {
    grid.n = 2 * (grid.n - 1) + 1;
    level(grid, cur);
    // Magic values sit near zero for Gaussian probes, so the change is
    // measured against max(|M|, 1).
    double change = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      change = std::max(change, std::abs(cur[i] - prev[i]) / std::max(std::abs(cur[i]), 1.0));
    }
    calibration_.refinements = k;
    calibration_.points_per_axis = grid.n;
    calibration_.relative_change = change;
    calibration_.value = cur.front();
    if (change < spec.refine_tolerance) {
      calibration_.converged = true;
      break;
    }
    prev.swap(cur);
  }
  integrator_ = levels.back();
  coarse_ = levels.front();
}

JCMagicEvaluator::JCMagicEvaluator(const JCInitial& initial, const JCParams& params, double p,
                                   OrderingParams orderings, const PhaseGrid& grid)
    : initial_(initial), params_(params), p_(p), orderings_(orderings) {
  lp_prefactor(p_);
  build_basis();
  integrator_ = std::make_shared<GridLpIntegrator>(*basis_, grid, kTableBytes);
  const PhaseGrid low = coarser(grid);
  coarse_ = low.n == grid.n ? integrator_ : std::make_shared<GridLpIntegrator>(*basis_, low);
  calibration_.converged = true;
  calibration_.points_per_axis = grid.n;
}

JCMagicEvaluator JCMagicEvaluator::rebind(const JCInitial& initial) const {
  const auto need = trajectory_support(initial);
  const std::vector<std::pair<int, int>>& have = basis_->support();
  for (const auto& pr : need) {
    if (!std::binary_search(have.begin(), have.end(), pr)) {
      throw DomainError("rebind: the new initial state leaves the calibrated support");
    }
  }
  JCMagicEvaluator out = *this;
  out.initial_ = initial;
  out.initial_.validate();
  return out;
}

double JCMagicEvaluator::magic(double t, bool coarse) const {
  const GridLpIntegrator& integ = coarse ? *coarse_ : *integrator_;
  return magic_from_sum(integ.lp_sum(coefficients(state_at(t)), multiplicity_, p_), p_);
}

MutualMagic JCMagicEvaluator::mutual(double t, bool coarse) const {
  if (orderings_.r != 0.0 || orderings_.s != 0.0) throw DomainError("mutual magic is defined at Weyl ordering");
  const GridLpIntegrator& integ = coarse ? *coarse_ : *integrator_;
  const JCCoefficients c = state_at(t);
  const Matrix<double> coef = coefficients(c);
  const Vector<double> one = Vector<double>::Ones(1);
  const double pref = lp_prefactor(p_);
  MutualMagic out;
  out.hybrid = magic_from_sum(integ.lp_sum(coef, multiplicity_, p_), p_);
  // Field 0 is S_sym, the reduced cavity Wigner function.
  out.mana = pref * std::log(integ.lp_sum(coef.col(0), one, p_));
  out.fermion = modified_sre(FermionState::mixed(reduced_states(c).atom), p_);
  out.value = out.hybrid - out.mana - out.fermion;
  out.converged = calibration_.converged;
  return out;
}

namespace {

std::vector<double> probes(double t0, double t1) {
  std::vector<double> out;
  for (int k = 0; k < 5; ++k) out.push_back(t0 + (t1 - t0) * k / 4.0);
  return out;
}

}  // namespace

MagicTimeseries magic_timeseries(const JCInitial& initial, const std::vector<double>& times,
                                 const JCParams& params, double p, OrderingParams orderings,
                                 QuadratureSpec spec) {
  if (times.empty()) throw DomainError("time grid must not be empty");
  const auto [lo, hi] = std::minmax_element(times.begin(), times.end());
  const JCMagicEvaluator ev(initial, params, p, orderings, spec, probes(*lo, *hi));
  MagicTimeseries out;
  out.calibration = ev.calibration();
  for (double t : times) out.points.push_back({t, ev.magic(t)});
  return out;
}

double rabi_period(const JCInitial& initial, const JCParams& params) {
  params.validate();
  const int n = std::max(1, static_cast<int>(std::lround(initial.mean_excitations())));
  const double omega = params.rabi(n);
  if (omega == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * std::numbers::pi / omega;
}

namespace {

MaxMagic maximize(const std::function<double(double, bool)>& f, double period, double t0, double t1) {
  if (!(t1 > t0)) throw DomainError("max-magic window must be a nonempty interval");
  const double span = t1 - t0;
  int samples = 512;
  if (std::isfinite(period) && period > 0.0) {
    samples = std::max(samples, static_cast<int>(std::ceil(512.0 * span / period)));
  }
  std::vector<double> ts(samples + 1);
  std::vector<double> vs(samples + 1);
  for (int k = 0; k <= samples; ++k) {
    ts[k] = t0 + span * k / samples;
    vs[k] = f(ts[k], true);
  }
  const auto [lo_it, hi_it] = std::minmax_element(vs.begin(), vs.end());
  MaxMagic out;
  if (*hi_it - *lo_it < 1e-8) {
    out.flat = true;
    out.t = t0;
    out.value = f(t0, false);
    return out;
  }
  // Candidates: sampled local maxima including the window ends.
  std::vector<std::size_t> cand;
  const std::size_t last = vs.size() - 1;
  for (std::size_t k = 0; k <= last; ++k) {
    const bool left = k == 0 || vs[k] >= vs[k - 1];
    const bool right = k == last || vs[k] > vs[k + 1];
    if (left && right) cand.push_back(k);
  }
  std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) { return vs[a] > vs[b]; });
  // Keep up to three peaks that the coarse grid cannot separate from the best.
  const double margin = 0.02 * std::abs(vs[cand.front()]) + 1e-3;
  while (cand.size() > 1 && (cand.size() > 3 || vs[cand.back()] < vs[cand.front()] - margin)) cand.pop_back();
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  bool have = false;
  for (std::size_t k : cand) {
    double a = ts[k >= 2 ? k - 2 : 0];
    double b = ts[std::min(k + 2, last)];
    double best_t = ts[k];
    double best_v = f(best_t, false);
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1, false);
    double f2 = f(x2, false);
    const double floor = 1e-6 * std::max(std::abs(ts[k]), span * 1e-3);
    while ((b - a) > floor) {
      if (f1 >= f2) {
        b = x2, x2 = x1, f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = f(x1, false);
      } else {
        a = x1, x1 = x2, f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = f(x2, false);
      }
    }
    const double tm = (a + b) / 2.0;
    const double fm = f(tm, false);
    if (fm > best_v) best_t = tm, best_v = fm;
    if (!have || best_v > out.value || (best_v == out.value && best_t < out.t)) {
      out.t = best_t;
      out.value = best_v;
      have = true;
    }
  }
  return out;
}

}  // namespace

MaxMagic max_magic(const JCMagicEvaluator& evaluator, double period, double t_begin, double t_end) {
  MaxMagic out = maximize([&](double t, bool coarse) { return evaluator.magic(t, coarse); }, period, t_begin, t_end);
  out.calibration = evaluator.calibration();
  return out;
}

MaxMagic max_magic(const JCInitial& initial, const JCParams& params, double t_begin, double t_end, double p,
                   OrderingParams orderings, QuadratureSpec spec) {
  if (!(t_end > t_begin)) throw DomainError("max-magic window must be a nonempty interval");
  const JCMagicEvaluator ev(initial, params, p, orderings, spec, probes(t_begin, t_end));
  return max_magic(ev, rabi_period(initial, params), t_begin, t_end);
}

MaxMagic max_mutual_magic(const JCInitial& initial, const JCParams& params, double t_begin, double t_end,
                          QuadratureSpec spec) {
  if (!(t_end > t_begin)) throw DomainError("max-magic window must be a nonempty interval");
  const JCMagicEvaluator ev(initial, params, 1.0, {}, spec, probes(t_begin, t_end));
  MaxMagic out = maximize([&](double t, bool coarse) { return ev.mutual(t, coarse).value; }, rabi_period(initial, params), t_begin, t_end);
  out.calibration = ev.calibration();
  return out;
}

BlochScan bloch_scan(const std::vector<double>& thetas, const std::vector<double>& phis, const JCParams& params,
                     double t_begin, double t_end, double p, OrderingParams orderings, QuadratureSpec spec) {
  if (thetas.empty() || phis.empty()) throw DomainError("Bloch grid must not be empty");
  FockVector vacuum;
  vacuum.amplitudes = VectorXc::Zero(1);
  vacuum.amplitudes(0) = 1.0;
  // |e>|0> reaches the largest support and the strongest features.
  const JCMagicEvaluator probe(JCInitial::bloch(vacuum, std::numbers::pi, 0.0), params, p, orderings, spec,
                               probes(t_begin, t_end));
  BlochScan out;
  out.thetas = thetas;
  out.phis = phis;
  out.grid = probe.grid();
  out.max_magic.resize(static_cast<Eigen::Index>(thetas.size()), static_cast<Eigen::Index>(phis.size()));
  out.t_star.resizeLike(out.max_magic);
  const double period = 2.0 * std::numbers::pi / params.rabi(1);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (std::size_t j = 0; j < phis.size(); ++j) {
      const JCMagicEvaluator ev = probe.rebind(JCInitial::bloch(vacuum, thetas[i], phis[j]));
      const MaxMagic m = max_magic(ev, period, t_begin, t_end);
      out.max_magic(i, j) = m.value;
      out.t_star(i, j) = m.t;
    }
  }
  return out;
}

MutualTimeseries mutual_magic_timeseries(const JCInitial& initial, const std::vector<double>& times,
                                         const JCParams& params, QuadratureSpec spec) {
  if (times.empty()) throw DomainError("time grid must not be empty");
  const auto [lo, hi] = std::minmax_element(times.begin(), times.end());
  const JCMagicEvaluator ev(initial, params, 1.0, {}, spec, probes(*lo, *hi));
  MutualTimeseries out;
  out.calibration = ev.calibration();
  out.max = -std::numeric_limits<double>::infinity();
  for (double t : times) {
    const MutualMagic m = ev.mutual(t);
    out.points.push_back({t, m});
    if (m.value > out.max) {
      out.max = m.value;
      out.argmax = t;
    }
  }
  return out;
}

LogFit log_fit(const std::vector<int>& ns, const std::vector<double>& values) {
  if (ns.size() != values.size()) throw DomainError("log_fit needs one value per n");
  if (ns.size() < 3) throw DomainError("log_fit needs at least 3 points");
  for (int n : ns) {
    if (n < 1) throw DomainError("log_fit needs n >= 1");
  }
  if (std::all_of(ns.begin(), ns.end(), [&](int n) { return n == ns.front(); })) {
    throw DegenerateDesignError("log_fit design is degenerate: all n are equal");
  }
  const Eigen::Index k = static_cast<Eigen::Index>(ns.size());
  Matrix<double> design(k, 2);
  Vector<double> y(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    design(i, 0) = std::log(static_cast<double>(ns[i]));
    design(i, 1) = 1.0;
    y(i) = values[i];
  }
  const Vector<double> coef = design.colPivHouseholderQr().solve(y);
  const double rms = std::sqrt((design * coef - y).squaredNorm() / k);
  return {coef(0), coef(1), rms};
}

std::vector<std::size_t> local_maxima(const std::vector<double>& values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] > values[i - 1] && values[i] > values[i + 1]) out.push_back(i);
  }
  return out;
}

}  // namespace hybrid_magic
