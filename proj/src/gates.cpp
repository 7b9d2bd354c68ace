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

#include "hybrid_magic/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

namespace hybrid_magic {

namespace {

constexpr Complex kI{0.0, 1.0};

MatrixXc kron(const MatrixXc& boson, const MatrixXc& fermion) {
  const Eigen::Index d = boson.rows();
  const Eigen::Index f = fermion.rows();
  MatrixXc out = MatrixXc::Zero(d * f, d * f);
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = 0; m < d; ++m) {
      if (boson(n, m) == Complex(0.0)) continue;
      out.block(n * f, m * f, f, f) = boson(n, m) * fermion;
    }
  }
  return out;
}

MatrixXc fermion_lowering(int k) {
  return (majorana_generator(2 * k - 1, 2) + kI * majorana_generator(2 * k, 2)) / 2.0;
}

// Generator K of exp(K) on d Fock levels.
MatrixXc generator(const GateSpec& spec, int d) {
  const MatrixXc a = annihilation_matrix(d);
  const MatrixXc id_b = MatrixXc::Identity(d, d);
  const MatrixXc cg = fermion_lowering_g();
  const MatrixXc ce = fermion_lowering_e();
  const MatrixXc flip_down = cg.adjoint() * ce;  // |e> -> |g>
  const MatrixXc flip_up = ce.adjoint() * cg;
  const MatrixXc disp = spec.alpha * a.adjoint() - std::conj(spec.alpha) * a;
  switch (spec.kind) {
    case GateKind::displacement:
      return kron(disp, MatrixXc::Identity(4, 4));
    case GateKind::conditional_displacement: {
      const MatrixXc sz = ce.adjoint() * ce - cg.adjoint() * cg;
      return kron(disp, sz);
    }
    case GateKind::rotation: {
      const MatrixXc h = flip_up * std::polar(1.0, -spec.phi) + flip_down * std::polar(1.0, spec.phi);
      return kron(id_b, -kI * spec.theta / 2.0 * h);
    }
    case GateKind::sqr: {
      MatrixXc out = MatrixXc::Zero(4 * d, 4 * d);
      for (int n = 0; n < d && n < static_cast<int>(spec.thetas.size()); ++n) {
        const MatrixXc h = flip_up * std::polar(1.0, -spec.phis[n]) + flip_down * std::polar(1.0, spec.phis[n]);
        out.block(4 * n, 4 * n, 4, 4) = -kI * spec.thetas[n] / 2.0 * h;
      }
      return out;
    }
    case GateKind::jc: {
      const MatrixXc h = std::polar(1.0, spec.phi) * kron(a.adjoint(), flip_down);
      return -kI * spec.theta * (h + MatrixXc(h.adjoint()));
    }
    case GateKind::ajc: {
      const MatrixXc h = std::polar(1.0, spec.phi) * kron(a.adjoint(), flip_up);
      return -kI * spec.theta * (h + MatrixXc(h.adjoint()));
    }
    case GateKind::beam_splitter:
      break;
  }
  throw UnsupportedGateError("the beam splitter needs two bosonic modes");
}

int padding(const GateSpec& spec) {
  const double b = std::abs(spec.alpha);
  return static_cast<int>(std::ceil(b * b + 10.0 * b + 20.0));
}

bool conserves_photons(GateKind kind) {
  return kind == GateKind::rotation || kind == GateKind::sqr;
}

VectorXc gaussian_padded(const GaussianStateParams& g, int size) {
  const MatrixXc a = annihilation_matrix(size);
  const Complex zeta = std::polar(g.r_sq, g.phi_sq);
  const MatrixXc sq = ((std::conj(zeta) * a * a - zeta * a.adjoint() * a.adjoint()) / 2.0).exp();
  const MatrixXc disp = (g.delta * a.adjoint() - std::conj(g.delta) * a).exp();
  return disp * sq.col(0);
}

int gaussian_padding(const GaussianStateParams& g) {
  const double b = std::abs(g.delta);
  return static_cast<int>(std::ceil(b * b + 10.0 * b + 30.0 + 80.0 * g.r_sq));
}

void check_gaussian(const GaussianStateParams& g) {
  if (!(g.r_sq >= 0.0) || !std::isfinite(g.r_sq)) throw DomainError("squeezing must be finite and nonnegative");
  if (!std::isfinite(g.delta.real()) || !std::isfinite(g.delta.imag()) || !std::isfinite(g.phi_sq)) {
    throw DomainError("Gaussian state parameters must be finite");
  }
}

}  // namespace

GateKind parse_gate_kind(const std::string& name) {
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::toupper(c); });
  if (n == "D") return GateKind::displacement;
  if (n == "R") return GateKind::rotation;
  if (n == "SQR") return GateKind::sqr;
  if (n == "JC") return GateKind::jc;
  if (n == "AJC") return GateKind::ajc;
  if (n == "CD") return GateKind::conditional_displacement;
  if (n == "BS") return GateKind::beam_splitter;
  throw DomainError("unknown gate '" + name + "'");
}

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::displacement:
      return "D";
    case GateKind::rotation:
      return "R";
    case GateKind::sqr:
      return "SQR";
    case GateKind::jc:
      return "JC";
    case GateKind::ajc:
      return "AJC";
    case GateKind::conditional_displacement:
      return "CD";
    case GateKind::beam_splitter:
      return "BS";
  }
  return "";
}

void GateSpec::validate() const {
  if (kind == GateKind::beam_splitter) throw UnsupportedGateError("the beam splitter needs two bosonic modes");
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()) || !std::isfinite(theta) ||
      !std::isfinite(phi)) {
    throw DomainError("gate parameters must be finite");
  }
  if (kind == GateKind::sqr) {
    if (thetas.empty() || thetas.size() != phis.size()) {
      throw DomainError("SQR needs equally many angles theta_n and phi_n");
    }
    if (d_max > 0 && static_cast<int>(thetas.size()) > d_max) throw DomainError("SQR has more angles than Fock levels");
  }
  if (d_max < 0) throw DomainError("negative Fock cutoff");
}

std::string HybridGate::name() const {
  char buf[160];
  switch (spec.kind) {
    case GateKind::displacement:
    case GateKind::conditional_displacement:
      std::snprintf(buf, sizeof buf, "%s(%.6g%+.6gi)", to_string(spec.kind).c_str(), spec.alpha.real(),
                    spec.alpha.imag());
      break;
    case GateKind::sqr:
      std::snprintf(buf, sizeof buf, "SQR[%zu]", spec.thetas.size());
      break;
    default:
      std::snprintf(buf, sizeof buf, "%s(%.6g,%.6g)", to_string(spec.kind).c_str(), spec.theta, spec.phi);
  }
  return buf;
}

HybridState HybridGate::apply(const HybridState& psi) const {
  if (psi.amplitudes.cols() != 4) throw StateError("gates act on states with two fermionic modes");
  if (psi.d_max() > d_max) throw CutoffError("state has more Fock levels than the gate");
  VectorXc flat = VectorXc::Zero(4 * d_max);
  for (int n = 0; n < psi.d_max(); ++n) {
    for (int f = 0; f < 4; ++f) flat(4 * n + f) = psi.amplitudes(n, f);
  }
  const VectorXc out = matrix * flat;
  MatrixXc amps(d_max, 4);
  for (int n = 0; n < d_max; ++n) {
    for (int f = 0; f < 4; ++f) amps(n, f) = out(4 * n + f);
  }
  amps /= amps.norm();
  return HybridState(amps);
}

MatrixXc fermion_lowering_g() { return fermion_lowering(1); }
MatrixXc fermion_lowering_e() { return fermion_lowering(2); }

HybridGate make_gate(const GateSpec& spec) {
  spec.validate();
  HybridGate gate;
  gate.spec = spec;
  int d = spec.d_max;
  if (d <= 0) {
    switch (spec.kind) {
      case GateKind::displacement:
      case GateKind::conditional_displacement:
        d = auto_cutoff(StateSpec::coherent(spec.alpha));
        break;
      case GateKind::sqr:
        d = std::max(15, static_cast<int>(spec.thetas.size()));
        break;
      default:
        d = 15;
    }
  }
  gate.d_max = d;
  gate.matrix = generator(spec, d).exp();
  if (!conserves_photons(spec.kind)) {
    const int big = d + padding(spec);
    const MatrixXc full = generator(spec, big).exp();
    for (int f = 0; f < 4; ++f) {
      const double kept = full.col(f).head(4 * d).squaredNorm();
      gate.leakage = std::max(gate.leakage, std::max(0.0, 1.0 - kept));
    }
  }
  return gate;
}

int gaussian_cutoff(const GaussianStateParams& params, double tail_tolerance) {
  check_gaussian(params);
  const VectorXc psi = gaussian_padded(params, 15 + gaussian_padding(params));
  double tail = 0.0;
  int d = static_cast<int>(psi.size());
  while (d > 15 && tail + std::norm(psi(d - 1)) < tail_tolerance) {
    tail += std::norm(psi(d - 1));
    --d;
  }
  return d;
}

FockVector gaussian_state(const GaussianStateParams& params, int d_max, double tail_tolerance) {
  check_gaussian(params);
  if (d_max <= 0) d_max = gaussian_cutoff(params, tail_tolerance);
  const VectorXc psi = gaussian_padded(params, d_max + gaussian_padding(params));
  const double tail = psi.tail(psi.size() - d_max).squaredNorm();
  if (tail >= tail_tolerance) throw CutoffError("Gaussian state has weight beyond the Fock cutoff");
  FockVector out;
  out.amplitudes = psi.head(d_max) / psi.head(d_max).norm();
  return out;
}

const std::vector<MajoranaStabilizer>& majorana_stabilizer_states() {
  static const std::vector<MajoranaStabilizer> states = [] {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex phases[4] = {1.0, -1.0, kI, -kI};
    const char* names[4] = {"+", "-", "+i", "-i"};
    std::vector<std::pair<std::string, VectorXc>> raw;
    for (int f = 0; f < 4; ++f) {
      VectorXc v = VectorXc::Zero(4);
      v(f) = 1.0;
      raw.emplace_back(std::string("|") + char('0' + f / 2) + char('0' + f % 2) + ">", v);
    }
    for (int k = 0; k < 4; ++k) {
      VectorXc v = VectorXc::Zero(4);
      v(0) = h;
      v(3) = h * phases[k];
      raw.emplace_back(std::string("(|00>") + names[k] + "|11>)/sqrt2", v);
    }
    for (int k = 0; k < 4; ++k) {
      VectorXc v = VectorXc::Zero(4);
      v(1) = h;
      v(2) = h * phases[k];
      raw.emplace_back(std::string("(|01>") + names[k] + "|10>)/sqrt2", v);
    }
    // (i g1 g2, i g3 g4), (i g1 g3, i g2 g4), (i g1 g4, i g2 g3)
    const std::array<std::array<unsigned, 2>, 3> pairs{{{3u, 12u}, {5u, 10u}, {9u, 6u}}};
    std::vector<MajoranaStabilizer> out;
    for (auto& [label, v] : raw) {
      bool found = false;
      for (const auto& pair : pairs) {
        std::array<int, 2> ev{};
        bool ok = true;
        for (int j = 0; j < 2; ++j) {
          const VectorXc w = string_matrix({2, pair[j]}) * v;
          const Complex lambda = v.dot(w);
          if ((w - lambda * v).norm() > 1e-12) ok = false;
          ev[j] = lambda.real() > 0 ? 1 : -1;
        }
        if (ok) {
          out.push_back({label, v, pair, ev});
          found = true;
          break;
        }
      }
      if (!found) throw StateError("stabilizer table is inconsistent");
    }
    return out;
  }();
  return states;
}

void StabilizerInput::validate() const {
  check_gaussian(gaussian);
  if (fermion < 0 || fermion >= 12) throw DomainError("stabilizer index must be in [0, 12)");
}

HybridState StabilizerInput::state(int d_max) const {
  validate();
  return HybridState::product(gaussian_state(gaussian, d_max), majorana_stabilizer_states()[fermion].state);
}

double cd_bosonic_kernel(Complex tau, const GaussianStateParams& gaussian) {
  const Complex x = tau - gaussian.delta;
  const Complex z = 2.0 * gaussian.mu() * x + 2.0 * gaussian.nu() * std::conj(x);
  return 2.0 * std::exp(-0.5 * std::norm(z));
}

std::array<std::array<Complex, 3>, 3> cd_fermionic_kernel(const MajoranaString& gamma, const VectorXc& phi) {
  if (gamma.modes != 2 || phi.size() != 4) throw DomainError("the CD kernels need two fermionic modes");
  const MatrixXc g = string_matrix(gamma);
  // Eigenvalue of n_e - n_g per occupation index.
  const int shift[4] = {0, 1, -1, 0};
  std::array<std::array<Complex, 3>, 3> out{};
  for (int f = 0; f < 4; ++f) {
    for (int h = 0; h < 4; ++h) out[shift[f] + 1][shift[h] + 1] += std::conj(phi(f)) * g(f, h) * phi(h);
  }
  return out;
}

namespace {

Complex cd_sum(Complex beta, Complex alpha, const GaussianStateParams& g,
               const std::array<std::array<Complex, 3>, 3>& f) {
  const double im = (alpha * std::conj(beta)).imag();
  Complex acc = 0.0;
  for (int m = -1; m <= 1; ++m) {
    for (int n = -1; n <= 1; ++n) {
      const Complex fv = f[m + 1][n + 1];
      if (fv == Complex(0.0)) continue;
      const Complex phase = std::polar(1.0, -2.0 * (m - n) * im);
      acc += phase * cd_bosonic_kernel(beta - 0.5 * (m + n) * alpha, g) * fv;
    }
  }
  return acc;
}

}  // namespace

Complex cd_expectation(Complex beta, const MajoranaString& gamma, Complex alpha, const StabilizerInput& input) {
  input.validate();
  return cd_sum(beta, alpha, input.gaussian, cd_fermionic_kernel(gamma, majorana_stabilizer_states()[input.fermion].state));
}

QuadratureResult cd_l1_sum(Complex alpha, const StabilizerInput& input, QuadratureSpec spec) {
  input.validate();
  const auto strings = MajoranaString::all(2);
  const VectorXc& phi = majorana_stabilizer_states()[input.fermion].state;
  std::vector<std::array<std::array<Complex, 3>, 3>> kernels;
  for (const auto& s : strings) kernels.push_back(cd_fermionic_kernel(s, phi));
  if (spec.half_width <= 0.0) {
    const double spread = std::exp(input.gaussian.r_sq);
    spec.half_width = std::abs(input.gaussian.delta) + std::abs(alpha) + spread * (1.0 + 4.0 * std::sqrt(0.5));
  }
  const Vector<double> mult = Vector<double>::Ones(16);
  const GaussianStateParams g = input.gaussian;
  return integrate_lp_fields(
      [&](Complex beta, double* v) {
        for (int k = 0; k < 16; ++k) v[k] = std::abs(cd_sum(beta, alpha, g, kernels[k]));
      },
      16, mult, 1.0, spec);
}

SeriesResult cd_odd_bell_bracket(Complex alpha, const GaussianStateParams& gaussian, const SeriesSpec& spec) {
  check_gaussian(gaussian);
  const double x = std::abs(gaussian.mu() * alpha + gaussian.nu() * std::conj(alpha));
  const double mean = 4.0 * (alpha * std::conj(gaussian.delta)).imag();
  SeriesResult e = gaussian_abs_trig_expect(mean, 4.0 * x * x, spec);
  e.value = 2.0 * (1.0 + erf(std::sqrt(2.0) * x) + e.value);
  return e;
}

double cd_power_closed(Complex alpha) {
  const double a = std::abs(alpha);
  const double pi = std::numbers::pi;
  // The series in exp(-32 n^2 |a|^2) is the tail helper evaluated at 2|a|.
  const double bracket = (1.0 + erf(std::sqrt(2.0) * a)) / 2.0 + 2.0 / pi - 4.0 / pi * cd_power_series_tail(2.0 * a);
  return 2.0 / 3.0 * std::log(bracket);
}

double cd_power_general(Complex alpha, const GaussianStateParams& gaussian, const SeriesSpec& spec) {
  const SeriesResult b = cd_odd_bell_bracket(alpha, gaussian, spec);
  if (!b.converged) throw ConvergenceError("Gaussian trigonometric series did not converge");
  return 2.0 / 3.0 * std::log(b.value / 4.0);
}

GaussianStateParams GaussianMeasure::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GaussianStateParams g;
  const double two_pi = 2.0 * std::numbers::pi;
  if (kind == Kind::displacement_disk || kind == Kind::disk_squeezing) {
    const double rad = max_displacement * std::sqrt(u(rng));
    g.delta = std::polar(rad, two_pi * u(rng));
  }
  if (kind == Kind::capped_squeezing || kind == Kind::disk_squeezing) {
    g.r_sq = max_squeezing * u(rng);
    g.phi_sq = two_pi * u(rng);
  }
  return g;
}

GaussianMeasure GaussianMeasure::parse(const std::string& name) {
  GaussianMeasure m;
  if (name == "vacuum") m.kind = Kind::dirac_vacuum;
  else if (name == "disk") m.kind = Kind::displacement_disk;
  else if (name == "squeezing") m.kind = Kind::capped_squeezing;
  else if (name == "disk-squeezing") m.kind = Kind::disk_squeezing;
  else throw DomainError("unknown Gaussian measure '" + name + "'");
  return m;
}

std::string GaussianMeasure::str() const {
  switch (kind) {
    case Kind::dirac_vacuum:
      return "vacuum";
    case Kind::displacement_disk:
      return "disk";
    case Kind::capped_squeezing:
      return "squeezing";
    case Kind::disk_squeezing:
      return "disk-squeezing";
  }
  return "";
}

MonteCarloEstimate monte_carlo_mean(const GaussianMeasure& measure,
                                    const std::function<double(const GaussianStateParams&)>& f, int n_samples,
                                    std::uint64_t seed) {
  if (n_samples < 1) throw DomainError("need at least one sample");
  if (!(measure.max_displacement >= 0.0) || !(measure.max_squeezing >= 0.0)) {
    throw DomainError("measure caps must be nonnegative");
  }
  MonteCarloEstimate est;
  if (measure.deterministic()) {
    est.mean = f(GaussianStateParams{});
    est.samples = 1;
    return est;
  }
  std::mt19937_64 rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double v = f(measure.sample(rng));
    sum += v;
    sum_sq += v * v;
  }
  const double n = n_samples;
  est.mean = sum / n;
  est.samples = n_samples;
  if (n_samples > 1) {
    const double var = std::max(0.0, (sum_sq - n * est.mean * est.mean) / (n - 1.0));
    est.std_error = std::sqrt(var / n);
  }
  return est;
}

std::vector<MagicResult> transformed_stabilizer_magic(const HybridGate& gate, const GaussianStateParams& gaussian,
                                                      QuadratureSpec spec) {
  check_gaussian(gaussian);
  int d = gaussian_cutoff(gaussian);
  if (gate.spec.kind == GateKind::displacement || gate.spec.kind == GateKind::conditional_displacement) {
    GaussianStateParams shifted = gaussian;
    shifted.delta = std::abs(gaussian.delta) + std::abs(gate.spec.alpha);
    d = gaussian_cutoff(shifted);
  } else if (gate.spec.kind == GateKind::jc || gate.spec.kind == GateKind::ajc) {
    d += 1;
  }
  const HybridGate g = d > gate.d_max ? make_gate([&] {
    GateSpec s = gate.spec;
    s.d_max = d;
    return s;
  }())
                                      : gate;
  const FockVector boson = gaussian_state(gaussian, g.d_max);
  std::vector<MagicResult> out;
  for (const auto& stab : majorana_stabilizer_states()) {
    const HybridState psi = g.apply(HybridState::product(boson, stab.state));
    out.push_back(hybrid_magic_p(psi, 1.0, OrderingParams{}, spec));
  }
  return out;
}

PowerEstimate power_numeric(const HybridGate& gate, const GaussianMeasure& measure, int n_samples,
                            QuadratureSpec spec, std::uint64_t seed) {
  PowerEstimate out;
  const MonteCarloEstimate mc = monte_carlo_mean(
      measure,
      [&](const GaussianStateParams& g) {
        double sum = 0.0;
        for (const MagicResult& m : transformed_stabilizer_magic(gate, g, spec)) {
          sum += m.value;
          out.converged = out.converged && m.converged();
          out.quadrature_change = std::max(out.quadrature_change, m.quadrature.relative_change);
        }
        return sum / 12.0;
      },
      n_samples, seed);
  out.mean = mc.mean;
  out.std_error = mc.std_error;
  out.samples = mc.samples;
  return out;
}

}  // namespace hybrid_magic
