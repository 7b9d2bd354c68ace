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

#include "hybrid_magic/fock.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "hybrid_magic/numerics.hpp"
#include "hybrid_magic/overlap_basis.hpp"

namespace hybrid_magic {

void validate_density(const MatrixXc& rho, const char* what) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw StateError(std::string(what) + " must be a nonempty square matrix");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw StateError(std::string(what) + " is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-10) {
    throw StateError(std::string(what) + " does not have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8) {
    throw StateError(std::string(what) + " is not positive semidefinite");
  }
}

StateSpec StateSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw DomainError("state spec must look like kind:value, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string value = text.substr(colon + 1);
  if (kind == "fock") {
    std::size_t used = 0;
    int n = -1;
    try {
      n = std::stoi(value, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used != value.size() || n < 0) throw DomainError("fock level must be a nonnegative integer");
    return fock(n);
  }
  if (kind == "coherent") return coherent(parse_complex(value));
  if (kind == "cat") return cat(parse_complex(value));
  throw DomainError("unknown state kind '" + kind + "'");
}

std::string StateSpec::str() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
    case Kind::fock:
      os << "fock:" << n;
      break;
    case Kind::coherent:
      os << "coherent:" << beta.real() << "," << beta.imag();
      break;
    case Kind::cat:
      os << "cat:" << beta.real() << "," << beta.imag();
      break;
  }
  return os.str();
}

int auto_cutoff(const StateSpec& spec) {
  if (spec.kind == StateSpec::Kind::fock) return std::max(15, spec.n + 1);
  const double b = std::abs(spec.beta);
  return std::max(15, static_cast<int>(std::ceil(b * b + 7.0 * b + 10.0)));
}

namespace {

// Untruncated amplitude of the state at level n, up to the global normalization
// returned by norm_sq().
struct AmplitudeStream {
  const StateSpec& spec;
  Complex coherent{1.0, 0.0};  // e^{-|b|^2/2} b^n / sqrt(n!)
  int n = 0;

  explicit AmplitudeStream(const StateSpec& s) : spec(s), coherent(std::exp(-0.5 * std::norm(s.beta))) {}

  Complex value() const {
    switch (spec.kind) {
      case StateSpec::Kind::fock:
        return n == spec.n ? Complex(1.0) : Complex(0.0);
      case StateSpec::Kind::coherent:
        return coherent;
      case StateSpec::Kind::cat:
        return (n % 2 == 0) ? 2.0 * coherent : Complex(0.0);
    }
    return 0.0;
  }
  void advance() {
    ++n;
    coherent *= spec.beta / std::sqrt(static_cast<double>(n));
  }
  double norm_sq() const {
    if (spec.kind == StateSpec::Kind::cat) return 2.0 * (1.0 + std::exp(-2.0 * std::norm(spec.beta)));
    return 1.0;
  }
};

}  // namespace

double tail_weight(const StateSpec& spec, int d_max) {
  if (spec.kind == StateSpec::Kind::fock) return spec.n >= d_max ? 1.0 : 0.0;
  AmplitudeStream s(spec);
  while (s.n < d_max) s.advance();
  const double b2 = std::norm(spec.beta);
  double tail = 0.0;
  for (int guard = 0; guard < 100000; ++guard) {
    const double w = std::norm(s.value());
    tail += w;
    if (s.n > b2 + 10 && std::norm(s.coherent) < 1e-40 * std::max(tail, 1e-300)) break;
    if (s.n > b2 + 10 && std::norm(s.coherent) < 1e-300) break;
    s.advance();
  }
  return tail / s.norm_sq();
}

FockVector make_state(const StateSpec& spec, int d_max, double tail_tolerance) {
  if (d_max <= 0) d_max = auto_cutoff(spec);
  if ((spec.kind == StateSpec::Kind::fock && spec.n < 0)) throw DomainError("fock level must be >= 0");
  const double tail = tail_weight(spec, d_max);
  if (tail >= tail_tolerance) {
    std::ostringstream os;
    os << "cutoff d_max=" << d_max << " leaves tail weight " << tail << " for " << spec.str();
    throw CutoffError(os.str());
  }
  FockVector psi;
  psi.amplitudes.resize(d_max);
  AmplitudeStream s(spec);
  for (int n = 0; n < d_max; ++n, s.advance()) psi.amplitudes(n) = s.value();
  psi.amplitudes.normalize();
  return psi;
}

Complex phase_point_element(int m, int n, Complex alpha, double r) {
  OrderingParams{r, 0.0}.validate();
  if (m < 0 || n < 0) throw DomainError("Fock indices must be nonnegative");
  if (m > n) return std::conj(phase_point_element(n, m, alpha, r));
  const int k = n - m;
  const double a2 = std::norm(alpha);
  const double mag = std::pow((r + 1.0) / (r - 1.0), m) * std::exp(0.5 * log_factorial_ratio(m, n)) *
                     std::pow(2.0 / (1.0 - r), k + 1) * std::exp(-2.0 * a2 / (1.0 - r)) *
                     laguerre_assoc(m, k, 4.0 * a2 / (1.0 - r * r));
  Complex power(1.0, 0.0);
  for (int j = 0; j < k; ++j) power *= std::conj(alpha);
  return mag * power;
}

MatrixXc phase_point_matrix(Complex alpha, double r, int d_max) {
  std::vector<std::pair<int, int>> support;
  for (int m = 0; m < d_max; ++m) {
    for (int n = m; n < d_max; ++n) support.emplace_back(m, n);
  }
  const PhasePointBasis basis(r, support);
  std::vector<double> vals(basis.columns());
  basis.evaluate(alpha, vals.data());
  MatrixXc out(d_max, d_max);
  int col = 0;
  for (auto [m, n] : support) {
    if (m == n) {
      out(m, m) = vals[col++];
    } else {
      out(m, n) = Complex(vals[col], vals[col + 1]);
      out(n, m) = std::conj(out(m, n));
      col += 2;
    }
  }
  return out;
}

MatrixXc annihilation_matrix(int d_max) {
  MatrixXc a = MatrixXc::Zero(d_max, d_max);
  for (int n = 1; n < d_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

MatrixXc displacement_matrix(Complex alpha, int d_max) {
  const MatrixXc a = annihilation_matrix(d_max);
  const MatrixXc gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return gen.exp();
}

MatrixXc phase_point_matrix_oracle(Complex alpha, int d_max) {
  const double b = std::abs(alpha);
  const int pad = d_max + static_cast<int>(std::ceil(b * b + 10.0 * b + 20.0));
  const MatrixXc d = displacement_matrix(alpha, pad);
  Vector<Complex> parity(pad);
  for (int n = 0; n < pad; ++n) parity(n) = (n % 2 == 0) ? 2.0 : -2.0;
  const MatrixXc full = d * parity.asDiagonal() * d.adjoint();
  return full.topLeftCorner(d_max, d_max);
}

double bosonic_wigner(const MatrixXc& rho, Complex alpha, double r) {
  OrderingParams{r, 0.0}.validate();
  const int d = static_cast<int>(rho.rows());
  Complex acc = 0.0;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      if (rho(n, m) != Complex(0.0)) acc += rho(n, m) * phase_point_element(m, n, alpha, r);
    }
  }
  if (std::abs(acc.imag()) > 1e-6) throw RealityError("bosonic Wigner function has an imaginary part");
  return acc.real();
}

double bosonic_wigner(const FockVector& psi, Complex alpha, double r) {
  return bosonic_wigner(psi.density(), alpha, r);
}

int occupied_extent(const MatrixXc& rho) {
  int n_max = 0;
  for (int n = 0; n < rho.rows(); ++n) {
    if (std::abs(rho(n, n)) > 1e-12) n_max = n;
  }
  return n_max;
}

MagicResult mana_p(const MatrixXc& rho, double p, double r, QuadratureSpec spec) {
  const double pref = lp_prefactor(p);
  OrderingParams{r, 0.0}.validate();
  validate_density(rho, "bosonic density matrix");
  if (spec.half_width <= 0.0) spec.half_width = auto_half_width(0.0, occupied_extent(rho), r);
  const std::vector<MatrixXc> coeffs{rho};
  const PhasePointBasis basis(r, PhasePointBasis::support_of(coeffs));
  const Vector<double> mult = Vector<double>::Ones(1);
  MagicResult out;
  out.quadrature = lp_sum_refined(basis, basis.coefficients(coeffs), mult, p, spec);
  out.value = pref * std::log(out.quadrature.value);
  return out;
}

MagicResult mana_p(const FockVector& psi, double p, double r, QuadratureSpec spec) {
  return mana_p(psi.density(), p, r, spec);
}

}  // namespace hybrid_magic
