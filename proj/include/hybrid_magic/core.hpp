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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hybrid_magic {

using Complex = std::complex<double>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXc = Vector<Complex>;
using MatrixXc = Matrix<Complex>;

// Base of every error raised by the library. The CLI turns these into
// machine-readable error records keyed by kind().
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "error"; }
};

#define HYBRID_MAGIC_ERROR(Name, Kind)                          \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what) : Error(what) {}     \
    const char* kind() const noexcept override { return Kind; } \
  };

HYBRID_MAGIC_ERROR(DomainError, "domain")
HYBRID_MAGIC_ERROR(OrderingError, "ordering")
HYBRID_MAGIC_ERROR(CutoffError, "cutoff")
HYBRID_MAGIC_ERROR(RealityError, "reality")
HYBRID_MAGIC_ERROR(ConvergenceError, "convergence")
HYBRID_MAGIC_ERROR(StateError, "state")
HYBRID_MAGIC_ERROR(UnsupportedGateError, "unsupported_gate")
HYBRID_MAGIC_ERROR(DegenerateDesignError, "degenerate_design")

#undef HYBRID_MAGIC_ERROR

// Bosonic (r) and fermionic (s) ordering parameters; r = s = 0 is Weyl.
struct OrderingParams {
  double r = 0.0;
  double s = 0.0;

  // Throws OrderingError unless |r| < 1.
  void validate() const;
};

// Parses "1.5", "-2i", "1+0.5i", "0.3-1e-2i" and "re,im".
Complex parse_complex(const std::string& text);

// 1 / (1 - p/2), the prefactor shared by every L_p magic. Rejects p <= 0 and
// p = 2.
double lp_prefactor(double p);

}  // namespace hybrid_magic
