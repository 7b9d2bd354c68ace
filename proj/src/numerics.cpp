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

#include "hybrid_magic/numerics.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace hybrid_magic {

void OrderingParams::validate() const {
  if (!(std::abs(r) < 1.0)) {
    throw OrderingError("bosonic ordering r must satisfy |r| < 1, got " + std::to_string(r));
  }
  if (!std::isfinite(s)) throw OrderingError("fermionic ordering s must be finite");
}

double lp_prefactor(double p) {
  if (!(p > 0.0) || p == 2.0) {
    throw DomainError("p must be positive and different from 2, got " + std::to_string(p));
  }
  return 1.0 / (1.0 - p / 2.0);
}

Complex parse_complex(const std::string& text) {
  auto fail = [&]() -> Complex { throw DomainError("cannot parse complex number '" + text + "'"); };
  if (text.empty()) return fail();
  const auto comma = text.find(',');
  std::size_t used = 0;
  try {
    if (comma != std::string::npos) {
      const double re = std::stod(text.substr(0, comma), &used);
      if (used != comma) return fail();
      const std::string tail = text.substr(comma + 1);
      const double im = std::stod(tail, &used);
      if (used != tail.size()) return fail();
      return {re, im};
    }
    if (text.back() != 'i') {
      const double re = std::stod(text, &used);
      if (used != text.size()) return fail();
      return {re, 0.0};
    }
    const std::string body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
      if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
        split = i;
        break;
      }
    }
    auto imag_of = [&](const std::string& s) -> double {
      if (s.empty() || s == "+") return 1.0;
      if (s == "-") return -1.0;
      std::size_t u = 0;
      const double v = std::stod(s, &u);
      if (u != s.size()) fail();
      return v;
    };
    if (split == std::string::npos) return {0.0, imag_of(body)};
    const std::string re_part = body.substr(0, split);
    const double re = std::stod(re_part, &used);
    if (used != re_part.size()) return fail();
    return {re, imag_of(body.substr(split))};
  } catch (const std::logic_error&) {
    return fail();
  }
}

void SeriesSpec::validate() const {
  if (!(term_threshold > 0.0)) throw DomainError("term_threshold must be positive");
  if (max_terms < 1) throw DomainError("max_terms must be >= 1");
}

void laguerre_assoc_row(int m_max, int k, double x, double* out) {
  if (m_max < 0 || k < 0 || m_max > 200 || k > 200) {
    throw DomainError("laguerre_assoc: m, k must lie in [0, 200]");
  }
  out[0] = 1.0;
  if (m_max == 0) return;
  out[1] = 1.0 + k - x;
  for (int m = 1; m < m_max; ++m) {
    out[m + 1] = ((2.0 * m + 1.0 + k - x) * out[m] - (m + k) * out[m - 1]) / (m + 1.0);
  }
}

double laguerre_assoc(int m, int k, double x) {
  if (m < 0 || k < 0 || m > 200 || k > 200) {
    throw DomainError("laguerre_assoc: m, k must lie in [0, 200]");
  }
  double row[201];
  laguerre_assoc_row(m, k, x, row);
  return row[m];
}

double log_factorial_ratio(int m, int n) {
  if (m < 0 || n < 0 || m > 1000000 || n > 1000000) {
    throw DomainError("log_factorial_ratio: arguments must lie in [0, 1e6]");
  }
  if (m == n) return 0.0;
  return std::lgamma(m + 1.0) - std::lgamma(n + 1.0);
}

double erf(double x) { return std::erf(x); }

// |sin x| = 2/pi - (4/pi) sum cos(2nx)/(4n^2-1)
// |cos x| = 2/pi - (4/pi) sum (-1)^n cos(2nx)/(4n^2-1)
// The odd-n terms cancel in the sum, leaving 4/pi - (8/pi) sum_k cos(4kx)/(16k^2-1).
SeriesResult gaussian_abs_trig_expect(double mean, double variance, const SeriesSpec& spec) {
  spec.validate();
  if (!(variance >= 0.0)) throw DomainError("variance must be nonnegative");
  SeriesResult res;
  if (variance == 0.0) {
    res.value = std::abs(std::sin(mean)) + std::abs(std::cos(mean));
    return res;
  }
  const double pi = std::numbers::pi;
  double sum = 0.0;
  res.converged = false;
  for (int k = 1; k <= spec.max_terms; ++k) {
    const double kk = static_cast<double>(k);
    const double damp = std::exp(-8.0 * kk * kk * variance);
    const double bound = damp / (16.0 * kk * kk - 1.0);
    sum += std::cos(4.0 * kk * mean) * bound;
    res.terms = k;
    if (bound < spec.term_threshold) {
      res.converged = true;
      break;
    }
  }
  res.value = 4.0 / pi - 8.0 / pi * sum;
  return res;
}

double cd_power_series_tail(double abs_alpha, const SeriesSpec& spec) {
  spec.validate();
  if (!(abs_alpha >= 0.0)) throw DomainError("abs_alpha must be nonnegative");
  if (abs_alpha == 0.0) return (4.0 - std::numbers::pi) / 8.0;
  const double a2 = abs_alpha * abs_alpha;
  double sum = 0.0;
  for (int n = 1; n <= spec.max_terms; ++n) {
    const double nn = static_cast<double>(n);
    const double term = std::exp(-8.0 * nn * nn * a2) / (16.0 * nn * nn - 1.0);
    sum += term;
    if (term < spec.term_threshold) break;
  }
  return sum;
}

}  // namespace hybrid_magic
