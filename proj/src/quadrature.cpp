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

#include "hybrid_magic/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

namespace hybrid_magic {

void QuadratureSpec::validate() const {
  if (!(half_width > 0.0)) throw DomainError("quadrature half_width must be positive");
  if (points_per_axis < 16) throw DomainError("quadrature points_per_axis must be >= 16");
  if (!(refine_tolerance > 0.0)) throw DomainError("quadrature refine_tolerance must be positive");
  if (max_refinements < 1) throw DomainError("quadrature max_refinements must be >= 1");
}

double auto_half_width(double beta_max, int n_max, double r) {
  return beta_max + std::sqrt(n_max + 1.0) + 4.0 * std::sqrt((1.0 - r) / 2.0);
}

double PhaseGrid::weight(int i, int j) const {
  const double h = step();
  double w = h * h / std::numbers::pi;
  if (i == 0 || i == n - 1) w *= 0.5;
  if (j == 0 || j == n - 1) w *= 0.5;
  return w;
}

QuadratureResult integrate_refined(const QuadratureSpec& spec,
                                   const std::function<double(const PhaseGrid&)>& level) {
  spec.validate();
  QuadratureResult res;
  PhaseGrid grid{spec.half_width, spec.points_per_axis};
  double prev = level(grid);
  res.value = prev;
  res.points_per_axis = grid.n;
  for (int k = 1; k <= spec.max_refinements; ++k) {
    grid.n = 2 * (grid.n - 1) + 1;
    const double cur = level(grid);
    res.refinements = k;
    res.points_per_axis = grid.n;
    res.value = cur;
    res.relative_change = std::abs(cur - prev) / std::max(std::abs(cur), 1e-14);
    if (res.relative_change < spec.refine_tolerance) {
      res.converged = true;
      break;
    }
    prev = cur;
  }
  return res;
}

QuadratureResult integrate_phase_space(const std::function<double(Complex)>& f,
                                       const QuadratureSpec& spec) {
  return integrate_refined(spec, [&](const PhaseGrid& g) {
    const long long total = g.size();
    const long long chunk = 4096;
    std::vector<double> partial((total + chunk - 1) / chunk, 0.0);
    parallel_chunks(total, chunk, [&](long long c, long long b, long long e) {
      double acc = 0.0;
      for (long long k = b; k < e; ++k) {
        acc += g.weight(static_cast<int>(k % g.n), static_cast<int>(k / g.n)) * f(g.node(k));
      }
      partial[c] = acc;
    });
    double sum = 0.0;
    for (double v : partial) sum += v;
    return sum;
  });
}

double weighted_abs_pow(const double* x, const double* mult, int q, double p) {
  double acc = 0.0;
  if (p == 1.0) {
    for (int i = 0; i < q; ++i) acc += mult[i] * std::abs(x[i]);
  } else if (p == 2.0) {
    for (int i = 0; i < q; ++i) acc += mult[i] * x[i] * x[i];
  } else if (p == 4.0) {
    for (int i = 0; i < q; ++i) {
      const double s = x[i] * x[i];
      acc += mult[i] * s * s;
    }
  } else {
    for (int i = 0; i < q; ++i) acc += mult[i] * std::pow(std::abs(x[i]), p);
  }
  return acc;
}

QuadratureResult integrate_lp_fields(const std::function<void(Complex, double*)>& f, int q,
                                     const Vector<double>& mult, double p,
                                     const QuadratureSpec& spec) {
  if (mult.size() != q) throw DomainError("multiplicity vector must have one entry per field");
  return integrate_refined(spec, [&](const PhaseGrid& g) {
    const long long total = g.size();
    const long long chunk = 4096;
    std::vector<double> partial((total + chunk - 1) / chunk, 0.0);
    parallel_chunks(total, chunk, [&](long long c, long long b, long long e) {
      std::vector<double> vals(q);
      double acc = 0.0;
      for (long long k = b; k < e; ++k) {
        f(g.node(k), vals.data());
        acc += g.weight(static_cast<int>(k % g.n), static_cast<int>(k / g.n)) *
               weighted_abs_pow(vals.data(), mult.data(), q, p);
      }
      partial[c] = acc;
    });
    double sum = 0.0;
    for (double v : partial) sum += v;
    return sum;
  });
}

int worker_count() {
  if (const char* env = std::getenv("HYBRID_MAGIC_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_chunks(long long n, long long chunk,
                     const std::function<void(long long, long long, long long)>& fn) {
  if (n <= 0) return;
  const long long chunks = (n + chunk - 1) / chunk;
  const int workers = static_cast<int>(std::min<long long>(worker_count(), chunks));
  auto run_chunk = [&](long long c) { fn(c, c * chunk, std::min(n, (c + 1) * chunk)); };
  if (workers <= 1) {
    for (long long c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }
  std::atomic<long long> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (long long c = next++; c < chunks; c = next++) run_chunk(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = chunks;
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hybrid_magic
