// Copyright 2026 The thermal-jc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "thermal_jc/errors.hpp"
#include "thermal_jc/xstate.hpp"

namespace thermal_jc {

struct SearchBudget {
  int seeds_per_axis = 12;      // grid over (theta, phi, weight)
  int refine_iterations = 200;  // Nelder-Mead iterations per refinement pass
  int refine_passes = 24;       // restarts from the incumbent
  int refined_seeds = 4;        // best seeds taken into refinement
  double tolerance = 1e-6;      // pass-to-pass improvement regarded as converged
};

struct VariationalResult {
  double value = 0.0;  // doubled convention
  int passes_used = 0;
};

namespace detail {

inline double trace_norm(const Matrix4c& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

inline Matrix2c qubit_from_bloch(const Eigen::Vector3d& r) {
  return 0.5 * (pauli::identity() + r(0) * pauli::x() + r(1) * pauli::y() + r(2) * pauli::z());
}

// Unconstrained 3-vector mapped into the closed Bloch ball.
inline Eigen::Vector3d to_ball(const Eigen::Vector3d& v) {
  const double n = v.norm();
  return n > 1.0 ? Eigen::Vector3d(v / n) : v;
}

// Parameter vector layout: theta, phi, u (weight = (1 + sin u)/2), r0[3], r1[3].
using CqParams = Eigen::Matrix<double, 9, 1>;

inline Matrix4c classical_quantum_state(const CqParams& q) {
  const double theta = q(0);
  const double phi = q(1);
  const double p = 0.5 * (1.0 + std::sin(q(2)));
  Eigen::Vector2cd k0(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
  Eigen::Vector2cd k1(-std::polar(std::sin(theta / 2), -phi), std::cos(theta / 2));
  const Matrix2c proj0 = k0 * k0.adjoint();
  const Matrix2c proj1 = k1 * k1.adjoint();
  const Matrix2c r0 = qubit_from_bloch(to_ball(q.segment<3>(3)));
  const Matrix2c r1 = qubit_from_bloch(to_ball(q.segment<3>(6)));
  return p * kron(proj0, r0) + (1.0 - p) * kron(proj1, r1);
}

// Post-measurement conditional Bloch vector of B for outcome projector `proj` on A.
inline std::pair<double, Eigen::Vector3d> conditional_state(const Matrix4c& rho, const Matrix2c& proj) {
  const Matrix4c proj_a = kron(proj, pauli::identity());
  const double prob = (proj_a * rho).trace().real();
  Eigen::Vector3d r = Eigen::Vector3d::Zero();
  if (prob > 1e-12) {
    for (int j = 0; j < 3; ++j)
      r(j) = (proj_a * rho * kron(pauli::identity(), pauli::by_index(j))).trace().real() / prob;
  }
  return {prob, to_ball(r)};
}

template <class F>
std::pair<CqParams, double> nelder_mead(F&& f, const CqParams& start, double scale, int iterations) {
  constexpr int n = 9;
  std::array<CqParams, n + 1> simplex;
  std::array<double, n + 1> values;
  simplex[0] = start;
  for (int i = 0; i < n; ++i) {
    simplex[i + 1] = start;
    simplex[i + 1](i) += scale;
  }
  for (int i = 0; i <= n; ++i) values[i] = f(simplex[i]);

  std::array<int, n + 1> order;
  for (int it = 0; it < iterations; ++it) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int l, int r) { return values[l] < values[r]; });
    const int best = order[0];
    const int worst = order[n];
    const int second_worst = order[n - 1];

    CqParams centroid = CqParams::Zero();
    for (int i = 0; i < n; ++i) centroid += simplex[order[i]];
    centroid /= n;

    const CqParams reflected = centroid + (centroid - simplex[worst]);
    const double f_reflected = f(reflected);
    if (f_reflected < values[best]) {
      const CqParams expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < values[worst];
    const CqParams contracted = outside ? CqParams(centroid + 0.5 * (reflected - centroid))
                                        : CqParams(centroid + 0.5 * (simplex[worst] - centroid));
    const double f_contracted = f(contracted);
    if (f_contracted < std::min(f_reflected, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
      values[i] = f(simplex[i]);
    }
  }
  const auto best = std::min_element(values.begin(), values.end()) - values.begin();
  return {simplex[best], values[best]};
}

}  // namespace detail

/// Doubled trace-norm distance from `rho` to the nearest classical-quantum
/// state found by direct search. Every candidate is a feasible classical-quantum
/// state, so the result is an upper bound on the exact value.
///
/// Seeds: a grid over the measurement direction on A and the outcome weight,
/// with B's states set to the post-measurement conditionals. The best seeds are
/// then polished by restarted Nelder-Mead.
inline VariationalResult discord_1norm_variational(const DensityMatrix4& rho, const SearchBudget& budget = {}) {
  using detail::CqParams;
  const Matrix4c& m = rho.matrix();
  auto objective = [&](const CqParams& q) { return detail::trace_norm(m - detail::classical_quantum_state(q)); };

  const int k = budget.seeds_per_axis;
  std::vector<std::pair<double, CqParams>> seeds;
  seeds.reserve(static_cast<std::size_t>(k) * k * k);
  for (int i = 0; i < k; ++i) {
    const double theta = (i + 0.5) * std::numbers::pi / k;
    for (int j = 0; j < k; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / k;
      Eigen::Vector2cd k0(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
      Eigen::Vector2cd k1(-std::polar(std::sin(theta / 2), -phi), std::cos(theta / 2));
      const auto [p0, r0] = detail::conditional_state(m, k0 * k0.adjoint());
      const auto [p1, r1] = detail::conditional_state(m, k1 * k1.adjoint());
      (void)p1;
      for (int l = 0; l < k; ++l) {
        // The measured weight p0 is one of the seeds; the others probe around it.
        const double weight = l == 0 ? p0 : (l + 0.5) / (k + 1);
        CqParams q;
        q << theta, phi, std::asin(std::clamp(2.0 * weight - 1.0, -1.0, 1.0)), r0, r1;
        seeds.emplace_back(objective(q), q);
      }
    }
  }
  const auto take = std::min<std::size_t>(seeds.size(), std::max(1, budget.refined_seeds));
  std::partial_sort(seeds.begin(), seeds.begin() + take, seeds.end(),
                    [](const auto& l, const auto& r) { return l.first < r.first; });

  VariationalResult result;
  double best = seeds.front().first;
  for (std::size_t s = 0; s < take; ++s) {
    CqParams point = seeds[s].second;
    double value = seeds[s].first;
    double scale = 0.1;
    bool settled = false;
    int pass = 0;
    for (; pass < budget.refine_passes; ++pass) {
      auto [next, next_value] = detail::nelder_mead(objective, point, scale, budget.refine_iterations);
      const double gain = value - next_value;
      if (next_value < value) {
        point = next;
        value = next_value;
      }
      scale = std::max(1e-4, scale * 0.5);
      if (gain <= budget.tolerance) {
        settled = true;
        break;
      }
    }
    result.passes_used += pass + (settled ? 1 : 0);
    if (!settled && s == 0)
      throw ConvergenceError("discord_1norm_variational: refinement still improving when budget ran out");
    best = std::min(best, value);
  }
  result.value = best;  // trace-norm distance itself already equals the doubled discord
  return result;
}

}  // namespace thermal_jc
