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
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>

#include "thermal_jc/errors.hpp"
#include "thermal_jc/xstate.hpp"

namespace thermal_jc {

/// Mean photon numbers of the two thermal cavities and the two atom-cavity
/// couplings. Only the products g1*t and g2*t enter the dynamics.
struct ModelParams {
  double nbar1 = 0.0;
  double nbar2 = 0.0;
  double g1 = 1.0;
  double g2 = 1.0;

  void validate() const {
    if (!(nbar1 >= 0.0) || !(nbar2 >= 0.0) || !std::isfinite(nbar1) || !std::isfinite(nbar2))
      throw InvalidArgument("ModelParams: mean photon numbers must be finite and >= 0");
    if (!(g1 > 0.0) || !(g2 > 0.0) || !std::isfinite(g1) || !std::isfinite(g2))
      throw InvalidArgument("ModelParams: couplings must be finite and > 0");
  }

  ModelParams swapped() const { return {nbar2, nbar1, g2, g1}; }
};

inline constexpr double kDefaultEpsilon = 1e-13;
inline constexpr int kDefaultHardCap = 10000;

/// Where to cut the thermal photon-number series: either a per-mode tail
/// tolerance or explicit highest retained photon numbers.
struct TruncationSpec {
  double epsilon = kDefaultEpsilon;
  std::optional<int> order1;
  std::optional<int> order2;
  int hard_cap = kDefaultHardCap;

  static TruncationSpec with_epsilon(double eps) {
    TruncationSpec t;
    t.epsilon = eps;
    return t;
  }
  static TruncationSpec with_orders(int m1, int m2) {
    TruncationSpec t;
    t.order1 = m1;
    t.order2 = m2;
    return t;
  }
};

/// Occupation probability of Fock level n in a thermal state, nbar^n / (1+nbar)^(n+1).
inline double thermal_weight(double nbar, int n) {
  if (nbar == 0.0) return n == 0 ? 1.0 : 0.0;
  const double ratio = nbar / (1.0 + nbar);
  return std::pow(ratio, n) / (1.0 + nbar);
}

/// Total thermal weight above level M, (nbar/(1+nbar))^(M+1).
inline double thermal_tail(double nbar, int order) {
  if (nbar == 0.0) return 0.0;
  return std::pow(nbar / (1.0 + nbar), order + 1);
}

/// Smallest M whose neglected tail is at most epsilon.
inline int truncation_order(double nbar, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("truncation_order: epsilon must lie in (0,1)");
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw InvalidArgument("truncation_order: nbar must be finite and >= 0");
  if (nbar == 0.0) return 0;
  const double log_ratio = std::log(nbar) - std::log1p(nbar);
  const double guess = std::ceil(std::log(epsilon) / log_ratio) - 1.0;
  constexpr double kLimit = 1e9;
  std::int64_t order = static_cast<std::int64_t>(std::clamp(guess, 0.0, kLimit));
  if (order >= static_cast<std::int64_t>(kLimit)) return static_cast<int>(kLimit);
  // Correct the logarithmic estimate by direct evaluation of the tail.
  while (thermal_tail(nbar, static_cast<int>(order)) > epsilon) ++order;
  while (order > 0 && thermal_tail(nbar, static_cast<int>(order - 1)) <= epsilon) --order;
  return static_cast<int>(order);
}

struct ResolvedTruncation {
  int order1 = 0;
  int order2 = 0;
  double tail1 = 0.0;
  double tail2 = 0.0;
};

inline ResolvedTruncation resolve_truncation(const ModelParams& p, const TruncationSpec& tr) {
  ResolvedTruncation r;
  r.order1 = tr.order1 ? *tr.order1 : truncation_order(p.nbar1, tr.epsilon);
  r.order2 = tr.order2 ? *tr.order2 : truncation_order(p.nbar2, tr.epsilon);
  if (r.order1 < 0 || r.order2 < 0) throw InvalidArgument("TruncationSpec: orders must be >= 0");
  if (r.order1 > tr.hard_cap || r.order2 > tr.hard_cap) {
    std::ostringstream os;
    os << "thermal series needs " << std::max(r.order1, r.order2) << " terms per mode, above the cap of "
       << tr.hard_cap;
    throw ComputationError(os.str());
  }
  r.tail1 = thermal_tail(p.nbar1, r.order1);
  r.tail2 = thermal_tail(p.nbar2, r.order2);
  return r;
}

namespace detail {

// Thermally averaged single-mode factors; `plus` uses sqrt(m+1), `zero` uses sqrt(m).
struct ModeAverages {
  double cos2_plus = 0.0;
  double sin2_plus = 0.0;
  double cos2_zero = 0.0;
  double sin2_zero = 0.0;
  double cos_cos = 0.0;
};

inline ModeAverages mode_averages(double nbar, double phase, int order) {
  ModeAverages avg;
  for (int m = 0; m <= order; ++m) {
    const double weight = thermal_weight(nbar, m);
    if (weight == 0.0) continue;
    const double c_plus = std::cos(std::sqrt(m + 1.0) * phase);
    const double s_plus = std::sin(std::sqrt(m + 1.0) * phase);
    const double c_zero = std::cos(std::sqrt(static_cast<double>(m)) * phase);
    const double s_zero = std::sin(std::sqrt(static_cast<double>(m)) * phase);
    avg.cos2_plus += weight * c_plus * c_plus;
    avg.sin2_plus += weight * s_plus * s_plus;
    avg.cos2_zero += weight * c_zero * c_zero;
    avg.sin2_zero += weight * s_zero * s_zero;
    avg.cos_cos += weight * c_plus * c_zero;
  }
  return avg;
}

}  // namespace detail

/// Reduced two-atom state at time t for the initial Bell state (|ee>+|gg>)/sqrt(2)
/// and thermal cavities. The double thermal series factorises into products of
/// single-mode averages, so the cost is linear in the truncation orders.
/// Each coefficient is within (tail1 + tail2)/2 of the untruncated value.
inline XState atomic_xstate(const ModelParams& p, double t, const TruncationSpec& tr = {}) {
  p.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("atomic_xstate: time must be finite and >= 0");
  const ResolvedTruncation r = resolve_truncation(p, tr);
  const auto m1 = detail::mode_averages(p.nbar1, p.g1 * t, r.order1);
  const auto m2 = detail::mode_averages(p.nbar2, p.g2 * t, r.order2);

  XState s;
  s.a = 0.5 * (m1.cos2_plus * m2.cos2_plus + m1.sin2_zero * m2.sin2_zero);
  s.b = 0.5 * (m1.cos2_plus * m2.sin2_plus + m1.sin2_zero * m2.cos2_zero);
  s.c = 0.5 * (m1.sin2_plus * m2.cos2_plus + m1.cos2_zero * m2.sin2_zero);
  s.d = 0.5 * (m1.sin2_plus * m2.sin2_plus + m1.cos2_zero * m2.cos2_zero);
  s.w = 0.5 * m1.cos_cos * m2.cos_cos;
  s.z = 0.0;
  s.trace_slack = r.tail1 + r.tail2;
  s.validate();
  return s;
}

struct Measures {
  double discord = 0.0;      // doubled trace-norm discord
  double concurrence = 0.0;
  double concurrence_margin = 0.0;  // unclamped; <= 0 where the state is separable
};

inline Measures measures_at(const ModelParams& p, double t, const TruncationSpec& tr = {}) {
  const XState s = atomic_xstate(p, t, tr);
  return {discord_1norm_xstate(s), concurrence_xstate(s), concurrence_margin(s)};
}

}  // namespace thermal_jc
