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
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "thermal_jc/errors.hpp"
#include "thermal_jc/jc_thermal.hpp"

namespace thermal_jc {

/// Inclusive uniform grid start, start+step, ... up to stop.
struct Grid1D {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  void validate() const {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step))
      throw InvalidArgument("Grid1D: non-finite bound or step");
    if (!(step > 0.0)) throw InvalidArgument("Grid1D: step must be > 0");
    if (stop < start) throw InvalidArgument("Grid1D: empty grid (stop < start)");
  }

  // The relative slack keeps stop inside when (stop-start)/step is an integer up to roundoff.
  std::size_t size() const {
    validate();
    return static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  }

  double at(std::size_t i) const { return start + static_cast<double>(i) * step; }

  std::vector<double> points() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i);
    return out;
  }

  static Grid1D single(double value) { return {value, value, 1.0}; }
};

enum class Measure { kDiscord, kConcurrence };

inline std::string_view to_string(Measure m) { return m == Measure::kDiscord ? "discord" : "concurrence"; }

inline Measure parse_measure(std::string_view name) {
  if (name == "discord") return Measure::kDiscord;
  if (name == "concurrence") return Measure::kConcurrence;
  throw InvalidArgument("unknown measure '" + std::string(name) + "' (expected discord or concurrence)");
}

inline double select(const Measures& m, Measure which) {
  return which == Measure::kDiscord ? m.discord : m.concurrence;
}

struct SweepRecord {
  double nbar1 = 0.0;
  double nbar2 = 0.0;
  double gt = 0.0;
  double d1 = 0.0;
  double c = 0.0;
};

struct RobustTimeRecord {
  double nbar1 = 0.0;
  double nbar2 = 0.0;
  double gtau_over_pi = 0.0;
  double peak_value = 0.0;
  Measure measure = Measure::kDiscord;
  bool present = false;
};

struct EsdInterval {
  double start = 0.0;
  double end = 0.0;
  double length() const { return end - start; }
};

/// Runs `body(i)` for i in [0, count) on up to `workers` threads. Each index is
/// handled exactly once; when several indices throw, the lowest index wins so
/// that failures do not depend on scheduling.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  pool.clear();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Measures over (nbar grid) x (gt grid); nbar is the outer index, gt the inner.
/// With `diagonal` set only nbar1 == nbar2 points from `nbar1` are visited and
/// `nbar2` is ignored. `model` supplies the couplings; time is gt / g1.
inline std::vector<SweepRecord> sweep_time_mpn(const Grid1D& gt, const Grid1D& nbar1, const Grid1D& nbar2,
                                               bool diagonal, const ModelParams& model = {},
                                               const TruncationSpec& tr = {}, unsigned workers = 1) {
  const auto times = gt.points();
  const auto n1 = nbar1.points();
  const auto n2 = diagonal ? n1 : nbar2.points();

  std::vector<std::pair<double, double>> pairs;
  if (diagonal) {
    for (double n : n1) pairs.emplace_back(n, n);
  } else {
    for (double a : n1)
      for (double b : n2) pairs.emplace_back(a, b);
  }

  std::vector<SweepRecord> out(pairs.size() * times.size());
  parallel_for(out.size(), workers, [&](std::size_t i) {
    const auto [a, b] = pairs[i / times.size()];
    const double x = times[i % times.size()];
    ModelParams p = model;
    p.nbar1 = a;
    p.nbar2 = b;
    const Measures m = measures_at(p, x / p.g1, tr);
    out[i] = {a, b, x, m.discord, m.concurrence};
  });
  return out;
}

struct ConcurrenceSample {
  double value = 0.0;
  double margin = 0.0;
};

/// A point is dead when the concurrence is below `threshold` and its clamp is
/// active (unclamped margin <= 0). Isolated tangential zeros, as in the vacuum
/// case where C = cos^4(gt), are therefore not reported as sudden death.
inline bool entanglement_dead(const ConcurrenceSample& s, double threshold) {
  return s.value < threshold && s.margin <= 0.0;
}

/// Maximal runs (at least two grid points) of dead concurrence samples, with
/// interior endpoints bisected to a bracket narrower than `resolution`.
template <class Sampler>
std::vector<EsdInterval> esd_intervals(const Grid1D& gt, Sampler&& sample, double threshold = 1e-6,
                                       double resolution = 1e-4) {
  if (!(threshold > 0.0)) throw InvalidArgument("esd_intervals: threshold must be > 0");
  const auto times = gt.points();
  std::vector<char> dead(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) dead[i] = entanglement_dead(sample(times[i]), threshold);

  // Shrinks [alive, dead] (either order) around the switching point and returns its midpoint.
  auto refine = [&](double alive, double gone) {
    while (std::abs(gone - alive) >= resolution) {
      const double mid = 0.5 * (alive + gone);
      (entanglement_dead(sample(mid), threshold) ? gone : alive) = mid;
    }
    return 0.5 * (alive + gone);
  };

  std::vector<EsdInterval> out;
  std::size_t i = 0;
  while (i < times.size()) {
    if (!dead[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < times.size() && dead[j + 1]) ++j;
    if (j > i) {
      const double start = i == 0 ? times[i] : refine(times[i - 1], times[i]);
      const double end = j + 1 == times.size() ? times[j] : refine(times[j + 1], times[j]);
      out.push_back({start, end});
    }
    i = j + 1;
  }
  return out;
}

inline std::vector<EsdInterval> esd_intervals(const ModelParams& p, const Grid1D& gt, double threshold = 1e-6,
                                              const TruncationSpec& tr = {}) {
  p.validate();
  return esd_intervals(
      gt,
      [&](double x) {
        const Measures m = measures_at(p, x / p.g1, tr);
        return ConcurrenceSample{m.concurrence, m.concurrence_margin};
      },
      threshold);
}

/// Search settings for the revival peak near gt = 3 pi, all in units of pi.
struct RobustWindow {
  double lo = 2.5;
  double hi = 3.5;
  double step = 0.025;
  double presence_threshold = 1e-3;

  Grid1D grid() const { return {lo, hi, step}; }
};

struct WindowPeak {
  double at = 0.0;
  double value = 0.0;
};

/// Grid argmax of f; on ties the later point wins.
template <class F>
WindowPeak window_argmax(const Grid1D& grid, F&& f) {
  WindowPeak best{grid.at(0), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0, n = grid.size(); i < n; ++i) {
    const double x = grid.at(i);
    const double value = f(x);
    if (value >= best.value) best = {x, value};
  }
  return best;
}

/// Windowed argmax of the chosen measure, reported in units of pi.
inline RobustTimeRecord robust_time(const ModelParams& p, Measure which, const RobustWindow& window = {},
                                    const TruncationSpec& tr = {}) {
  p.validate();
  const WindowPeak peak = window_argmax(
      window.grid(), [&](double x) { return select(measures_at(p, x * std::numbers::pi / p.g1, tr), which); });
  RobustTimeRecord rec;
  rec.nbar1 = p.nbar1;
  rec.nbar2 = p.nbar2;
  rec.measure = which;
  rec.gtau_over_pi = peak.at;
  rec.peak_value = peak.value;
  rec.present = rec.peak_value >= window.presence_threshold;
  return rec;
}

/// robust_time over nbar1 x nbar2, nbar1 outer.
inline std::vector<RobustTimeRecord> robust_time_map(const Grid1D& nbar1, const Grid1D& nbar2, Measure which,
                                                     const RobustWindow& window = {},
                                                     const ModelParams& model = {}, const TruncationSpec& tr = {},
                                                     unsigned workers = 1) {
  const auto n1 = nbar1.points();
  const auto n2 = nbar2.points();
  window.grid().validate();
  std::vector<RobustTimeRecord> out(n1.size() * n2.size());
  parallel_for(out.size(), workers, [&](std::size_t i) {
    ModelParams p = model;
    p.nbar1 = n1[i / n2.size()];
    p.nbar2 = n2[i % n2.size()];
    out[i] = robust_time(p, which, window, tr);
  });
  return out;
}

}  // namespace thermal_jc
