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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "thermal_jc/csv.hpp"
#include "thermal_jc/fock_oracle.hpp"
#include "thermal_jc/jc_thermal.hpp"
#include "thermal_jc/sweep.hpp"

namespace thermal_jc::cli {

enum ExitCode : int { kOk = 0, kComputeError = 1, kUsageError = 2, kToleranceBreach = 3 };

inline constexpr const char* kThreadsEnv = "THERMAL_JC_THREADS";

/// Worker count: THERMAL_JC_THREADS wins over the flag; falls back to the hardware count.
inline unsigned resolve_workers(std::optional<unsigned> requested) {
  if (const char* env = std::getenv(kThreadsEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw InvalidArgument(std::string(kThreadsEnv) + " must be a positive integer");
    return static_cast<unsigned>(v);
  }
  if (requested) {
    if (*requested < 1) throw InvalidArgument("--threads must be >= 1");
    return *requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

struct CommonConfig {
  double epsilon = kDefaultEpsilon;
  double g_ratio = 1.0;  // g2 / g1, with g1 = 1 so that t == gt

  ModelParams model(double nbar1 = 0.0, double nbar2 = 0.0) const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidArgument("--epsilon must lie in (0,1)");
    if (!(g_ratio > 0.0) || !std::isfinite(g_ratio)) throw InvalidArgument("--g-ratio must be > 0");
    ModelParams p{nbar1, nbar2, 1.0, g_ratio};
    p.validate();
    return p;
  }
  TruncationSpec truncation() const { return TruncationSpec::with_epsilon(epsilon); }
};

struct MeasureConfig {
  CommonConfig common;
  double nbar1 = 0.0;
  double nbar2 = 0.0;
  double gt = 0.0;
};

struct SweepConfig {
  CommonConfig common;
  Grid1D gt{0.0, 4.0 * std::numbers::pi, 0.01};
  Grid1D nbar1{0.0, 2.0, 0.02};
  Grid1D nbar2{0.0, 2.0, 0.02};
  bool diagonal = false;
  std::string output = "-";
  std::optional<unsigned> threads;
};

struct RobustMapConfig {
  CommonConfig common;
  Grid1D nbar1{0.0, 0.5, 0.05};
  Grid1D nbar2{0.0, 0.5, 0.05};
  Measure measure = Measure::kDiscord;
  RobustWindow window;
  std::string output = "-";
  std::optional<unsigned> threads;
};

struct OracleCheckConfig {
  CommonConfig common;
  double nbar1 = 0.0;
  double nbar2 = 0.0;
  Grid1D gt{0.0, 4.0 * std::numbers::pi, 0.1};
  double tolerance = 1e-8;
  std::optional<int> ncut;  // same cutoff for both modes
};

namespace detail {

// Writes through `emit` to stdout ("-") or to `path` via a sibling temporary
// that is renamed into place only after a complete write.
inline void write_output(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& emit) {
  if (path.empty() || path == "-") {
    emit(out);
    out.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path partial = fs::path(path + ".partial");
  try {
    {
      std::ofstream file(partial, std::ios::binary | std::ios::trunc);
      if (!file) throw ComputationError("cannot open " + partial.string() + " for writing");
      emit(file);
      file.flush();
      if (!file) throw ComputationError("write to " + partial.string() + " failed");
    }
    fs::rename(partial, target);
  } catch (...) {
    std::error_code ignored;
    fs::remove(partial, ignored);
    throw;
  }
}

template <class F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kComputeError;
  }
}

}  // namespace detail

inline int cmd_measure(const MeasureConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const ModelParams p = cfg.common.model(cfg.nbar1, cfg.nbar2);
    if (!(cfg.gt >= 0.0) || !std::isfinite(cfg.gt)) throw InvalidArgument("--gt must be finite and >= 0");
    const Measures m = measures_at(p, cfg.gt / p.g1, cfg.common.truncation());
    const SweepRecord row{cfg.nbar1, cfg.nbar2, cfg.gt, m.discord, m.concurrence};
    out << csv::kSweepHeader << '\n';
    csv::write_row(out, row);
    return static_cast<int>(kOk);
  });
}

inline int cmd_sweep(const SweepConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const ModelParams p = cfg.common.model();
    cfg.gt.validate();
    cfg.nbar1.validate();
    if (!cfg.diagonal) cfg.nbar2.validate();
    if (cfg.nbar1.start < 0.0 || (!cfg.diagonal && cfg.nbar2.start < 0.0))
      throw InvalidArgument("mean photon number grids must start at >= 0");
    if (cfg.gt.start < 0.0) throw InvalidArgument("gt grid must start at >= 0");
    const unsigned workers = resolve_workers(cfg.threads);
    const auto records =
        sweep_time_mpn(cfg.gt, cfg.nbar1, cfg.nbar2, cfg.diagonal, p, cfg.common.truncation(), workers);
    detail::write_output(cfg.output, out, [&](std::ostream& os) { csv::write_sweep(os, records); });
    return static_cast<int>(kOk);
  });
}

inline int cmd_robust_map(const RobustMapConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const ModelParams p = cfg.common.model();
    cfg.nbar1.validate();
    cfg.nbar2.validate();
    cfg.window.grid().validate();
    if (cfg.nbar1.start < 0.0 || cfg.nbar2.start < 0.0)
      throw InvalidArgument("mean photon number grids must start at >= 0");
    if (!(cfg.window.presence_threshold >= 0.0)) throw InvalidArgument("--presence must be >= 0");
    const unsigned workers = resolve_workers(cfg.threads);
    const auto records =
        robust_time_map(cfg.nbar1, cfg.nbar2, cfg.measure, cfg.window, p, cfg.common.truncation(), workers);
    detail::write_output(cfg.output, out, [&](std::ostream& os) { csv::write_robust(os, records); });
    return static_cast<int>(kOk);
  });
}

inline void print_report(std::ostream& os, const OracleReport& r, double tolerance) {
  std::ostringstream text;
  text << std::setprecision(3) << std::scientific;
  text << "oracle basis: ncut1=" << r.ncut1 << " ncut2=" << r.ncut2 << " points=" << r.points << '\n';
  text << "leakage bound: " << r.leakage_bound << '\n';
  text << "max off-X-pattern entry: " << r.max_off_x_pattern << '\n';
  auto line = [&](const char* name, const CoefficientDeviation& d) {
    text << "  " << name << ": max |analytic - oracle| = " << d.max_abs << " at gt = " << std::defaultfloat
         << std::setprecision(6) << d.at_time << std::scientific << std::setprecision(3) << '\n';
  };
  line("a", r.a);
  line("b", r.b);
  line("c", r.c);
  line("d", r.d);
  line("w", r.w);
  line("z", r.z);
  text << "worst deviation " << r.worst() << (r.worst() <= tolerance ? " <= " : " > ") << "tolerance " << tolerance
       << (r.worst() <= tolerance ? "  PASS" : "  FAIL") << '\n';
  os << text.str();
}

inline int cmd_oracle_check(const OracleCheckConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const ModelParams p = cfg.common.model(cfg.nbar1, cfg.nbar2);
    cfg.gt.validate();
    if (cfg.gt.start < 0.0) throw InvalidArgument("gt grid must start at >= 0");
    if (!(cfg.tolerance > 0.0)) throw InvalidArgument("--tolerance must be > 0");
    std::optional<FockBasis> basis;
    if (cfg.ncut) basis = FockBasis(*cfg.ncut, *cfg.ncut);
    const OracleReport report = compare_with_analytic(p, cfg.gt.points(), cfg.common.truncation(), basis);
    print_report(out, report, cfg.tolerance);
    const bool ok = report.worst() <= cfg.tolerance && report.max_off_x_pattern <= kXFormTolerance;
    return static_cast<int>(ok ? kOk : kToleranceBreach);
  });
}

}  // namespace thermal_jc::cli
