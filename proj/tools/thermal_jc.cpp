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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "thermal_jc/commands.hpp"

namespace {

using namespace thermal_jc;

void add_common(CLI::App* cmd, cli::CommonConfig& c) {
  cmd->add_option("--epsilon", c.epsilon, "Per-mode neglected thermal weight")->capture_default_str();
  cmd->add_option("--g-ratio", c.g_ratio, "Coupling ratio g2/g1 (times are g1*t)")->capture_default_str();
}

void add_grid(CLI::App* cmd, const std::string& name, Grid1D& g, const std::string& what) {
  cmd->add_option("--" + name + "-start", g.start, what + " grid start")->capture_default_str();
  cmd->add_option("--" + name + "-stop", g.stop, what + " grid stop (inclusive)")->capture_default_str();
  cmd->add_option("--" + name + "-step", g.step, what + " grid step")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correlation dynamics of two atoms in two thermal cavities"};
  app.require_subcommand(1);

  cli::MeasureConfig measure;
  auto* m = app.add_subcommand("measure", "Discord and concurrence at a single (nbar1, nbar2, gt)");
  m->add_option("--nbar1", measure.nbar1, "Mean photon number of cavity 1")->required();
  m->add_option("--nbar2", measure.nbar2, "Mean photon number of cavity 2")->required();
  m->add_option("--gt", measure.gt, "Dimensionless time g1*t")->required();
  add_common(m, measure.common);

  cli::SweepConfig sweep;
  unsigned sweep_threads = 0;
  auto* s = app.add_subcommand("sweep", "Measures over a (nbar, gt) grid as CSV");
  add_grid(s, "gt", sweep.gt, "gt");
  add_grid(s, "nbar1", sweep.nbar1, "nbar1");
  add_grid(s, "nbar2", sweep.nbar2, "nbar2");
  s->add_flag("--diagonal", sweep.diagonal, "Restrict to nbar1 == nbar2 (uses the nbar1 grid)");
  s->add_option("-o,--output", sweep.output, "Output CSV path, '-' for stdout")->capture_default_str();
  s->add_option("--threads", sweep_threads, "Worker threads (THERMAL_JC_THREADS overrides)");
  add_common(s, sweep.common);

  cli::RobustMapConfig robust;
  unsigned robust_threads = 0;
  std::string robust_measure = "discord";
  auto* r = app.add_subcommand("robust-map", "Robust revival time g*tau/pi over an (nbar1, nbar2) grid as CSV");
  add_grid(r, "nbar1", robust.nbar1, "nbar1");
  add_grid(r, "nbar2", robust.nbar2, "nbar2");
  r->add_option("--measure", robust_measure, "discord or concurrence")
      ->check(CLI::IsMember({"discord", "concurrence"}))
      ->capture_default_str();
  r->add_option("--window-lo", robust.window.lo, "Search window start, units of pi")->capture_default_str();
  r->add_option("--window-hi", robust.window.hi, "Search window stop, units of pi")->capture_default_str();
  r->add_option("--step", robust.window.step, "Search step, units of pi")->capture_default_str();
  r->add_option("--presence", robust.window.presence_threshold, "Minimum peak counted as present")
      ->capture_default_str();
  r->add_option("-o,--output", robust.output, "Output CSV path, '-' for stdout")->capture_default_str();
  r->add_option("--threads", robust_threads, "Worker threads (THERMAL_JC_THREADS overrides)");
  add_common(r, robust.common);

  cli::OracleCheckConfig oracle;
  int ncut = 0;
  auto* o = app.add_subcommand("oracle-check", "Compare the analytic state with brute-force Fock evolution");
  o->add_option("--nbar1", oracle.nbar1, "Mean photon number of cavity 1")->capture_default_str();
  o->add_option("--nbar2", oracle.nbar2, "Mean photon number of cavity 2")->capture_default_str();
  add_grid(o, "gt", oracle.gt, "gt");
  o->add_option("--tolerance", oracle.tolerance, "Maximum allowed coefficient deviation")->capture_default_str();
  o->add_option("--ncut", ncut, "Photon cutoff per mode (default: derived from nbar)");
  add_common(o, oracle.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsageError;
  }

  if (m->parsed()) return cli::cmd_measure(measure, std::cout, std::cerr);
  if (s->count("--threads") > 0) sweep.threads = sweep_threads;
  if (r->count("--threads") > 0) robust.threads = robust_threads;

  if (s->parsed()) return cli::cmd_sweep(sweep, std::cout, std::cerr);
  if (r->parsed()) {
    robust.measure = parse_measure(robust_measure);
    return cli::cmd_robust_map(robust, std::cout, std::cerr);
  }
  if (ncut != 0 || o->count("--ncut") > 0) {
    if (ncut < 1) {
      std::cerr << "error: --ncut must be >= 1\n";
      return cli::kUsageError;
    }
    oracle.ncut = ncut;
  }
  return cli::cmd_oracle_check(oracle, std::cout, std::cerr);
}
