#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "pointnls/blowup.hpp"
#include "pointnls/cn_solver.hpp"
#include "pointnls/diagnostics.hpp"
#include "pointnls/exact.hpp"
#include "pointnls/grid.hpp"
#include "pointnls/params.hpp"
#include "pointnls/volterra.hpp"

namespace pointnls {

enum class SolverKind { FD, Volterra, Both };
std::string to_string(SolverKind kind);

struct OutputSet {
  bool trace_csv = true;
  bool report_json = true;
  bool field_snapshots = false;
  bool svg_plots = false;
};

/// One simulation as described by a single JSON document:
///
///   {"physics": {"p": 3}, "grid": {"half_width": 20, "num_points": 2001},
///    "initial": {"kind": "gaussian", "amplitude": 1.2, "width": 1, "chirp": 0},
///    "solver": {"kind": "fd", "fd": {...CNConfig...}, "volterra": {...VolterraConfig...}},
///    "t_end": 1, "diagnostic_interval": 0.01, "virial_epsilon": 0.05,
///    "outputs": ["trace_csv", "report_json", "field_snapshots", "svg_plots"], "seed": 0}
///
/// Everything except "initial" has a default. Unknown keys are rejected.
struct ScenarioConfig {
  PhysicsParams physics{3.0};
  GridSpec grid{20.0, 2001};
  ExactSolutionSpec initial = SolitaryWave{};
  SolverKind solver = SolverKind::FD;
  CNConfig fd;
  VolterraConfig volterra;
  double t_end = 1.0;
  double diagnostic_interval = 1e-2;
  double virial_epsilon = 0.05;
  OutputSet outputs;
  std::uint64_t seed = 0;

  /// Throws ConfigError naming the violated invariant.
  void validate() const;
};

/// `base_dir` resolves relative paths of custom initial data files.
ScenarioConfig parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailure = 1,
  kExitConfigError = 2,
  kExitNumericalFailure = 3,
};

struct InitialSummary {
  double mass = 0.0;
  double energy = 0.0;
  double eta0 = 0.0;
  Prediction predicted = Prediction::Indeterminate;
};

InitialSummary summarize_initial(const WaveState& initial, const PhysicsParams& params);

struct ScenarioReport {
  bool ok = true;
  std::string error;  // set when the run ended in a numerical failure
  InitialSummary initial;
  BlowupReport analysis;
  double final_time = 0.0;
  long steps = 0;
  long halvings = 0;
  double max_mass_drift = 0.0;    // max |M(t) - M(0)| / M(0) over the trace
  double max_energy_drift = 0.0;  // max |E(t) - E(0)|
  std::optional<double> cross_validation_time;
  std::optional<double> cross_validation_l2;
};

struct ScenarioResult {
  int exit_code = kExitOk;
  ScenarioReport report;
  std::string message;
};

/// Builds the initial data, runs the configured solver(s) and writes the selected artifacts
/// into out_dir: trace.csv, report.json, snapshot_{initial,peak,final}.csv (plus
/// volterra_final.csv with both solvers) and kinetic.svg, rate.svg, concentration.svg.
/// Numerical failures keep the partial trace and report exit code 3.
ScenarioResult execute_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

int run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir);

std::string report_to_json(const ScenarioConfig& cfg, const ScenarioReport& report);

/// The analysis block of a report.json written by execute_scenario.
BlowupReport read_report_analysis(const std::filesystem::path& report_json);

/// Recomputes the analysis from trace.csv, snapshot_peak.csv and the scenario header of
/// report.json in out_dir.
BlowupReport reanalyze_output(const std::filesystem::path& out_dir);

}  // namespace pointnls
