#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "pointnls/errors.hpp"
#include "pointnls/exact.hpp"
#include "pointnls/initial_data_io.hpp"
#include "pointnls/scenario.hpp"
#include "pointnls/svg_plot.hpp"
#include "pointnls/sweep.hpp"
#include "pointnls/trace_io.hpp"
#include "pointnls/verify.hpp"

using namespace pointnls;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "pointnls_harness" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmallSolitary = R"({
  "grid": {"half_width": 10, "num_points": 401},
  "initial": {"kind": "solitary_wave"},
  "t_end": 0.2,
  "outputs": ["trace_csv", "report_json", "field_snapshots", "svg_plots"]
})";

void same_optional(const std::optional<double>& a, const std::optional<double>& b) {
  REQUIRE(a.has_value() == b.has_value());
  if (a) CHECK(*a == *b);
}

}  // namespace

TEST_CASE("config parsing defaults and overrides") {
  const ScenarioConfig d = parse_scenario(R"({"initial": {"kind": "solitary_wave"}})");
  CHECK(d.physics.p() == 3.0);
  CHECK(d.grid.size() == 2001);
  CHECK(d.solver == SolverKind::FD);
  CHECK(d.outputs.trace_csv);
  CHECK(d.outputs.report_json);
  CHECK_FALSE(d.outputs.svg_plots);

  const ScenarioConfig c = parse_scenario(R"({
    "physics": {"p": 5}, "grid": {"half_width": 8, "num_points": 801},
    "initial": {"kind": "ground_state_modulation", "amplitude": 1.1, "scale": 1, "phase": 0.2, "chirp": 0.1},
    "solver": {"kind": "both", "fd": {"dt0": 5e-4, "adapt": true}, "volterra": {"dt": 1e-3, "picard_max": 7}},
    "t_end": 0.5, "diagnostic_interval": 0.05, "virial_epsilon": 0.1, "outputs": ["svg_plots"], "seed": 42})");
  CHECK(c.physics.p() == 5.0);
  CHECK(c.grid.half_width() == 8.0);
  CHECK(c.solver == SolverKind::Both);
  CHECK(c.fd.dt0 == 5e-4);
  CHECK(c.fd.adapt);
  CHECK(c.volterra.picard_max == 7);
  CHECK(c.seed == 42);
  CHECK(c.outputs.svg_plots);
  CHECK_FALSE(c.outputs.trace_csv);
  const auto& m = std::get<GroundStateModulation>(c.initial);
  CHECK(m.chirp == 0.1);
  CHECK(to_string(c.solver) == "both");
}

TEST_CASE("config errors name the offending field") {
  const auto fails = [](const char* text, const char* needle) {
    CAPTURE(text);
    CHECK_THROWS_WITH_AS(parse_scenario(text), doctest::Contains(needle), ConfigError);
  };
  fails("{not json", "JSON");
  fails(R"({"grid": {"num_points": 2000}, "initial": {"kind": "solitary_wave"}})", "num_points");
  fails(R"({"initial": {"kind": "solitary_wave"}, "t_ned": 1})", "t_ned");
  fails(R"({"t_end": 1})", "initial");
  fails(R"({"initial": {"kind": "soliton"}})", "soliton");
  fails(R"({"initial": {"kind": "gaussian", "width": -1}})", "width");
  fails(R"({"physics": {"p": 1}, "initial": {"kind": "solitary_wave"}})", "p");
  fails(R"({"physics": {"p": 5}, "initial": {"kind": "pseudoconformal"}})", "p = 3");
  fails(R"({"initial": {"kind": "solitary_wave"}, "diagnostic_interval": 1e-4})", "dt0");
  fails(R"({"initial": {"kind": "solitary_wave"}, "solver": {"kind": "spectral"}})", "solver.kind");
  fails(R"({"initial": {"kind": "solitary_wave"}, "solver": {"fd": {"dt0": 0}}})", "dt0");
  fails(R"({"initial": {"kind": "solitary_wave"}, "outputs": ["movie"]})", "movie");
  fails(R"({"initial": {"kind": "custom", "file": "does_not_exist.csv"}})", "does_not_exist");
}

TEST_CASE("custom initial data resolves relative to the config directory") {
  const fs::path dir = scratch("custom");
  write_samples_csv(dir / "data.csv", sample_exact(SolitaryWave{}, PhysicsParams(3.0), GridSpec(10.0, 201), 0.0));
  std::ofstream(dir / "cfg.json") << R"({"grid": {"half_width": 10, "num_points": 201},
    "initial": {"kind": "custom", "file": "data.csv"}, "t_end": 0.05})";
  const ScenarioConfig cfg = load_scenario(dir / "cfg.json");
  const auto& s = std::get<CustomSamples>(cfg.initial);
  CHECK(s.x.size() == 201);
  CHECK(execute_scenario(cfg, dir / "out").exit_code == kExitOk);
}

TEST_CASE("a successful run writes every artifact") {
  const fs::path dir = scratch("solitary");
  const ScenarioResult res = execute_scenario(parse_scenario(kSmallSolitary), dir);
  REQUIRE(res.exit_code == kExitOk);
  for (const char* f : {"trace.csv", "report.json", "snapshot_initial.csv", "snapshot_peak.csv", "snapshot_final.csv",
                        "kinetic.svg"}) {
    CAPTURE(f);
    CHECK(fs::exists(dir / f));
  }
  const auto trace = read_trace_csv(dir / "trace.csv");
  CHECK(trace.size() == 21);
  CHECK(trace.back().t == 0.2);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["status"] == "ok");
  CHECK(report["analysis"]["verdict"] == "Global");
  CHECK(report["analysis"]["t_star_estimate"].is_null());
  CHECK(report["scenario"]["num_points"] == 401);
  CHECK(report["run"]["max_mass_drift"].get<double>() < 1e-10);
  // The ground state sits exactly on the M = 2 threshold, so no prediction is asserted.
  CHECK(res.report.initial.mass == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(slurp(dir / "kinetic.svg").rfind("<svg", 0) == 0);
  CHECK(read_samples_csv(dir / "snapshot_final.csv").x.size() == 401);
}

TEST_CASE("invalid configs exit 2 without running") {
  ScenarioConfig cfg = parse_scenario(kSmallSolitary);
  cfg.t_end = -1.0;
  const fs::path dir = scratch("invalid");
  const ScenarioResult res = execute_scenario(cfg, dir / "out");
  CHECK(res.exit_code == kExitConfigError);
  CHECK(res.message.find("t_end") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "out" / "trace.csv"));
}

TEST_CASE("numerical failure exits 3 and keeps the partial trace") {
  const fs::path dir = scratch("failure");
  const ScenarioConfig cfg = parse_scenario(R"({
    "grid": {"half_width": 10, "num_points": 401},
    "initial": {"kind": "gaussian", "amplitude": 1.2},
    "solver": {"kind": "both", "volterra": {"picard_max": 1}},
    "t_end": 0.1})");
  const ScenarioResult res = execute_scenario(cfg, dir);
  CHECK(res.exit_code == kExitNumericalFailure);
  CHECK_FALSE(res.report.ok);
  CHECK(res.report.error.find("Picard") != std::string::npos);
  const auto trace = read_trace_csv(dir / "trace.csv");
  REQUIRE(trace.size() >= 11);
  CHECK(trace.back().t == 0.1);
  const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(report["status"] == "numerical_failure");
  CHECK(report.contains("error"));
}

TEST_CASE("runs are deterministic") {
  const ScenarioConfig cfg = parse_scenario(R"({
    "grid": {"half_width": 10, "num_points": 401},
    "initial": {"kind": "gaussian", "amplitude": 1.3, "chirp": 0.2},
    "solver": {"fd": {"adapt": true}}, "t_end": 0.3, "seed": 5})");
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  REQUIRE(execute_scenario(cfg, a).exit_code == kExitOk);
  REQUIRE(execute_scenario(cfg, b).exit_code == kExitOk);
  CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
  CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
}

TEST_CASE("re-analysis from written artifacts reproduces the report") {
  const fs::path dir = scratch("reanalyze");
  const ScenarioConfig cfg = parse_scenario(R"({
    "grid": {"half_width": 20, "num_points": 2001},
    "initial": {"kind": "gaussian", "amplitude": 1.8},
    "solver": {"fd": {"adapt": true}}, "t_end": 2,
    "outputs": ["trace_csv", "report_json", "field_snapshots"]})");
  REQUIRE(execute_scenario(cfg, dir).exit_code == kExitOk);
  const BlowupReport stored = read_report_analysis(dir / "report.json");
  const BlowupReport again = reanalyze_output(dir);
  CHECK(stored.verdict != Verdict::Global);
  CHECK(again.verdict == stored.verdict);
  CHECK(again.stop_reason == stored.stop_reason);
  CHECK(again.peak_time == stored.peak_time);
  CHECK(again.peak_growth == stored.peak_growth);
  same_optional(again.t_star_estimate, stored.t_star_estimate);
  same_optional(again.rate_exponent, stored.rate_exponent);
  same_optional(again.rate_fit_residual, stored.rate_fit_residual);
  same_optional(again.lower_bound_margin, stored.lower_bound_margin);
  same_optional(again.concentration_value, stored.concentration_value);
  same_optional(again.proximity_epsilon, stored.proximity_epsilon);
}

TEST_CASE("trace csv round-trips exactly") {
  DiagnosticsRecord r;
  r.t = 0.1;
  r.mass = 1.0 / 3.0;
  r.energy = -2.5e-17;
  r.kinetic = 12345.678901234567;
  r.boundary = Complex(std::sqrt(2.0), -1e-300);
  r.eta = 0.7;
  r.virial_moment = 3.0;
  r.virial_first = -4.0;
  r.dt_used = 1e-3;
  const std::vector<DiagnosticsRecord> trace{r, r};
  std::stringstream ss;
  write_trace_csv(ss, trace);
  CHECK(ss.str().rfind(std::string(kTraceHeader) + "\n", 0) == 0);
  const auto back = read_trace_csv(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[1].t == r.t);
  CHECK(back[1].mass == r.mass);
  CHECK(back[1].energy == r.energy);
  CHECK(back[1].kinetic == r.kinetic);
  CHECK(back[1].boundary == r.boundary);
  CHECK(back[1].eta == r.eta);
  CHECK(back[1].virial_moment == r.virial_moment);
  CHECK(back[1].virial_first == r.virial_first);
  CHECK(back[1].dt_used == r.dt_used);

  std::stringstream bad("t,mass\n0,1\n");
  CHECK_THROWS_AS(read_trace_csv(bad), ConfigError);
  std::stringstream garbage(std::string(kTraceHeader) + "\n0,1,2,x,4,5,6,7,8,9\n");
  CHECK_THROWS_AS(read_trace_csv(garbage), ConfigError);
}

TEST_CASE("svg plots skip unplottable points") {
  const fs::path dir = scratch("svg");
  LinePlot p{"t", "x", "y", {1.0, 2.0, 3.0}, {0.0, 10.0, 100.0}, false, true};
  CHECK(write_svg_line_plot(dir / "a.svg", p));
  const std::string svg = slurp(dir / "a.svg");
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  LinePlot empty{"t", "x", "y", {1.0}, {-1.0}, false, true};
  CHECK_FALSE(write_svg_line_plot(dir / "b.svg", empty));
}

TEST_CASE("parameter sweeps") {
  const fs::path dir = scratch("sweep");
  const std::string base = R"({"grid": {"half_width": 10, "num_points": 201},
    "initial": {"kind": "gaussian", "amplitude": 1.0}, "t_end": 0.05})";

  SUBCASE("parameter resolution") {
    CHECK(resolve_sweep_parameter(base, "amplitude") == "initial.amplitude");
    CHECK(resolve_sweep_parameter(base, "t_end") == "initial.t_end");
    CHECK(resolve_sweep_parameter(base, "grid.half_width") == "grid.half_width");
    CHECK_THROWS_AS(resolve_sweep_parameter(base, "initial.kind"), ConfigError);
    CHECK_THROWS_AS(resolve_sweep_parameter(base, "solver.fd.dt0"), ConfigError);
    CHECK_THROWS_AS(resolve_sweep_parameter(base, ""), ConfigError);
  }
  SUBCASE("empty list") {
    const auto rows = parameter_sweep(base, {}, "amplitude", {}, dir, 2);
    CHECK(rows.empty());
    CHECK(slurp(dir / "sweep.csv") == std::string(kSweepHeader) + "\n");
  }
  SUBCASE("rows keep input order and failures are isolated") {
    const std::vector<double> values{0.5, -1.0, 1.0, 0.8};
    const auto rows = parameter_sweep(base, {}, "width", values, dir, 3);
    REQUIRE(rows.size() == 4);
    for (std::size_t k = 0; k < rows.size(); ++k) CHECK(rows[k].value == values[k]);
    CHECK(rows[1].verdict == "Failed");
    CHECK(rows[1].exit_code == kExitConfigError);
    CHECK_FALSE(rows[1].mass);
    for (std::size_t k : {0u, 2u, 3u}) {
      CHECK(rows[k].verdict == "Global");
      CHECK(fs::exists(dir / ("run_" + std::to_string(k)) / "trace.csv"));
    }
    CHECK(*rows[2].mass > *rows[0].mass);
    std::ifstream in(dir / "sweep.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == kSweepHeader);
    std::getline(in, line);
    CHECK(line.rfind("0.5,", 0) == 0);
    std::getline(in, line);
    CHECK(line == "-1,,,,,Failed,,");
  }
  SUBCASE("worker count comes from the environment") {
    ::setenv("POINTNLS_WORKERS", "3", 1);
    CHECK(sweep_worker_count() == 3);
    ::setenv("POINTNLS_WORKERS", "zero", 1);
    CHECK(sweep_worker_count() >= 1);
    ::unsetenv("POINTNLS_WORKERS");
  }
}

TEST_CASE("verify suites") {
  CHECK(verify_suite_names().size() == 5);
  CHECK_THROWS_AS(run_verify_suite("nonsense"), ConfigError);
  const auto checks = run_verify_suite("virial");
  REQUIRE_FALSE(checks.empty());
  CHECK(all_passed(checks));
  std::stringstream ss;
  print_verify_table(ss, checks);
  CHECK(ss.str().find("PASS") != std::string::npos);
}
