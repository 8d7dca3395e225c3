#include "pointnls/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "pointnls/errors.hpp"
#include "pointnls/initial_data_io.hpp"
#include "pointnls/svg_plot.hpp"
#include "pointnls/trace_io.hpp"
#include "pointnls/virial_weight.hpp"

namespace pointnls {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.contains(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

double number(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  return v.get<double>();
}

long long integer(const json& obj, const char* key, long long fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be an integer");
  const double d = v.get<double>();
  if (d != std::floor(d) || std::abs(d) > 9e15) throw ConfigError(where + "." + key + " must be an integer");
  return static_cast<long long>(d);
}

ExactSolutionSpec parse_initial(const json& j, const std::filesystem::path& base_dir) {
  const std::string where = "initial";
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError("initial.kind is required");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "solitary_wave") {
    check_keys(j, {"kind"}, where);
    return SolitaryWave{};
  }
  if (kind == "ground_state_modulation") {
    check_keys(j, {"kind", "amplitude", "scale", "phase", "chirp"}, where);
    GroundStateModulation m;
    m.amplitude = number(j, "amplitude", m.amplitude, where);
    m.scale = number(j, "scale", m.scale, where);
    m.phase = number(j, "phase", m.phase, where);
    m.chirp = number(j, "chirp", m.chirp, where);
    if (!(m.amplitude > 0.0) || !(m.scale > 0.0)) {
      throw ConfigError("initial: ground_state_modulation needs amplitude > 0 and scale > 0");
    }
    return m;
  }
  if (kind == "pseudoconformal") {
    check_keys(j, {"kind", "lambda", "blowup_time"}, where);
    Pseudoconformal s;
    s.lambda = number(j, "lambda", s.lambda, where);
    s.blowup_time = number(j, "blowup_time", s.blowup_time, where);
    if (!(s.lambda > 0.0) || !(s.blowup_time > 0.0)) {
      throw ConfigError("initial: pseudoconformal needs lambda > 0 and blowup_time > 0");
    }
    return s;
  }
  if (kind == "gaussian") {
    check_keys(j, {"kind", "amplitude", "width", "chirp"}, where);
    Gaussian g;
    g.amplitude = number(j, "amplitude", g.amplitude, where);
    g.width = number(j, "width", g.width, where);
    g.chirp = number(j, "chirp", g.chirp, where);
    if (!(g.width > 0.0)) throw ConfigError("initial: gaussian width must be positive");
    return g;
  }
  if (kind == "custom") {
    check_keys(j, {"kind", "file"}, where);
    if (!j.contains("file") || !j.at("file").is_string()) throw ConfigError("initial.file is required for custom data");
    std::filesystem::path file = j.at("file").get<std::string>();
    if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
    return read_samples_csv(file);
  }
  throw ConfigError("initial.kind '" + kind + "' is not one of solitary_wave, ground_state_modulation, "
                    "pseudoconformal, gaussian, custom");
}

CNConfig parse_fd(const json& j) {
  const std::string where = "solver.fd";
  check_keys(j, {"dt0", "adapt", "adapt_constant", "fixed_point_tol", "max_inner_iters", "stop_gradient_factor",
                 "stop_resolution_ratio"},
             where);
  CNConfig c;
  c.dt0 = number(j, "dt0", c.dt0, where);
  if (j.contains("adapt")) {
    if (!j.at("adapt").is_boolean()) throw ConfigError("solver.fd.adapt must be a boolean");
    c.adapt = j.at("adapt").get<bool>();
  }
  c.adapt_constant = number(j, "adapt_constant", c.adapt_constant, where);
  c.fixed_point_tol = number(j, "fixed_point_tol", c.fixed_point_tol, where);
  c.max_inner_iters = static_cast<int>(integer(j, "max_inner_iters", c.max_inner_iters, where));
  c.stop_gradient_factor = number(j, "stop_gradient_factor", c.stop_gradient_factor, where);
  c.stop_resolution_ratio = number(j, "stop_resolution_ratio", c.stop_resolution_ratio, where);
  return c;
}

VolterraConfig parse_volterra(const json& j) {
  const std::string where = "solver.volterra";
  check_keys(j, {"dt", "picard_tol", "picard_max", "free_field_quadrature_points"}, where);
  VolterraConfig c;
  c.dt = number(j, "dt", c.dt, where);
  c.picard_tol = number(j, "picard_tol", c.picard_tol, where);
  c.picard_max = static_cast<int>(integer(j, "picard_max", c.picard_max, where));
  c.free_field_quadrature_points =
      static_cast<int>(integer(j, "free_field_quadrature_points", c.free_field_quadrature_points, where));
  return c;
}

OutputSet parse_outputs(const json& j) {
  if (!j.is_array()) throw ConfigError("outputs must be an array of names");
  OutputSet o{false, false, false, false};
  for (const auto& item : j) {
    if (!item.is_string()) throw ConfigError("outputs entries must be strings");
    const std::string name = item.get<std::string>();
    if (name == "trace_csv") o.trace_csv = true;
    else if (name == "report_json") o.report_json = true;
    else if (name == "field_snapshots") o.field_snapshots = true;
    else if (name == "svg_plots") o.svg_plots = true;
    else throw ConfigError("unknown output '" + name + "'");
  }
  return o;
}

ojson optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

ojson finite_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

StopReason stop_reason_from_string(const std::string& s) {
  if (s == "blowup_stop") return StopReason::BlowupStop;
  if (s == "resolution_stop") return StopReason::ResolutionStop;
  if (s == "reached_end") return StopReason::ReachedEnd;
  throw ConfigError("unknown stop_reason '" + s + "'");
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "Blowup") return Verdict::Blowup;
  if (s == "ResolutionLimited") return Verdict::ResolutionLimited;
  if (s == "Global") return Verdict::Global;
  throw ConfigError("unknown verdict '" + s + "'");
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

// Drift relative to the first record.
void fill_drifts(ScenarioReport& report, const std::vector<DiagnosticsRecord>& trace) {
  if (trace.empty()) return;
  const double m0 = trace.front().mass;
  const double e0 = trace.front().energy;
  for (const auto& r : trace) {
    if (m0 > 0.0) report.max_mass_drift = std::max(report.max_mass_drift, std::abs(r.mass - m0) / m0);
    report.max_energy_drift = std::max(report.max_energy_drift, std::abs(r.energy - e0));
  }
}

struct RunArtifacts {
  std::vector<DiagnosticsRecord> trace;
  std::vector<double> concentration;  // per record, NaN when undefined
  std::optional<WaveState> peak;
  std::optional<WaveState> final_state;
  std::optional<WaveState> volterra_final;
  StopReason stop_reason = StopReason::ReachedEnd;
};

double concentration_or_nan(const WaveState& s, const DiagnosticsRecord& r) {
  if (!(r.kinetic > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  try {
    return mass_concentration(s, default_concentration_mu(r.kinetic));
  } catch (const ResolutionError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

void run_fd(const ScenarioConfig& cfg, const WaveState& initial, RunArtifacts& art, ScenarioReport& report) {
  TraceOptions opts;
  opts.diagnostic_interval = cfg.diagnostic_interval;
  opts.virial = VirialWeight(cfg.virial_epsilon);
  double peak_kin = -1.0;
  const bool want_conc = cfg.outputs.svg_plots && cfg.physics.mass_critical();
  auto observer = [&](const DiagnosticsRecord& rec, const WaveState& s) {
    art.trace.push_back(rec);
    if (want_conc) art.concentration.push_back(concentration_or_nan(s, rec));
    if (rec.kinetic > peak_kin) {
      peak_kin = rec.kinetic;
      art.peak = s;
    }
    art.final_state = s;
  };
  EvolveResult res = evolve(initial, cfg.physics, cfg.fd, cfg.t_end, opts, observer);
  art.stop_reason = res.stop_reason;
  art.final_state = res.final_state;
  report.steps = res.steps;
  report.halvings = res.halvings;
}

// Diagnostic times t0 + k * interval strictly inside (t0, t_end), then t_end.
std::vector<double> diagnostic_times(double t0, double t_end, double interval) {
  std::vector<double> ts;
  for (long k = 1;; ++k) {
    const double t = t0 + static_cast<double>(k) * interval;
    if (t >= t_end * (1.0 - 1e-12)) break;
    ts.push_back(t);
  }
  ts.push_back(t_end);
  return ts;
}

void run_volterra_only(const ScenarioConfig& cfg, const WaveState& initial, RunArtifacts& art,
                       ScenarioReport& report) {
  const VirialWeight weight(cfg.virial_epsilon);
  const bool want_conc = cfg.outputs.svg_plots && cfg.physics.mass_critical();
  double peak_kin = -1.0;
  auto push = [&](const WaveState& s) {
    DiagnosticsRecord rec = make_record(s, cfg.physics, &weight, s.time() > initial.time() ? cfg.volterra.dt : 0.0);
    art.trace.push_back(rec);
    if (want_conc) art.concentration.push_back(concentration_or_nan(s, rec));
    if (rec.kinetic > peak_kin) {
      peak_kin = rec.kinetic;
      art.peak = s;
    }
    art.final_state = s;
  };
  push(initial);
  const BoundaryTrace trace = solve_boundary_trace(initial, cfg.physics, cfg.volterra, cfg.t_end);
  report.steps = static_cast<long>(trace.times.size()) - 1;
  const double t_last = trace.times.back();
  for (double t : diagnostic_times(initial.time(), cfg.t_end, cfg.diagnostic_interval)) {
    push(reconstruct_field(initial, trace, cfg.physics, std::min(t, t_last), cfg.grid, cfg.volterra));
  }
}

void run_cross_validation(const ScenarioConfig& cfg, const WaveState& initial, RunArtifacts& art,
                          ScenarioReport& report) {
  const double t = art.final_state->time();
  if (!(t > initial.time())) return;
  const BoundaryTrace trace = solve_boundary_trace(initial, cfg.physics, cfg.volterra, t);
  WaveState v = reconstruct_field(initial, trace, cfg.physics, std::min(t, trace.times.back()), cfg.grid, cfg.volterra);
  report.cross_validation_time = t;
  report.cross_validation_l2 = l2_distance(*art.final_state, v);
  art.volterra_final = std::move(v);
}

void write_plots(const std::filesystem::path& dir, const RunArtifacts& art, const ScenarioReport& report) {
  LinePlot kin{"kinetic term", "t", "||psi_x||^2", {}, {}, false, true};
  for (const auto& r : art.trace) {
    kin.x.push_back(r.t);
    kin.y.push_back(r.kinetic);
  }
  write_svg_line_plot(dir / "kinetic.svg", kin);

  if (report.analysis.t_star_estimate) {
    const double ts = *report.analysis.t_star_estimate;
    LinePlot rate{"blow-up rate", "t* - t", "||psi_x||", {}, {}, true, true};
    for (const auto& r : art.trace) {
      if (r.t < ts) {
        rate.x.push_back(ts - r.t);
        rate.y.push_back(std::sqrt(r.kinetic));
      }
    }
    write_svg_line_plot(dir / "rate.svg", rate);
  }
  if (!art.concentration.empty()) {
    LinePlot conc{"mass concentration", "t", "mass in |x| <= mu/||psi_x||", {}, {}, false, false};
    for (std::size_t k = 0; k < art.trace.size() && k < art.concentration.size(); ++k) {
      conc.x.push_back(art.trace[k].t);
      conc.y.push_back(art.concentration[k]);
    }
    write_svg_line_plot(dir / "concentration.svg", conc);
  }
}

void write_artifacts(const ScenarioConfig& cfg, const std::filesystem::path& dir, const RunArtifacts& art,
                     const ScenarioReport& report, const WaveState& initial) {
  if (cfg.outputs.trace_csv) write_trace_csv(dir / "trace.csv", art.trace);
  if (cfg.outputs.field_snapshots) {
    write_samples_csv(dir / "snapshot_initial.csv", initial);
    if (art.peak) write_samples_csv(dir / "snapshot_peak.csv", *art.peak);
    if (art.final_state) write_samples_csv(dir / "snapshot_final.csv", *art.final_state);
    if (art.volterra_final) write_samples_csv(dir / "volterra_final.csv", *art.volterra_final);
  }
  if (cfg.outputs.report_json) {
    std::ofstream out(dir / "report.json");
    if (!out) throw ConfigError("cannot write " + (dir / "report.json").string());
    out << report_to_json(cfg, report) << '\n';
  }
  if (cfg.outputs.svg_plots) {
    try {
      write_plots(dir, art, report);
    } catch (...) {
      // Plots never affect the outcome.
    }
  }
}

}  // namespace

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::FD: return "fd";
    case SolverKind::Volterra: return "volterra";
    case SolverKind::Both: return "both";
  }
  return "fd";
}

void ScenarioConfig::validate() const {
  fd.validate();
  volterra.validate();
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be positive");
  if (!(diagnostic_interval > 0.0)) throw ConfigError("diagnostic_interval must be positive");
  if (!(virial_epsilon > 0.0)) throw ConfigError("virial_epsilon must be positive");
  if (solver != SolverKind::Volterra && diagnostic_interval < fd.dt0) {
    throw ConfigError("diagnostic_interval must be >= the solver base dt (solver.fd.dt0)");
  }
  if (solver != SolverKind::FD && diagnostic_interval < volterra.dt) {
    throw ConfigError("diagnostic_interval must be >= the solver base dt (solver.volterra.dt)");
  }
  if (const auto* s = std::get_if<Pseudoconformal>(&initial)) {
    if (!physics.mass_critical()) throw ConfigError("pseudoconformal initial data requires p = 3");
    if (s->blowup_time <= 0.0) throw ConfigError("pseudoconformal blowup_time must be positive");
  }
}

ScenarioConfig parse_scenario(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(j, {"physics", "grid", "initial", "solver", "t_end", "diagnostic_interval", "virial_epsilon", "outputs",
                 "seed"},
             "config");
  ScenarioConfig cfg;
  try {
    if (j.contains("physics")) {
      check_keys(j.at("physics"), {"p"}, "physics");
      cfg.physics = PhysicsParams(number(j.at("physics"), "p", 3.0, "physics"));
    }
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      check_keys(g, {"half_width", "num_points"}, "grid");
      const long long n = integer(g, "num_points", 2001, "grid");
      if (n < 0) throw ConfigError("grid.num_points must be odd and >= 3");
      cfg.grid = GridSpec(number(g, "half_width", 20.0, "grid"), static_cast<std::size_t>(n));
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!j.contains("initial")) throw ConfigError("initial is required");
  cfg.initial = parse_initial(j.at("initial"), base_dir);

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    check_keys(s, {"kind", "fd", "volterra"}, "solver");
    if (s.contains("kind")) {
      if (!s.at("kind").is_string()) throw ConfigError("solver.kind must be a string");
      const std::string kind = s.at("kind").get<std::string>();
      if (kind == "fd") cfg.solver = SolverKind::FD;
      else if (kind == "volterra") cfg.solver = SolverKind::Volterra;
      else if (kind == "both") cfg.solver = SolverKind::Both;
      else throw ConfigError("solver.kind must be fd, volterra or both");
    }
    if (s.contains("fd")) cfg.fd = parse_fd(s.at("fd"));
    if (s.contains("volterra")) cfg.volterra = parse_volterra(s.at("volterra"));
  }
  cfg.t_end = number(j, "t_end", cfg.t_end, "config");
  cfg.diagnostic_interval = number(j, "diagnostic_interval", cfg.diagnostic_interval, "config");
  cfg.virial_epsilon = number(j, "virial_epsilon", cfg.virial_epsilon, "config");
  if (j.contains("outputs")) cfg.outputs = parse_outputs(j.at("outputs"));
  const long long seed = integer(j, "seed", 0, "config");
  if (seed < 0) throw ConfigError("seed must be non-negative");
  cfg.seed = static_cast<std::uint64_t>(seed);
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.parent_path());
}

InitialSummary summarize_initial(const WaveState& initial, const PhysicsParams& params) {
  InitialSummary s;
  s.mass = l2_norm_sq(initial);
  s.energy = energy(initial, params);
  s.eta0 = eta_or_surrogate(initial, params);
  s.predicted = classify_initial_data(initial, params);
  return s;
}

ScenarioResult execute_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  ScenarioResult result;
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    result.exit_code = kExitConfigError;
    result.message = e.what();
    return result;
  }

  std::optional<WaveState> initial;
  try {
    initial = sample_exact(cfg.initial, cfg.physics, cfg.grid, 0.0);
  } catch (const std::exception& e) {
    result.exit_code = kExitConfigError;
    result.message = std::string("initial data: ") + e.what();
    return result;
  }
  try {
    std::filesystem::create_directories(out_dir);
  } catch (const std::filesystem::filesystem_error& e) {
    result.exit_code = kExitConfigError;
    result.message = std::string("output directory: ") + e.what();
    return result;
  }

  ScenarioReport& report = result.report;
  report.initial = summarize_initial(*initial, cfg.physics);
  RunArtifacts art;
  try {
    if (cfg.solver == SolverKind::Volterra) {
      run_volterra_only(cfg, *initial, art, report);
    } else {
      run_fd(cfg, *initial, art, report);
      if (cfg.solver == SolverKind::Both) run_cross_validation(cfg, *initial, art, report);
    }
  } catch (const std::exception& e) {
    report.ok = false;
    report.error = e.what();
    result.exit_code = kExitNumericalFailure;
    result.message = std::string("numerical failure: ") + e.what();
  }

  fill_drifts(report, art.trace);
  if (art.final_state) report.final_time = art.final_state->time();
  if (!art.trace.empty() && art.peak) {
    report.analysis = analyze(art.trace, *art.peak, cfg.physics, art.stop_reason);
  }
  try {
    write_artifacts(cfg, out_dir, art, report, *initial);
  } catch (const std::exception& e) {
    result.exit_code = kExitConfigError;
    result.message = e.what();
  }
  return result;
}

int run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  return execute_scenario(cfg, out_dir).exit_code;
}

std::string report_to_json(const ScenarioConfig& cfg, const ScenarioReport& report) {
  ojson j;
  j["status"] = report.ok ? "ok" : "numerical_failure";
  if (!report.ok) j["error"] = report.error;
  j["scenario"] = {
      {"p", cfg.physics.p()},
      {"half_width", cfg.grid.half_width()},
      {"num_points", cfg.grid.size()},
      {"initial_kind", kind_name(cfg.initial)},
      {"solver", to_string(cfg.solver)},
      {"t_end", cfg.t_end},
      {"diagnostic_interval", cfg.diagnostic_interval},
      {"seed", cfg.seed},
  };
  j["initial"] = {
      {"mass", report.initial.mass},
      {"energy", report.initial.energy},
      {"eta0", report.initial.eta0},
      {"predicted", to_string(report.initial.predicted)},
  };
  const BlowupReport& a = report.analysis;
  j["analysis"] = {
      {"verdict", to_string(a.verdict)},
      {"stop_reason", to_string(a.stop_reason)},
      {"peak_time", a.peak_time},
      {"peak_growth", finite_or_null(a.peak_growth)},
      {"t_star_estimate", optional_number(a.t_star_estimate)},
      {"rate_exponent", optional_number(a.rate_exponent)},
      {"rate_fit_residual", optional_number(a.rate_fit_residual)},
      {"lower_bound_margin", optional_number(a.lower_bound_margin)},
      {"concentration_value", optional_number(a.concentration_value)},
      {"proximity_epsilon", optional_number(a.proximity_epsilon)},
  };
  j["run"] = {
      {"final_time", report.final_time},
      {"steps", report.steps},
      {"halvings", report.halvings},
      {"max_mass_drift", report.max_mass_drift},
      {"max_energy_drift", report.max_energy_drift},
  };
  if (report.cross_validation_l2) {
    j["cross_validation"] = {
        {"t", *report.cross_validation_time},
        {"l2_discrepancy", *report.cross_validation_l2},
    };
  }
  return j.dump(2);
}

BlowupReport read_report_analysis(const std::filesystem::path& report_json) {
  const json j = read_json_file(report_json);
  try {
    const json& a = j.at("analysis");
    BlowupReport r;
    r.verdict = verdict_from_string(a.at("verdict").get<std::string>());
    r.stop_reason = stop_reason_from_string(a.at("stop_reason").get<std::string>());
    r.peak_time = a.at("peak_time").get<double>();
    r.peak_growth = a.at("peak_growth").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                                  : a.at("peak_growth").get<double>();
    r.t_star_estimate = read_optional(a, "t_star_estimate");
    r.rate_exponent = read_optional(a, "rate_exponent");
    r.rate_fit_residual = read_optional(a, "rate_fit_residual");
    r.lower_bound_margin = read_optional(a, "lower_bound_margin");
    r.concentration_value = read_optional(a, "concentration_value");
    r.proximity_epsilon = read_optional(a, "proximity_epsilon");
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(report_json.string() + ": " + e.what());
  }
}

BlowupReport reanalyze_output(const std::filesystem::path& out_dir) {
  const json j = read_json_file(out_dir / "report.json");
  double p = 0.0;
  double half_width = 0.0;
  std::size_t n = 0;
  StopReason stop = StopReason::ReachedEnd;
  try {
    const json& s = j.at("scenario");
    p = s.at("p").get<double>();
    half_width = s.at("half_width").get<double>();
    n = s.at("num_points").get<std::size_t>();
    stop = stop_reason_from_string(j.at("analysis").at("stop_reason").get<std::string>());
  } catch (const json::exception& e) {
    throw ConfigError("report.json: " + std::string(e.what()));
  }
  const PhysicsParams params(p);
  const GridSpec grid(half_width, n);
  const auto trace = read_trace_csv(out_dir / "trace.csv");
  const CustomSamples peak = read_samples_csv(out_dir / "snapshot_peak.csv");
  if (peak.values.size() != grid.size()) throw ConfigError("snapshot_peak.csv does not match the report grid");
  double peak_time = 0.0;
  double peak_kin = -1.0;
  for (const auto& r : trace) {
    if (r.kinetic > peak_kin) {
      peak_kin = r.kinetic;
      peak_time = r.t;
    }
  }
  const WaveState peak_state(grid, peak_time, peak.values);
  return analyze(trace, peak_state, params, stop);
}

}  // namespace pointnls
