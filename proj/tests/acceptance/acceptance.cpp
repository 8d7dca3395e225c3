// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pointnls/blowup.hpp"
#include "pointnls/cn_solver.hpp"
#include "pointnls/diagnostics.hpp"
#include "pointnls/exact.hpp"
#include "pointnls/proximity.hpp"
#include "pointnls/scenario.hpp"
#include "pointnls/virial_weight.hpp"
#include "pointnls/volterra.hpp"

using namespace pointnls;
using namespace std::complex_literals;

namespace {

// Tolerances, pinned.
constexpr double kPohozhaevMinOrder = 1.9;
constexpr double kPohozhaevFinalRelError = 1e-5;
constexpr double kSolitaryL2 = 1e-3;
constexpr double kSolitaryMassDrift = 1e-10;
constexpr double kSolitaryEnergyDrift = 1e-8;
constexpr double kSolitaryTrace = 1e-4;
constexpr double kCrossSolverL2 = 5e-3;
constexpr double kGnSlackPerH = 5.0;
constexpr double kGnModulation = 1e-4;
constexpr double kVirialSecond = 0.02;
constexpr double kVirialFirst = 0.01;
constexpr double kWeightIdentity = 1e-12;
constexpr double kWeightConstancy = 0.01;
constexpr double kKineticBoundSlack = 0.02;
constexpr double kNegativeEnergyGrowth = 10.0;
constexpr double kPseudoKineticGrowth = 100.0;
constexpr double kPseudoTStarLo = 0.95, kPseudoTStarHi = 1.05;
constexpr double kPseudoAlphaLo = 0.85, kPseudoAlphaHi = 1.15;
constexpr double kPseudoL2 = 1e-2;
constexpr double kPseudoL2Window = 0.8;
constexpr double kMarginVariation = 0.5;
constexpr double kPseudoConcentration = 2.0 - 0.05;
constexpr double kSuperMinimalConcentration = 2.0 - 0.1;
constexpr double kProximityFinal = 0.25;
constexpr int kProximityRecords = 5;
constexpr double kRateFit = 1e-6;

const PhysicsParams kCubic(3.0);

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::filesystem::path config_path(const char* name) {
  return std::filesystem::path(POINTNLS_SOURCE_DIR) / "configs" / name;
}

TraceOptions every(double interval) {
  TraceOptions o;
  o.diagnostic_interval = interval;
  return o;
}

double max_kinetic(std::span<const DiagnosticsRecord> trace) {
  double k = 0.0;
  for (const auto& r : trace) k = std::max(k, r.kinetic);
  return k;
}

// ---------------------------------------------------------------------------------------------

Outcome pohozhaev() {
  bool pass = true;
  std::string detail;
  for (double p : {3.0, 5.0}) {
    const PhysicsParams params(p);
    const double target = std::pow(2.0, 2.0 / (p - 1.0));
    struct Quantity {
      const char* name;
      std::function<double(const WaveState&)> eval;
    };
    const Quantity qs[] = {
        {"M", [](const WaveState& s) { return l2_norm_sq(s); }},
        {"K", [](const WaveState& s) { return h1_seminorm_sq(s); }},
        {"P", [p](const WaveState& s) { return 0.5 * std::pow(boundary_amplitude(s), p + 1.0); }},
    };
    for (const auto& q : qs) {
      std::vector<double> err;
      for (std::size_t n : {501u, 1001u, 2001u}) {
        const WaveState s = sample_exact(SolitaryWave{}, params, GridSpec(20.0, n), 0.0);
        err.push_back(std::abs(q.eval(s) - target) / target);
      }
      // An error at rounding level has no measurable order and needs none.
      const bool exact = err.back() < 1e-14;
      const double order = exact ? std::numeric_limits<double>::infinity()
                                 : std::min(std::log2(err[0] / err[1]), std::log2(err[1] / err[2]));
      const bool ok = order >= kPohozhaevMinOrder && err.back() <= kPohozhaevFinalRelError;
      pass = pass && ok;
      detail += fmt("p=%g %s err=%.3g order=%.3f%s; ", p, q.name, err.back(), order, ok ? "" : " (fail)");
    }
  }
  return {pass, detail};
}

Outcome solitary_wave() {
  const GridSpec g(20.0, 2001);
  const WaveState u = sample_exact(SolitaryWave{}, kCubic, g, 0.0);
  const EvolveResult r = evolve(u, kCubic, CNConfig{}, 1.0, every(1e-2));
  const double err = l2_distance(r.final_state, sample_exact(SolitaryWave{}, kCubic, g, 1.0));
  double mass_drift = 0.0, energy_drift = 0.0;
  for (const auto& rec : r.trace) {
    mass_drift = std::max(mass_drift, std::abs(rec.mass - r.trace.front().mass) / r.trace.front().mass);
    energy_drift = std::max(energy_drift, std::abs(rec.energy - r.trace.front().energy));
  }
  const BoundaryTrace tr = solve_boundary_trace(u, kCubic, VolterraConfig{}, 1.0);
  double trace_err = 0.0;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    trace_err = std::max(trace_err, std::abs(tr.values[k] - std::sqrt(2.0) * std::exp(1i * tr.times[k])));
  }
  const bool pass = r.stop_reason == StopReason::ReachedEnd && err <= kSolitaryL2 && mass_drift <= kSolitaryMassDrift &&
                    energy_drift <= kSolitaryEnergyDrift && trace_err <= kSolitaryTrace;
  return {pass, fmt("L2 err %.3g, mass drift %.3g, energy drift %.3g, trace err %.3g", err, mass_drift, energy_drift,
                    trace_err)};
}

double cross_discrepancy(std::size_t n, double dt) {
  const GridSpec g(20.0, n);
  const WaveState u = sample_exact(Gaussian{1.2, 1.0, 0.0}, kCubic, g, 0.0);
  CNConfig fd;
  fd.dt0 = dt;
  const EvolveResult r = evolve(u, kCubic, fd, 0.5, every(0.5));
  VolterraConfig vc;
  vc.dt = dt;
  const BoundaryTrace tr = solve_boundary_trace(u, kCubic, vc, 0.5);
  return l2_distance(r.final_state, reconstruct_field(u, tr, kCubic, 0.5, g, vc));
}

Outcome cross_solver() {
  const double coarse = cross_discrepancy(2001, 1e-3);
  const double fine = cross_discrepancy(4001, 5e-4);
  return {coarse <= kCrossSolverL2 && fine < coarse,
          fmt("L2 discrepancy %.3g (N=2001, dt=1e-3), %.3g after refinement (ratio %.3f)", coarse, fine, fine / coarse)};
}

Outcome gagliardo_nirenberg() {
  const GridSpec g(20.0, 2001);
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double min_i = std::numeric_limits<double>::infinity();
  for (int done = 0; done < 1000;) {
    const int terms = 1 + static_cast<int>(u(rng) * 4.0);
    std::vector<Complex> v(g.size());
    for (int k = 0; k < terms; ++k) {
      const Complex c = std::polar(0.2 + 1.8 * u(rng), 2.0 * std::numbers::pi * u(rng));
      const double centre = -4.0 + 8.0 * u(rng);
      const double width = 0.3 + 2.7 * u(rng);
      const double chirp = -1.0 + 2.0 * u(rng);
      for (std::size_t j = 1; j + 1 < g.size(); ++j) {
        const double y = (g.x(j) - centre) / width;
        v[j] += c * std::exp(-y * y) * std::exp(1i * chirp * g.x(j) * g.x(j));
      }
    }
    const WaveState s(g, 0.0, std::move(v));
    if (boundary_amplitude(s) < 0.05) continue;
    min_i = std::min(min_i, gn_functional(s));
    ++done;
  }
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    GroundStateModulation m;
    m.phase = 2.0 * std::numbers::pi * u(rng);
    m.amplitude = 0.5 + 1.5 * u(rng);
    m.scale = 0.5 + 0.4 * u(rng);
    worst = std::max(worst, std::abs(gn_functional(sample_exact(m, kCubic, g, 0.0)) - 1.0));
  }
  const double bound = 1.0 - kGnSlackPerH * g.spacing();
  return {min_i >= bound && worst <= kGnModulation,
          fmt("min I over 1000 mixtures %.4f (bound %.2f); max |I-1| over 50 modulations %.3g", min_i, bound, worst)};
}

Outcome local_virial() {
  const GridSpec g(20.0, 2001);
  TraceOptions opts = every(1e-2);
  opts.virial = VirialWeight(0.05);
  const EvolveResult r = evolve(sample_exact(SolitaryWave{}, kCubic, g, 0.0), kCubic, CNConfig{}, 1.0, opts);
  const VirialCheck c = verify_local_virial(r.trace);
  return {c.second_rel_error <= kVirialSecond && c.first_rel_error <= kVirialFirst,
          fmt("second-difference rel err %.3g, first-difference rel err %.3g over %zu points", c.second_rel_error,
              c.first_rel_error, c.points)};
}

Outcome virial_weight() {
  bool pass = true;
  std::vector<double> ratios;
  double worst_id = 0.0, max2 = -std::numeric_limits<double>::infinity();
  for (double eps : {0.02, 0.05, 0.1}) {
    const VirialWeight w(eps);
    worst_id = std::max({worst_id, std::abs(w.value(0.0)), std::abs(w.first(0.0)), std::abs(w.third(0.0)),
                         std::abs(w.second(0.0) - 2.0)});
    double sup4 = 0.0;
    const double r = 1.1 * w.support_radius();
    constexpr int kSamples = 200000;
    for (int k = -kSamples; k <= kSamples; ++k) {
      const double x = r * k / kSamples;
      sup4 = std::max(sup4, std::abs(w.fourth(x)));
      max2 = std::max(max2, w.second(x));
    }
    ratios.push_back(sup4 / (eps * eps));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  const double spread = (*hi - *lo) / *lo;
  pass = worst_id <= kWeightIdentity && std::abs(max2 - 2.0) <= kWeightIdentity && spread <= kWeightConstancy;
  return {pass, fmt("identities at 0 within %.3g, max a'' = %.15g, sup|a''''|/eps^2 = %.6g..%.6g (spread %.3g)",
                    worst_id, max2, *lo, *hi, spread)};
}

Outcome critical_sweep() {
  const ScenarioConfig base = load_scenario(config_path("gaussian_sweep_p3.json"));
  bool pass = true;
  std::string detail;
  int global_rows = 0, negative_rows = 0;
  for (double a : {1.0, 1.1, 1.2, 1.25, 1.6, 1.8, 2.0}) {
    Gaussian data = std::get<Gaussian>(base.initial);
    data.amplitude = a;
    const WaveState u = sample_exact(data, kCubic, base.grid, 0.0);
    const double m = l2_norm_sq(u), e = energy(u, kCubic);
    const EvolveResult r = evolve(u, kCubic, base.fd, base.t_end, every(base.diagnostic_interval));
    const BlowupReport rep = analyze(r.trace, r.peak_state, kCubic, r.stop_reason);
    if (m < 2.0) {
      ++global_rows;
      const double bound = 2.0 * e / (1.0 - m / 2.0) * (1.0 + kKineticBoundSlack);
      const double kmax = max_kinetic(r.trace);
      const bool ok = rep.verdict == Verdict::Global && kmax <= bound;
      pass = pass && ok;
      detail += fmt("A=%g M=%.4f %s K_max/bound=%.3f%s; ", a, m, to_string(rep.verdict).c_str(), kmax / bound,
                    ok ? "" : " (fail)");
    }
    if (e < 0.0) {
      ++negative_rows;
      const double growth = max_kinetic(r.trace) / r.trace.front().kinetic;
      const bool ok = r.stop_reason != StopReason::ReachedEnd && growth >= kNegativeEnergyGrowth;
      pass = pass && ok;
      detail += fmt("A=%g E=%.3f %s growth %.0fx%s; ", a, e, to_string(r.stop_reason).c_str(), growth,
                    ok ? "" : " (fail)");
    }
  }
  return {pass && global_rows > 0 && negative_rows > 0, detail};
}

Outcome supercritical_dichotomy() {
  const ScenarioConfig base = load_scenario(config_path("ground_state_sweep_p5.json"));
  bool pass = true;
  std::string detail;
  for (double c : {0.8, 0.9, 1.1, 1.2}) {
    GroundStateModulation data = std::get<GroundStateModulation>(base.initial);
    data.amplitude = c;
    const WaveState u = sample_exact(data, base.physics, base.grid, 0.0);
    const Prediction pred = classify_initial_data(u, base.physics);
    const EvolveResult r = evolve(u, base.physics, base.fd, base.t_end, every(base.diagnostic_interval));
    const BlowupReport rep = analyze(r.trace, r.peak_state, base.physics, r.stop_reason);
    const bool match = (pred == Prediction::GlobalPredicted && rep.verdict == Verdict::Global) ||
                       (pred == Prediction::BlowupPredicted && rep.verdict == Verdict::Blowup);
    const double side = r.trace.front().eta - 1.0;
    bool trapped = side != 0.0;
    for (const auto& rec : r.trace) trapped = trapped && (rec.eta - 1.0) * side > 0.0;
    pass = pass && match && trapped;
    detail += fmt("c=%g eta0=%.4f %s/%s%s; ", c, r.trace.front().eta, to_string(pred).c_str(),
                  to_string(rep.verdict).c_str(), trapped ? "" : " untrapped");
  }
  return {pass, detail};
}

// Shared by criteria 9-12.
struct BlowupRun {
  std::vector<DiagnosticsRecord> trace;
  StopReason stop_reason = StopReason::ReachedEnd;
  BlowupReport report;
  double exact_l2 = 0.0;  // pseudoconformal only, over records with t <= kPseudoL2Window
  std::deque<WaveState> last_states;
};

BlowupRun run_blowup_scenario(const char* config, bool compare_exact) {
  const ScenarioConfig cfg = load_scenario(config_path(config));
  const WaveState u = sample_exact(cfg.initial, cfg.physics, cfg.grid, 0.0);
  BlowupRun run;
  auto observer = [&](const DiagnosticsRecord& rec, const WaveState& s) {
    if (compare_exact && rec.t <= kPseudoL2Window) {
      run.exact_l2 = std::max(run.exact_l2, l2_distance(s, sample_exact(cfg.initial, cfg.physics, cfg.grid, rec.t)));
    }
    run.last_states.push_back(s);
    if (run.last_states.size() > kProximityRecords + 1) run.last_states.pop_front();
  };
  const EvolveResult r = evolve(u, cfg.physics, cfg.fd, cfg.t_end, every(cfg.diagnostic_interval), observer);
  run.trace = r.trace;
  run.stop_reason = r.stop_reason;
  // A state flagged by the resolution stop is no longer resolved.
  if (r.stop_reason == StopReason::ResolutionStop) run.last_states.pop_back();
  while (run.last_states.size() > kProximityRecords) run.last_states.pop_front();
  run.report = analyze(r.trace, r.peak_state, cfg.physics, r.stop_reason);
  return run;
}

const BlowupRun& pseudoconformal_run() {
  static const BlowupRun run = run_blowup_scenario("pseudoconformal.json", true);
  return run;
}

const BlowupRun& super_minimal_run() {
  static const BlowupRun run = run_blowup_scenario("supercritical_mass_chirp.json", false);
  return run;
}

Outcome minimal_mass_blowup() {
  const BlowupRun& run = pseudoconformal_run();
  const auto& rep = run.report;
  const double growth = rep.peak_growth * rep.peak_growth;
  const bool fitted = rep.t_star_estimate && rep.rate_exponent;
  const double ts = rep.t_star_estimate.value_or(std::nan(""));
  const double alpha = rep.rate_exponent.value_or(std::nan(""));
  const bool pass = growth >= kPseudoKineticGrowth && fitted && ts >= kPseudoTStarLo && ts <= kPseudoTStarHi &&
                    alpha >= kPseudoAlphaLo && alpha <= kPseudoAlphaHi && run.exact_l2 <= kPseudoL2;
  return {pass, fmt("kinetic growth %.1fx (%s, %s), t* = %.5f, alpha = %.4f, max L2 err for t <= 0.8 = %.3g",
                    growth, to_string(rep.verdict).c_str(), to_string(rep.stop_reason).c_str(), ts, alpha,
                    run.exact_l2)};
}

Outcome lower_bound_margin() {
  const BlowupRun& run = pseudoconformal_run();
  if (!run.report.t_star_estimate) return {false, "no t* estimate"};
  const double ts = *run.report.t_star_estimate;
  const auto window = growth_window(run.trace);
  const auto margins = lower_bound_margins(window, kCubic, ts);
  if (margins.empty()) return {false, "no record survives the |E|^{1/2} filter"};
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (auto [t, m] : margins) {
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  const double variation = (hi - lo) / lo;
  return {lo > 0.0 && variation <= kMarginVariation,
          fmt("margin min %.4g, max %.4g over %zu records of the last decade; variation (max-min)/min = %.3g", lo, hi,
              margins.size(), variation)};
}

Outcome mass_concentration_check() {
  const auto& pc = pseudoconformal_run().report;
  const auto& sm = super_minimal_run().report;
  const double a = pc.concentration_value.value_or(std::nan(""));
  const double b = sm.concentration_value.value_or(std::nan(""));
  return {a >= kPseudoConcentration && b >= kSuperMinimalConcentration,
          fmt("pseudoconformal %.5f (>= %.2f); M=2.2 run %.5f (>= %.2f, %s at t = %.5f)", a, kPseudoConcentration, b,
              kSuperMinimalConcentration, to_string(sm.verdict).c_str(), sm.peak_time)};
}

Outcome near_minimal_proximity() {
  const BlowupRun& run = super_minimal_run();
  if (run.last_states.size() < kProximityRecords) return {false, "fewer than 5 resolved records"};
  std::vector<double> eps;
  for (const auto& s : run.last_states) eps.push_back(ground_state_proximity(s).distance);
  bool monotone = true;
  for (std::size_t k = 1; k < eps.size(); ++k) monotone = monotone && eps[k] <= eps[k - 1];
  std::string detail = "eps over the last 5 records:";
  for (double e : eps) detail += fmt(" %.4f", e);
  detail += fmt(" (%s)", monotone ? "nonincreasing" : "not monotone");
  return {monotone && eps.back() <= kProximityFinal, detail};
}

Outcome rate_fit_oracle() {
  bool pass = true;
  std::string detail;
  for (auto [alpha, t_star] : {std::pair{1.0, 1.0}, std::pair{0.5, 2.0}, std::pair{2.0, 1.0}}) {
    std::vector<DiagnosticsRecord> trace;
    for (int k = 0; k <= 100; ++k) {
      DiagnosticsRecord r;
      r.t = t_star * (1.0 - std::pow(10.0, -3.0 * k / 100.0));
      r.kinetic = std::pow(t_star - r.t, -2.0 * alpha);
      trace.push_back(r);
    }
    const RateFit fit = fit_blowup_rate(trace);
    const bool ok = std::abs(fit.t_star - t_star) <= kRateFit && std::abs(fit.alpha - alpha) <= kRateFit;
    pass = pass && ok;
    detail += fmt("(alpha %g, t* %g) -> (%.9f, %.9f); ", alpha, t_star, fit.alpha, fit.t_star);
  }
  return {pass, detail};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"ground-state norms converge at order 2", pohozhaev},
      {"solitary-wave propagation", solitary_wave},
      {"cross-solver agreement", cross_solver},
      {"sharp Gagliardo-Nirenberg suite", gagliardo_nirenberg},
      {"local virial identity", local_virial},
      {"virial weight certificate", virial_weight},
      {"critical dichotomy sweep (p=3)", critical_sweep},
      {"supercritical dichotomy (p=5)", supercritical_dichotomy},
      {"minimal-mass blow-up reproduction", minimal_mass_blowup},
      {"lower-bound margin", lower_bound_margin},
      {"mass concentration", mass_concentration_check},
      {"near-minimal proximity", near_minimal_proximity},
      {"rate-fit oracle", rate_fit_oracle},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failed;
    std::printf("%s  %2d  %-40s %s [%.1fs]\n", out.pass ? "PASS" : "FAIL", index, c.name, out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
