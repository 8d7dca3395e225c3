#include "pointnls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <limits>
#include <optional>
#include <random>

#include "pointnls/cn_solver.hpp"
#include "pointnls/diagnostics.hpp"
#include "pointnls/errors.hpp"
#include "pointnls/exact.hpp"
#include "pointnls/volterra.hpp"

namespace pointnls {
namespace {

using namespace std::complex_literals;

VerifyCheck at_most(std::string suite, std::string name, double measured, double tol) {
  return {std::move(suite), std::move(name), measured, "<=", tol, measured <= tol};
}

VerifyCheck at_least(std::string suite, std::string name, double measured, double tol) {
  return {std::move(suite), std::move(name), measured, ">=", tol, measured >= tol};
}

const PhysicsParams kCubic(3.0);
const GridSpec kDefaultGrid(20.0, 2001);

EvolveResult run_fd(const WaveState& initial, double t_end, double dt, double interval,
                    std::optional<VirialWeight> weight = std::nullopt) {
  CNConfig cfg;
  cfg.dt0 = dt;
  TraceOptions opts;
  opts.diagnostic_interval = interval;
  opts.virial = weight;
  return evolve(initial, kCubic, cfg, t_end, opts);
}

void conservation(std::vector<VerifyCheck>& out, std::uint64_t seed) {
  const std::string s = "conservation";
  auto drift_checks = [&](const std::string& label, const EvolveResult& r) {
    const double m0 = r.trace.front().mass;
    const double e0 = r.trace.front().energy;
    double dm = 0.0;
    double de = 0.0;
    for (const auto& rec : r.trace) {
      dm = std::max(dm, std::abs(rec.mass - m0) / m0);
      de = std::max(de, std::abs(rec.energy - e0));
    }
    out.push_back(at_most(s, label + " mass drift (relative)", dm, 1e-10));
    out.push_back(at_most(s, label + " energy drift / (1+|E0|)", de / (1.0 + std::abs(e0)), 1e-8));
  };
  drift_checks("solitary wave t<=1", run_fd(sample_exact(SolitaryWave{}, kCubic, kDefaultGrid, 0.0), 1.0, 1e-3, 1e-2));
  drift_checks("gaussian A=1.2 t<=1",
               run_fd(sample_exact(Gaussian{1.2, 1.0, 0.0}, kCubic, kDefaultGrid, 0.0), 1.0, 1e-3, 1e-2));

  // One step on random smooth data.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const GridSpec g(10.0, 401);
  double worst = 0.0;
  CNConfig cfg;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> v(g.size());
    const double c1 = u(rng), c2 = u(rng), c3 = u(rng), s1 = 1.0 + 0.5 * u(rng);
    for (std::size_t j = 1; j + 1 < g.size(); ++j) {
      const double x = g.x(j);
      v[j] = Complex(c1 + c2 * x, c3 - c1 * x) * std::exp(-x * x / (s1 * s1));
    }
    const WaveState st(g, 0.0, std::move(v));
    const StepOutcome step = cn_step(st, kCubic, cfg, 1e-3);
    worst = std::max(worst, std::abs(l2_norm_sq(step.state) - l2_norm_sq(st)) / l2_norm_sq(st));
  }
  out.push_back(at_most(s, "random smooth data one-step mass change", worst, 10.0 * cfg.fixed_point_tol));
}

void gagliardo_nirenberg(std::vector<VerifyCheck>& out, std::uint64_t seed) {
  const std::string s = "gn";
  const GridSpec& g = kDefaultGrid;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double min_i = std::numeric_limits<double>::infinity();
  int done = 0;
  while (done < 1000) {
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
    const WaveState st(g, 0.0, std::move(v));
    if (boundary_amplitude(st) < 0.05) continue;
    min_i = std::min(min_i, gn_functional(st));
    ++done;
  }
  out.push_back(at_least(s, "min I over 1000 random mixtures (bound 1 - 5h)", min_i, 1.0 - 5.0 * g.spacing()));

  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    GroundStateModulation m;
    m.phase = 2.0 * std::numbers::pi * u(rng);
    m.amplitude = 0.5 + 1.5 * u(rng);
    m.scale = 0.5 + 0.4 * u(rng);
    worst = std::max(worst, std::abs(gn_functional(sample_exact(m, kCubic, g, 0.0)) - 1.0));
  }
  out.push_back(at_most(s, "max |I - 1| over 50 ground-state modulations", worst, 1e-4));
}

void virial(std::vector<VerifyCheck>& out) {
  const std::string s = "virial";
  const EvolveResult r =
      run_fd(sample_exact(SolitaryWave{}, kCubic, kDefaultGrid, 0.0), 1.0, 1e-3, 1e-2, VirialWeight(0.05));
  const VirialCheck c = verify_local_virial(r.trace);
  out.push_back(at_most(s, "solitary wave second-difference vs rhs (relative)", c.second_rel_error, 0.02));
  out.push_back(at_most(s, "solitary wave first-difference vs 2 Im a' conj(psi) psi_x", c.first_rel_error, 0.01));
}

double order(double coarse, double fine, double ratio) { return std::log(coarse / fine) / std::log(ratio); }

void convergence(std::vector<VerifyCheck>& out) {
  const std::string s = "convergence";
  const double t = 0.5;

  double prev = 0.0;
  double min_order = std::numeric_limits<double>::infinity();
  for (std::size_t n : {501u, 1001u, 2001u}) {
    const GridSpec g(20.0, n);
    const EvolveResult r = run_fd(sample_exact(SolitaryWave{}, kCubic, g, 0.0), t, 1e-4, t);
    const double err = l2_distance(r.final_state, sample_exact(SolitaryWave{}, kCubic, g, t));
    if (prev > 0.0) min_order = std::min(min_order, order(prev, err, 2.0));
    prev = err;
  }
  out.push_back(at_least(s, "FD order in h (solitary wave, dt=1e-4)", min_order, 1.5));

  // The scheme's own stationary state isolates the time discretization.
  prev = 0.0;
  min_order = std::numeric_limits<double>::infinity();
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    const WaveState w0 = discrete_solitary_wave(kCubic, kDefaultGrid, 0.0);
    const EvolveResult r = run_fd(w0, t, dt, t);
    const double err = l2_distance(r.final_state, discrete_solitary_wave(kCubic, kDefaultGrid, t));
    if (prev > 0.0) min_order = std::min(min_order, order(prev, err, 2.0));
    prev = err;
  }
  out.push_back(at_least(s, "FD order in dt (discrete solitary wave, N=2001)", min_order, 1.9));

  prev = 0.0;
  min_order = std::numeric_limits<double>::infinity();
  const WaveState phi0 = sample_exact(SolitaryWave{}, kCubic, kDefaultGrid, 0.0);
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    VolterraConfig vc;
    vc.dt = dt;
    const BoundaryTrace tr = solve_boundary_trace(phi0, kCubic, vc, 1.0);
    double err = 0.0;
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      err = std::max(err, std::abs(tr.values[k] - std::sqrt(2.0) * std::exp(1i * tr.times[k])));
    }
    if (prev > 0.0) min_order = std::min(min_order, order(prev, err, 2.0));
    prev = err;
  }
  out.push_back(at_least(s, "Volterra trace order in dt (vs sqrt2 e^{it})", min_order, 1.5));
}

double cross_discrepancy(std::size_t n, double dt) {
  const GridSpec g(20.0, n);
  const WaveState init = sample_exact(Gaussian{1.2, 1.0, 0.0}, kCubic, g, 0.0);
  const EvolveResult fd = run_fd(init, 0.5, dt, 0.5);
  VolterraConfig vc;
  vc.dt = dt;
  const BoundaryTrace tr = solve_boundary_trace(init, kCubic, vc, 0.5);
  return l2_distance(fd.final_state, reconstruct_field(init, tr, kCubic, 0.5, g, vc));
}

void cross_solver(std::vector<VerifyCheck>& out) {
  const std::string s = "cross_solver";
  const double coarse = cross_discrepancy(2001, 1e-3);
  const double fine = cross_discrepancy(4001, 5e-4);
  out.push_back(at_most(s, "FD vs Volterra L2 at t=0.5 (gaussian A=1.2, defaults)", coarse, 5e-3));
  out.push_back(at_most(s, "discrepancy ratio under one refinement", fine / coarse, 1.0));
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  return {"conservation", "gn", "virial", "convergence", "cross_solver"};
}

std::vector<VerifyCheck> run_verify_suite(std::string_view suite, std::uint64_t seed) {
  std::vector<VerifyCheck> out;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "conservation") {
    conservation(out, seed);
    known = true;
  }
  if (all || suite == "gn") {
    gagliardo_nirenberg(out, seed);
    known = true;
  }
  if (all || suite == "virial") {
    virial(out);
    known = true;
  }
  if (all || suite == "convergence") {
    convergence(out);
    known = true;
  }
  if (all || suite == "cross_solver") {
    cross_solver(out);
    known = true;
  }
  if (!known) {
    throw ConfigError("unknown verify suite '" + std::string(suite) +
                      "' (expected conservation, gn, virial, convergence, cross_solver or all)");
  }
  return out;
}

void print_verify_table(std::ostream& out, std::span<const VerifyCheck> checks) {
  char line[256];
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-4s  %-13s %-62s %12.4e %s %.4e\n", c.passed ? "PASS" : "FAIL",
                  c.suite.c_str(), c.name.c_str(), c.measured, c.relation.c_str(), c.tolerance);
    out << line;
  }
}

bool all_passed(std::span<const VerifyCheck> checks) {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

}  // namespace pointnls
