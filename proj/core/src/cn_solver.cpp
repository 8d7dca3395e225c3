#include "pointnls/cn_solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "pointnls/errors.hpp"
#include "pointnls/tridiagonal.hpp"

namespace pointnls {
namespace {

// Difference quotient (2/(p+1)) (a^{(p+1)/2} - b^{(p+1)/2}) / (a - b) of the potential,
// with a = |u|^2, b = |v|^2.
double conservative_coefficient(double a, double b, double p) {
  if (p == 3.0) return 0.5 * (a + b);
  if (std::abs(a - b) < 1e-14 * (a + b + 1e-300)) return std::pow(0.5 * (a + b), 0.5 * (p - 1.0));
  const double e = 0.5 * (p + 1.0);
  return 2.0 / (p + 1.0) * (std::pow(a, e) - std::pow(b, e)) / (a - b);
}

struct Attempt {
  std::vector<Complex> values;
  int iters = 0;
  bool converged = false;
  double residual = 0.0;
};

// Factorization and scratch reused across steps of one simulation.
class Stepper {
 public:
  Attempt attempt(const WaveState& state, double p, const CNConfig& cfg, double dt);

 private:
  std::optional<ConstantTridiagonal> lhs_;
  double lhs_dt_ = 0.0;
  double lhs_h_ = 0.0;
  std::vector<Complex> w_;
};

Attempt Stepper::attempt(const WaveState& state, double p, const CNConfig& cfg, double dt) {
  const GridSpec& g = state.grid();
  const std::size_t n = g.size();
  const double h = g.spacing();
  const Complex r(0.0, dt / (2.0 * h * h));
  const auto v = state.values();

  Attempt out;
  out.values.assign(n, Complex{});
  if (n < 3) return out;

  if (!lhs_ || lhs_dt_ != dt || lhs_h_ != h || lhs_->size() != n - 2) {
    lhs_.emplace(n - 2, 1.0 + 2.0 * r, -r);
    lhs_dt_ = dt;
    lhs_h_ = h;
  }
  // Interior unknowns 1..n-2 are stored at offset 1 of `out.values`.
  std::span<Complex> a(out.values.data() + 1, n - 2);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    a[j - 1] = v[j] + r * (v[j + 1] - 2.0 * v[j] + v[j - 1]);
  }
  lhs_->solve_in_place(a);

  const std::size_t c = g.center();
  w_.resize(n - 2);
  lhs_->solve_unit(c - 1, Complex(0.0, dt / h), w_);

  const Complex vc = v[c];
  const Complex ac = out.values[c];
  const Complex wc = w_[c - 1];
  const double b2 = std::norm(vc);

  // The nonlinear term is a real coefficient times (u + v)/2; for a fixed coefficient the
  // center value solves a scalar linear equation, so iterate on the coefficient only.
  Complex u = vc;
  double coeff = conservative_coefficient(std::norm(u), b2, p);
  for (int k = 1; k <= cfg.max_inner_iters; ++k) {
    const Complex next = (ac + 0.5 * wc * coeff * vc) / (1.0 - 0.5 * wc * coeff);
    out.iters = k;
    out.residual = std::abs(next - u) / std::max(1.0, std::abs(next));
    u = next;
    if (out.residual <= cfg.fixed_point_tol) {
      out.converged = true;
      break;
    }
    coeff = conservative_coefficient(std::norm(u), b2, p);
  }

  // Field from the last coefficient used: its center value is exactly u, so the source is
  // a real multiple of (u + v)/2 and discrete mass is conserved even if not converged.
  const Complex source = 0.5 * coeff * (u + vc);
  for (std::size_t j = 1; j + 1 < n; ++j) out.values[j] += w_[j - 1] * source;
  return out;
}

StepOutcome step_with(Stepper& stepper, const WaveState& state, const PhysicsParams& params, const CNConfig& cfg,
                      double dt) {
  if (!(dt > 0.0)) throw DomainError("cn_step: dt must be positive");
  const double floor = cfg.dt0 * std::ldexp(1.0, -40);
  bool halved = false;
  int total_iters = 0;
  while (true) {
    Attempt att = stepper.attempt(state, params.p(), cfg, dt);
    total_iters += att.iters;
    if (att.converged) {
      StepOutcome out{WaveState(state.grid(), state.time() + dt, std::move(att.values)), total_iters, dt,
                      StepFlags{}, att.residual};
      out.flags.converged = true;
      out.flags.dt_halved = halved;
      const double mass = l2_norm_sq(out.state);
      if (mass > 0.0) {
        const double ratio = state.grid().spacing() * std::sqrt(h1_seminorm_sq(out.state) / mass);
        out.flags.resolution_stop = ratio > cfg.stop_resolution_ratio;
      }
      return out;
    }
    dt *= 0.5;
    halved = true;
    if (dt < floor) throw StepFailure("step failure near singularity", state.time());
  }
}

}  // namespace

void CNConfig::validate() const {
  if (!(dt0 > 0.0) || !std::isfinite(dt0)) throw ConfigError("CNConfig: dt0 must be positive");
  if (!(adapt_constant > 0.0)) throw ConfigError("CNConfig: adapt_constant must be positive");
  if (!(fixed_point_tol > 0.0)) throw ConfigError("CNConfig: fixed_point_tol must be positive");
  if (max_inner_iters < 1) throw ConfigError("CNConfig: max_inner_iters must be at least 1");
  if (!(stop_gradient_factor > 1.0)) throw ConfigError("CNConfig: stop_gradient_factor must exceed 1");
  if (!(stop_resolution_ratio > 0.0)) throw ConfigError("CNConfig: stop_resolution_ratio must be positive");
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::ReachedEnd: return "reached_end";
    case StopReason::BlowupStop: return "blowup_stop";
    case StopReason::ResolutionStop: return "resolution_stop";
  }
  return "reached_end";
}

StepOutcome cn_step(const WaveState& state, const PhysicsParams& params, const CNConfig& cfg, double dt) {
  Stepper stepper;
  return step_with(stepper, state, params, cfg, dt);
}

WaveState discrete_solitary_wave(const PhysicsParams& params, const GridSpec& grid, double t, double omega) {
  if (!(omega > 0.0)) throw DomainError("discrete_solitary_wave: omega must be positive");
  const double h = grid.spacing();
  const double b = 1.0 + 0.5 * omega * h * h;
  const double r = b - std::sqrt(b * b - 1.0);
  const double amp = std::pow(h * (omega + 2.0 * (1.0 - r) / (h * h)), 1.0 / (params.p() - 1.0));
  const Complex phase = std::polar(1.0, omega * t);
  std::vector<Complex> v(grid.size());
  const std::size_t c = grid.center();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double k = std::abs(static_cast<double>(j) - static_cast<double>(c));
    v[j] = phase * amp * std::pow(r, k);
  }
  v.front() = 0.0;
  v.back() = 0.0;
  return WaveState(grid, t, std::move(v));
}

EvolveResult evolve(const WaveState& initial, const PhysicsParams& params, const CNConfig& cfg,
                    double t_end, const TraceOptions& options, const Observer& observer) {
  cfg.validate();
  const double t0 = initial.time();
  if (!(t_end > t0)) throw DomainError("evolve: t_end must exceed the initial time");
  if (!(options.diagnostic_interval > 0.0)) throw ConfigError("evolve: diagnostic_interval must be positive");

  const VirialWeight* weight = options.virial ? &*options.virial : nullptr;
  const double kin0 = h1_seminorm_sq(initial);
  const double adapt_c = cfg.adapt_constant * kin0;
  const double stop_kin = cfg.stop_gradient_factor * cfg.stop_gradient_factor * kin0;

  EvolveResult result{initial, initial, {}, StopReason::ReachedEnd, 0, 0};
  double peak_kin = -1.0;
  double last_recorded_kin = kin0;

  auto emit = [&](const WaveState& s, double dt_used, bool scheduled) {
    DiagnosticsRecord rec = make_record(s, params, weight, dt_used);
    rec.scheduled = scheduled;
    result.trace.push_back(rec);
    last_recorded_kin = rec.kinetic;
    if (rec.kinetic > peak_kin) {
      peak_kin = rec.kinetic;
      result.peak_state = s;
    }
    if (observer) observer(rec, s);
  };

  emit(initial, 0.0, true);

  Stepper stepper;
  WaveState state = initial;
  long diag_index = 1;
  auto diag_time = [&](long k) { return t0 + static_cast<double>(k) * options.diagnostic_interval; };
  while (diag_time(diag_index) <= t0) ++diag_index;

  double kin = kin0;
  while (true) {
    const double t = state.time();
    const double next_diag = std::min(diag_time(diag_index), t_end);
    double dt = cfg.dt0;
    if (cfg.adapt && kin > 0.0 && adapt_c > 0.0) dt = cfg.dt0 * std::min(1.0, adapt_c / kin);
    bool hits_target = false;
    // Absorb a sliver below 1e-9 dt into the current step rather than taking a tiny step.
    if (t + dt * (1.0 + 1e-9) >= next_diag) {
      dt = next_diag - t;
      hits_target = true;
    }

    StepOutcome step = step_with(stepper, state, params, cfg, dt);
    ++result.steps;
    if (step.flags.dt_halved) ++result.halvings;
    state = (hits_target && !step.flags.dt_halved) ? step.state.with_time(next_diag) : std::move(step.state);
    kin = h1_seminorm_sq(state);

    const bool at_end = state.time() >= t_end;
    const bool scheduled = hits_target && !step.flags.dt_halved;
    const bool blowup = kin0 > 0.0 && kin >= stop_kin;
    const bool stop = at_end || blowup || step.flags.resolution_stop;

    if (scheduled) {
      ++diag_index;
      emit(state, step.dt_used, true);
    } else if (stop || kin > options.record_growth_factor * last_recorded_kin ||
               kin * options.record_growth_factor < last_recorded_kin) {
      emit(state, step.dt_used, false);
    }

    if (blowup) {
      result.stop_reason = StopReason::BlowupStop;
      break;
    }
    if (step.flags.resolution_stop) {
      result.stop_reason = StopReason::ResolutionStop;
      break;
    }
    if (at_end) break;
  }
  result.final_state = std::move(state);
  return result;
}

}  // namespace pointnls
