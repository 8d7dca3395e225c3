#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pointnls/diagnostics.hpp"
#include "pointnls/params.hpp"
#include "pointnls/virial_weight.hpp"
#include "pointnls/wave_state.hpp"

namespace pointnls {

struct CNConfig {
  double dt0 = 1e-3;
  bool adapt = false;
  /// Adaptive law dt = dt0 min(1, c / kinetic) with c = adapt_constant * kinetic(initial).
  double adapt_constant = 1.0;
  double fixed_point_tol = 1e-12;
  int max_inner_iters = 50;
  double stop_gradient_factor = 100.0;
  double stop_resolution_ratio = 0.5;

  /// Throws ConfigError naming the violated invariant.
  void validate() const;
};

struct StepFlags {
  bool converged = false;
  bool dt_halved = false;
  bool blowup_stop = false;
  bool resolution_stop = false;
};

struct StepOutcome {
  WaveState state;
  int inner_iters = 0;
  double dt_used = 0.0;
  StepFlags flags;
  double residual = 0.0;  // last relative change of the center value
};

/// One step of the conservative Crank-Nicolson scheme
///   i (psi^{n+1} - psi^n)/dt + L_h (psi^{n+1} + psi^n)/2 + delta_h G(psi_c^{n+1}, psi_c^n) = 0
/// with homogeneous Dirichlet ends. Halves dt on inner non-convergence; throws StepFailure
/// once dt drops below dt0 * 2^-40. Sets resolution_stop when h ||psi_x|| / ||psi|| exceeds
/// the configured ratio; blowup_stop is left to evolve, which knows the initial gradient.
StepOutcome cn_step(const WaveState& state, const PhysicsParams& params, const CNConfig& cfg, double dt);

/// Exact stationary state of the semi-discrete scheme at frequency omega: phi_j = A r^{|j|}
/// with r + 1/r = 2 + omega h^2 and A^{p-1} = h (omega + 2 (1 - r) / h^2), multiplied by
/// e^{i omega t}. Converges to e^{i omega t} omega^{1/(p-1)} phi0(sqrt(omega) x) as h -> 0.
WaveState discrete_solitary_wave(const PhysicsParams& params, const GridSpec& grid, double t, double omega = 1.0);

enum class StopReason { ReachedEnd, BlowupStop, ResolutionStop };
std::string to_string(StopReason reason);

struct TraceOptions {
  double diagnostic_interval = 1e-2;
  std::optional<VirialWeight> virial;
  /// Extra records are emitted between diagnostic times whenever the kinetic term has
  /// changed by more than this factor since the last record.
  double record_growth_factor = 1.1;
};

using Observer = std::function<void(const DiagnosticsRecord&, const WaveState&)>;

struct EvolveResult {
  WaveState final_state;
  WaveState peak_state;  // state at the record with the largest kinetic term
  std::vector<DiagnosticsRecord> trace;
  StopReason stop_reason = StopReason::ReachedEnd;
  long steps = 0;
  long halvings = 0;
};

EvolveResult evolve(const WaveState& initial, const PhysicsParams& params, const CNConfig& cfg,
                    double t_end, const TraceOptions& options = {}, const Observer& observer = {});

}  // namespace pointnls
