#pragma once

#include "pointnls/wave_state.hpp"

namespace pointnls {

struct ProximityResult {
  double distance = 0.0;  // discrete H1 distance to the modulated ground state
  double theta = 0.0;
  double rho = 1.0;
  bool bracket_hit = false;  // optimum on the edge of [rho0/50, 50 rho0]
};

/// min over (theta, rho) of || e^{-i theta} rho^{1/2} psi(rho x) - phi0(x) ||_{H1} for the cubic
/// ground state phi0 = sqrt(2) e^{-|x|}. Evaluated on the native grid after the change of
/// variables y = rho x, so the state is never resampled; theta is the argument of the H1
/// pairing and rho comes from a log-spaced scan refined by golden-section search.
ProximityResult ground_state_proximity(const WaveState& state);

/// The squared distance at fixed (theta, rho).
double proximity_distance_sq(const WaveState& state, double theta, double rho);

}  // namespace pointnls
