#pragma once

#include "pointnls/params.hpp"
#include "pointnls/wave_state.hpp"

namespace pointnls {

/// lambda^{1/(p-1)} psi(lambda x) resampled on the same grid; the time maps to t / lambda^2.
WaveState apply_scaling(const WaveState& state, const PhysicsParams& params, double lambda);

/// Field part of the cubic pseudoconformal map at output time t:
///   e^{i x^2 / 4t} t^{-1/2} psi(x / t).
/// The input is interpreted as the solution at time -1/t. The result carries time t.
/// t^{-1/2} uses the principal branch, so for t < 0 it differs from the real-root
/// convention by a constant phase.
WaveState apply_pseudoconformal(const WaveState& state, const PhysicsParams& params, double t);

/// Complex conjugation; the caller reads the result at time -t.
WaveState time_reversal(const WaveState& state);

}  // namespace pointnls
