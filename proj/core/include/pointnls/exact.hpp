#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pointnls/params.hpp"
#include "pointnls/wave_state.hpp"

namespace pointnls {

/// e^{i theta} alpha phi0(beta x) e^{-i c x^2}. An exact solitary wave when c = 0 and
/// alpha = beta^{1/(p-1)}; with c != 0 it is initial data only.
struct GroundStateModulation {
  double amplitude = 1.0;
  double scale = 1.0;
  double phase = 0.0;
  double chirp = 0.0;
};

/// e^{it} phi0(x).
struct SolitaryWave {};

/// Explicit minimal-mass blow-up solution S_{lambda,T*} of the cubic problem.
struct Pseudoconformal {
  double lambda = 1.0;
  double blowup_time = 1.0;
};

/// A exp(-x^2 / w^2) exp(-i c x^2). Initial data only, not an exact solution.
struct Gaussian {
  double amplitude = 1.0;
  double width = 1.0;
  double chirp = 0.0;
};

/// Tabulated samples (x, psi) resampled onto the target grid.
struct CustomSamples {
  std::vector<double> x;
  std::vector<Complex> values;
};

using ExactSolutionSpec =
    std::variant<GroundStateModulation, SolitaryWave, Pseudoconformal, Gaussian, CustomSamples>;

std::string kind_name(const ExactSolutionSpec& spec);

/// phi0(x) = 2^{1/(p-1)} e^{-|x|}.
double ground_state_value(const PhysicsParams& params, double x);

/// One-sided derivative phi0'(0+) = -2^{1/(p-1)}.
double ground_state_slope_right(const PhysicsParams& params);

/// Closed-form ground-state norms: ||phi0||^2 = ||phi0'||^2 = 2^{2/(p-1)}.
double ground_state_mass(const PhysicsParams& params);

/// Samples the named solution at time t. Pseudoconformal requires p = 3 and t < T*.
WaveState sample_exact(const ExactSolutionSpec& spec, const PhysicsParams& params,
                       const GridSpec& grid, double t);

/// Resamples tabulated (x, psi) data onto the grid, piecewise linear, zero outside the table.
std::vector<Complex> resample_linear(std::span<const double> x, std::span<const Complex> values,
                                     const GridSpec& grid);

}  // namespace pointnls
