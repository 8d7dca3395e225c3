#pragma once

#include <vector>

#include "pointnls/free_propagator.hpp"
#include "pointnls/params.hpp"
#include "pointnls/wave_state.hpp"

namespace pointnls {

struct VolterraConfig {
  double dt = 1e-3;
  double picard_tol = 1e-12;
  int picard_max = 100;
  /// 1 = trapezoid, 2 = product-linear, 4 = product-cubic free field.
  int free_field_quadrature_points = 4;

  void validate() const;
};

/// psi(0, t_k) on the uniform trace grid t_k = t_0 + k dt.
struct BoundaryTrace {
  std::vector<double> times;
  std::vector<Complex> values;
};

/// Weights (A, B) with int_{u_lo}^{u_hi} u^{-1/2} exp(i a / u) g du = A g_old + B g_new for g
/// linear in u, g_old at u_hi (earlier time) and g_new at u_lo. a = x^2/4 >= 0.
struct PanelWeights {
  Complex older;
  Complex newer;
};
PanelWeights panel_weights(double a, double u_lo, double u_hi);

/// Solves h(t) = (U(t) psi0)(0) + e^{i pi/4} (4 pi)^{-1/2} int_0^t (t-s)^{-1/2} |h|^{p-1} h ds
/// by piecewise-linear product integration, with Picard iteration on the implicit self term.
/// Throws PicardFailure carrying the last residual.
BoundaryTrace solve_boundary_trace(const WaveState& initial, const PhysicsParams& params,
                                   const VolterraConfig& cfg, double t_end);

/// Full-line Duhamel formula evaluated on `grid` at time t (t_0 < t <= last trace time); a
/// trailing partial panel uses g interpolated linearly at t.
WaveState reconstruct_field(const WaveState& initial, const BoundaryTrace& trace, const PhysicsParams& params,
                            double t, const GridSpec& grid, const VolterraConfig& cfg);

/// max_k |h_k - F_k - source_k| / max(1, |h_k|), with the source integral recomputed on panels
/// split at their midpoints (g linearly interpolated there).
double trace_equation_residual(const WaveState& initial, const BoundaryTrace& trace,
                               const PhysicsParams& params, const VolterraConfig& cfg);

}  // namespace pointnls
