#pragma once

#include <complex>
#include <span>
#include <vector>

#include "pointnls/grid.hpp"

namespace pointnls {

using Complex = std::complex<double>;

/// Complex field samples on a grid at one time instant. Immutable after construction.
class WaveState {
 public:
  WaveState(GridSpec grid, double time, std::vector<Complex> values);

  static WaveState zeros(const GridSpec& grid, double time = 0.0);

  const GridSpec& grid() const noexcept { return grid_; }
  double time() const noexcept { return time_; }
  std::span<const Complex> values() const noexcept { return values_; }
  Complex operator[](std::size_t j) const noexcept { return values_[j]; }
  Complex center_value() const noexcept { return values_[grid_.center()]; }

  WaveState with_time(double time) const;

 private:
  GridSpec grid_;
  double time_;
  std::vector<Complex> values_;
};

/// sum_j |psi_j|^2 h. With Dirichlet ends this equals the trapezoid rule.
double l2_norm_sq(const WaveState& state);

/// sum_j |psi_{j+1} - psi_j|^2 / h (forward differences, matching the solver energy).
double h1_seminorm_sq(const WaveState& state);

/// |psi| at the center node.
double boundary_amplitude(const WaveState& state);

/// Discrete L2 norm of the difference of two states on the same grid.
double l2_distance(const WaveState& a, const WaveState& b);

/// Piecewise-linear interpolation of the samples at x; zero outside [-L, L].
Complex sample_linear(const WaveState& state, double x);

}  // namespace pointnls
