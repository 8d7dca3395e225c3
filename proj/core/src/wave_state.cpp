#include "pointnls/wave_state.hpp"

#include <cmath>
#include <string>

#include "pointnls/errors.hpp"

namespace pointnls {

WaveState::WaveState(GridSpec grid, double time, std::vector<Complex> values)
    : grid_(grid), time_(time), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw DomainError("wave state has " + std::to_string(values_.size()) +
                      " samples for a grid of " + std::to_string(grid_.size()));
  }
}

WaveState WaveState::zeros(const GridSpec& grid, double time) {
  return WaveState(grid, time, std::vector<Complex>(grid.size()));
}

WaveState WaveState::with_time(double time) const { return WaveState(grid_, time, values_); }

double l2_norm_sq(const WaveState& state) {
  double sum = 0.0;
  for (const Complex& v : state.values()) sum += std::norm(v);
  return sum * state.grid().spacing();
}

double h1_seminorm_sq(const WaveState& state) {
  const auto v = state.values();
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < v.size(); ++j) sum += std::norm(v[j + 1] - v[j]);
  return sum / state.grid().spacing();
}

double boundary_amplitude(const WaveState& state) { return std::abs(state.center_value()); }

double l2_distance(const WaveState& a, const WaveState& b) {
  if (!(a.grid() == b.grid())) throw DomainError("l2_distance: grids differ");
  double sum = 0.0;
  for (std::size_t j = 0; j < a.grid().size(); ++j) sum += std::norm(a[j] - b[j]);
  return std::sqrt(sum * a.grid().spacing());
}

Complex sample_linear(const WaveState& state, double x) {
  const GridSpec& g = state.grid();
  const double s = x / g.spacing() + static_cast<double>(g.center());
  if (!(s >= 0.0) || s > static_cast<double>(g.size() - 1)) return {0.0, 0.0};
  auto j = static_cast<std::size_t>(std::floor(s));
  if (j >= g.size() - 1) return state[g.size() - 1];
  const double f = s - static_cast<double>(j);
  return (1.0 - f) * state[j] + f * state[j + 1];
}

}  // namespace pointnls
