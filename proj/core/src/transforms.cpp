#include "pointnls/transforms.hpp"

#include <cmath>

#include "pointnls/errors.hpp"

namespace pointnls {

WaveState apply_scaling(const WaveState& state, const PhysicsParams& params, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("scaling factor must be positive");
  const GridSpec& g = state.grid();
  const double amp = std::pow(lambda, 1.0 / (params.p() - 1.0));
  std::vector<Complex> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) out[j] = amp * sample_linear(state, lambda * g.x(j));
  return WaveState(g, state.time() / (lambda * lambda), std::move(out));
}

WaveState apply_pseudoconformal(const WaveState& state, const PhysicsParams& params, double t) {
  using namespace std::complex_literals;
  if (!params.mass_critical()) {
    throw UnsupportedError("pseudoconformal transform is a symmetry only for p = 3");
  }
  if (t == 0.0 || !std::isfinite(t)) throw DomainError("pseudoconformal transform needs t != 0");
  const GridSpec& g = state.grid();
  const Complex inv_root = 1.0 / std::sqrt(Complex(t, 0.0));
  std::vector<Complex> out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.x(j);
    out[j] = std::exp(1i * x * x / (4.0 * t)) * inv_root * sample_linear(state, x / t);
  }
  return WaveState(g, t, std::move(out));
}

WaveState time_reversal(const WaveState& state) {
  std::vector<Complex> out(state.values().begin(), state.values().end());
  for (Complex& v : out) v = std::conj(v);
  return WaveState(state.grid(), -state.time(), std::move(out));
}

}  // namespace pointnls
