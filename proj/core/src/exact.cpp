#include "pointnls/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pointnls/errors.hpp"

namespace pointnls {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string kind_name(const ExactSolutionSpec& spec) {
  return std::visit(Overloaded{
                        [](const GroundStateModulation&) { return std::string("ground_state_modulation"); },
                        [](const SolitaryWave&) { return std::string("solitary_wave"); },
                        [](const Pseudoconformal&) { return std::string("pseudoconformal"); },
                        [](const Gaussian&) { return std::string("gaussian"); },
                        [](const CustomSamples&) { return std::string("custom"); },
                    },
                    spec);
}

double ground_state_value(const PhysicsParams& params, double x) {
  return std::pow(2.0, 1.0 / (params.p() - 1.0)) * std::exp(-std::abs(x));
}

double ground_state_slope_right(const PhysicsParams& params) {
  return -std::pow(2.0, 1.0 / (params.p() - 1.0));
}

double ground_state_mass(const PhysicsParams& params) {
  return std::pow(2.0, 2.0 / (params.p() - 1.0));
}

std::vector<Complex> resample_linear(std::span<const double> x, std::span<const Complex> values,
                                     const GridSpec& grid) {
  if (x.size() != values.size()) throw DomainError("resample: x and values differ in length");
  std::vector<Complex> out(grid.size());
  if (x.size() < 2) return out;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double xj = grid.x(j);
    if (xj < x.front() || xj > x.back()) continue;
    auto it = std::upper_bound(x.begin(), x.end(), xj);
    std::size_t k = it == x.end() ? x.size() - 1 : static_cast<std::size_t>(it - x.begin());
    if (k == 0) k = 1;
    const double x0 = x[k - 1];
    const double x1 = x[k];
    const double f = x1 > x0 ? (xj - x0) / (x1 - x0) : 0.0;
    out[j] = (1.0 - f) * values[k - 1] + f * values[k];
  }
  return out;
}

WaveState sample_exact(const ExactSolutionSpec& spec, const PhysicsParams& params,
                       const GridSpec& grid, double t) {
  using namespace std::complex_literals;
  std::vector<Complex> v(grid.size());
  const double p = params.p();

  std::visit(
      Overloaded{
          [&](const GroundStateModulation& m) {
            if (m.amplitude <= 0.0 || m.scale <= 0.0) {
              throw DomainError("ground-state modulation needs amplitude > 0 and scale > 0");
            }
            // Only the scaling-consistent family evolves as a solitary wave.
            const bool solitary =
                std::abs(m.amplitude - std::pow(m.scale, 1.0 / (p - 1.0))) <= 1e-12 * m.amplitude;
            if (t != 0.0 && (!solitary || m.chirp != 0.0)) {
              throw DomainError("ground-state modulation is an exact solution only when "
                                "amplitude = scale^{1/(p-1)} and chirp = 0");
            }
            const Complex phase = std::exp(1i * (m.phase + m.scale * m.scale * t));
            for (std::size_t j = 0; j < grid.size(); ++j) {
              const double x = grid.x(j);
              v[j] = phase * std::polar(m.amplitude * ground_state_value(params, m.scale * x), -m.chirp * x * x);
            }
          },
          [&](const SolitaryWave&) {
            const Complex phase = std::exp(1i * t);
            for (std::size_t j = 0; j < grid.size(); ++j) v[j] = phase * ground_state_value(params, grid.x(j));
          },
          [&](const Pseudoconformal& s) {
            if (!params.mass_critical()) {
              throw UnsupportedError("pseudoconformal solution exists only for p = 3");
            }
            if (s.lambda <= 0.0 || s.blowup_time <= 0.0) {
              throw DomainError("pseudoconformal solution needs lambda > 0 and T* > 0");
            }
            if (t >= s.blowup_time) throw DomainError("pseudoconformal solution evaluated at t >= T*");
            const double tau = s.blowup_time - t;
            const double width = s.lambda * tau;
            const Complex global = std::exp(1i / (s.lambda * s.lambda * tau)) / std::sqrt(width);
            for (std::size_t j = 0; j < grid.size(); ++j) {
              const double x = grid.x(j);
              v[j] = global * std::exp(-1i * x * x / (4.0 * tau)) * ground_state_value(params, x / width);
            }
          },
          [&](const Gaussian& g) {
            if (g.width <= 0.0) throw DomainError("gaussian width must be positive");
            if (t != 0.0) throw DomainError("gaussian data is not an exact solution for t != 0");
            for (std::size_t j = 0; j < grid.size(); ++j) {
              const double x = grid.x(j);
              v[j] = g.amplitude * std::exp(-x * x / (g.width * g.width)) * std::exp(-1i * g.chirp * x * x);
            }
          },
          [&](const CustomSamples& c) {
            if (t != 0.0) throw DomainError("custom samples are initial data only");
            v = resample_linear(c.x, c.values, grid);
          },
      },
      spec);

  // Homogeneous Dirichlet truncation.
  v.front() = 0.0;
  v.back() = 0.0;
  return WaveState(grid, t, std::move(v));
}

}  // namespace pointnls
