#include "pointnls/proximity.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "pointnls/errors.hpp"

namespace pointnls {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

struct Pairing {
  double distance_sq;
  double theta;
};

// Ground state rescaled to width rho, sampled on the state's grid.
std::vector<double> rescaled_ground_state(const GridSpec& g, double rho) {
  std::vector<double> phi(g.size());
  const double amp = kSqrt2 / std::sqrt(rho);
  for (std::size_t j = 0; j < g.size(); ++j) phi[j] = amp * std::exp(-std::abs(g.x(j)) / rho);
  return phi;
}

Pairing optimal_phase(const WaveState& state, double rho) {
  const GridSpec& g = state.grid();
  const double h = g.spacing();
  const auto v = state.values();
  const std::vector<double> phi = rescaled_ground_state(g, rho);
  Complex pairing{};
  for (std::size_t j = 0; j < v.size(); ++j) {
    pairing += v[j] * phi[j] * h;
    if (j + 1 < v.size()) pairing += rho * rho * (v[j + 1] - v[j]) * (phi[j + 1] - phi[j]) / h;
  }
  const double theta = pairing == Complex{} ? 0.0 : std::arg(pairing);
  return {proximity_distance_sq(state, theta, rho), theta};
}

}  // namespace

double proximity_distance_sq(const WaveState& state, double theta, double rho) {
  const GridSpec& g = state.grid();
  const double h = g.spacing();
  const auto v = state.values();
  const std::vector<double> phi = rescaled_ground_state(g, rho);
  const Complex rot = std::polar(1.0, -theta);
  double l2 = 0.0;
  double grad = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    l2 += std::norm(rot * v[j] - phi[j]);
    if (j + 1 < v.size()) grad += std::norm(rot * (v[j + 1] - v[j]) - (phi[j + 1] - phi[j]));
  }
  return l2 * h + rho * rho * grad / h;
}

ProximityResult ground_state_proximity(const WaveState& state) {
  const double kinetic = h1_seminorm_sq(state);
  if (!(kinetic > 0.0)) throw DomainError("ground_state_proximity: state has no gradient");
  const double rho0 = kSqrt2 / std::sqrt(kinetic);
  const double log_lo = std::log(rho0 / 50.0);
  const double log_hi = std::log(rho0 * 50.0);

  constexpr int kScan = 200;
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kScan; ++k) {
    const double r = std::exp(log_lo + (log_hi - log_lo) * k / kScan);
    const double value = optimal_phase(state, r).distance_sq;
    if (value < best_value) {
      best_value = value;
      best = k;
    }
  }

  const double step = (log_hi - log_lo) / kScan;
  double a = log_lo + step * std::max(best - 1, 0);
  double b = log_lo + step * std::min(best + 1, kScan);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = optimal_phase(state, std::exp(c)).distance_sq;
  double fd = optimal_phase(state, std::exp(d)).distance_sq;
  for (int it = 0; it < 200 && b - a > 1e-14; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = optimal_phase(state, std::exp(c)).distance_sq;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = optimal_phase(state, std::exp(d)).distance_sq;
    }
  }
  const double rho = std::exp(0.5 * (a + b));
  const Pairing final = optimal_phase(state, rho);
  ProximityResult out;
  out.rho = rho;
  out.theta = final.theta;
  out.distance = std::sqrt(std::max(final.distance_sq, 0.0));
  out.bracket_hit = best == 0 || best == kScan;
  return out;
}

}  // namespace pointnls
