#include "pointnls/volterra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pointnls/errors.hpp"
#include "pointnls/fresnel.hpp"

namespace pointnls {
namespace {

// e^{i pi/4} (4 pi)^{-1/2}
Complex source_prefactor() {
  return std::polar(1.0 / std::sqrt(4.0 * std::numbers::pi), 0.25 * std::numbers::pi);
}

Complex nonlinearity(Complex h, double p) { return std::pow(std::abs(h), p - 1.0) * h; }

// With w = u^{-1/2}: int w^{-2} e^{i a w^2} dw and int w^{-4} e^{i a w^2} dw.
struct Antiderivatives {
  Complex q2;
  Complex q4;
};

Antiderivatives antiderivatives(double a, double w) {
  const Complex ia(0.0, a);
  if (std::isinf(w)) {
    const Complex p = 0.5 * std::sqrt(std::numbers::pi / a) * std::polar(1.0, 0.25 * std::numbers::pi);
    const Complex q2 = 2.0 * ia * p;
    return {q2, 2.0 / 3.0 * ia * q2};
  }
  const Complex e = std::polar(1.0, a * w * w);
  const Complex q2 = -e / w + 2.0 * ia * fresnel_primitive(w, a);
  const Complex q4 = -e / (3.0 * w * w * w) + 2.0 / 3.0 * ia * q2;
  return {q2, q4};
}

}  // namespace

void VolterraConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("VolterraConfig: dt must be positive");
  if (!(picard_tol > 0.0)) throw ConfigError("VolterraConfig: picard_tol must be positive");
  if (picard_max < 1) throw ConfigError("VolterraConfig: picard_max must be at least 1");
  free_quadrature_from_points(free_field_quadrature_points);
}

PanelWeights panel_weights(double a, double u_lo, double u_hi) {
  const double width = u_hi - u_lo;
  if (a == 0.0) {
    // Abel moments in a cancellation-free form.
    const double rl = std::sqrt(u_lo);
    const double rh = std::sqrt(u_hi);
    const double denom = (rl + rh) * (rl + rh);
    return {2.0 / 3.0 * width * (rh + 2.0 * rl) / denom, 2.0 / 3.0 * width * (2.0 * rh + rl) / denom};
  }
  const double w_lo = u_lo > 0.0 ? 1.0 / std::sqrt(u_lo) : std::numeric_limits<double>::infinity();
  const double w_hi = 1.0 / std::sqrt(u_hi);
  const Antiderivatives top = antiderivatives(a, w_lo);
  const Antiderivatives bottom = antiderivatives(a, w_hi);
  const Complex j0 = 2.0 * (top.q2 - bottom.q2);
  const Complex j1 = 2.0 * (top.q4 - bottom.q4);
  return {(j1 - u_lo * j0) / width, (u_hi * j0 - j1) / width};
}

BoundaryTrace solve_boundary_trace(const WaveState& initial, const PhysicsParams& params,
                                   const VolterraConfig& cfg, double t_end) {
  cfg.validate();
  const double t0 = initial.time();
  if (!(t_end > t0)) throw DomainError("solve_boundary_trace: t_end must exceed the initial time");
  const double p = params.p();
  const auto steps = static_cast<std::size_t>(std::ceil((t_end - t0) / cfg.dt - 1e-9));
  const FreePropagator free(initial, free_quadrature_from_points(cfg.free_field_quadrature_points));
  const Complex kappa = source_prefactor();

  // Weights depend on the lag m = n - j only: panel [(m-1) dt, m dt] in u = t - s.
  std::vector<double> older(steps + 1, 0.0);
  std::vector<double> newer(steps + 1, 0.0);
  for (std::size_t m = 1; m <= steps; ++m) {
    const PanelWeights pw = panel_weights(0.0, static_cast<double>(m - 1) * cfg.dt, static_cast<double>(m) * cfg.dt);
    older[m] = pw.older.real();
    newer[m] = pw.newer.real();
  }

  BoundaryTrace trace;
  trace.times.reserve(steps + 1);
  trace.values.reserve(steps + 1);
  std::vector<Complex> g;
  g.reserve(steps + 1);
  trace.times.push_back(t0);
  trace.values.push_back(initial.center_value());
  g.push_back(nonlinearity(initial.center_value(), p));

  for (std::size_t n = 1; n <= steps; ++n) {
    const double t = t0 + static_cast<double>(n) * cfg.dt;
    Complex known = free.at(0.0, t - t0);
    Complex history{};
    for (std::size_t j = 0; j < n; ++j) {
      history += older[n - j] * g[j];
      if (j + 1 < n) history += newer[n - j] * g[j + 1];
    }
    known += kappa * history;
    const Complex self = kappa * newer[1];

    Complex h = n >= 2 ? 2.0 * trace.values[n - 1] - trace.values[n - 2] : trace.values[n - 1];
    double residual = 0.0;
    bool converged = false;
    for (int it = 0; it < cfg.picard_max; ++it) {
      const Complex next = known + self * nonlinearity(h, p);
      residual = std::abs(next - h) / std::max(1.0, std::abs(next));
      h = next;
      if (residual <= cfg.picard_tol) {
        converged = true;
        break;
      }
    }
    if (!converged || !std::isfinite(std::abs(h))) {
      throw PicardFailure("Picard iteration for the boundary trace did not converge", t, residual);
    }
    trace.times.push_back(t);
    trace.values.push_back(h);
    g.push_back(nonlinearity(h, p));
  }
  return trace;
}

WaveState reconstruct_field(const WaveState& initial, const BoundaryTrace& trace, const PhysicsParams& params,
                            double t, const GridSpec& grid, const VolterraConfig& cfg) {
  cfg.validate();
  if (trace.times.empty()) throw DomainError("reconstruct_field: empty trace");
  const double t0 = trace.times.front();
  if (!(t > t0) || t > trace.times.back() * (1.0 + 1e-12) + 1e-15) {
    throw DomainError("reconstruct_field: t must lie in (t0, last trace time]");
  }
  const double p = params.p();
  const std::size_t count = trace.times.size();

  // Panels ending at or before t, plus a possibly partial final panel.
  std::vector<double> s_nodes;
  std::vector<Complex> g_nodes;
  for (std::size_t k = 0; k < count && trace.times[k] <= t * (1.0 + 1e-14); ++k) {
    s_nodes.push_back(trace.times[k]);
    g_nodes.push_back(nonlinearity(trace.values[k], p));
  }
  if (t - s_nodes.back() > 1e-12 * std::max(1.0, std::abs(t))) {
    const std::size_t k = s_nodes.size();
    const double theta = (t - trace.times[k - 1]) / (trace.times[k] - trace.times[k - 1]);
    const Complex h = (1.0 - theta) * trace.values[k - 1] + theta * trace.values[k];
    s_nodes.push_back(t);
    g_nodes.push_back(nonlinearity(h, p));
  } else {
    s_nodes.back() = t;
  }

  const FreePropagator free(initial, free_quadrature_from_points(cfg.free_field_quadrature_points));
  std::vector<Complex> values = grid == initial.grid() ? free.on_grid(t - t0) : std::vector<Complex>(grid.size());
  if (!(grid == initial.grid())) {
    for (std::size_t i = 0; i < grid.size(); ++i) values[i] = free.at(grid.x(i), t - t0);
  }

  const Complex kappa = source_prefactor();
  const std::size_t c = grid.center();
  // The source term depends on x^2 only: compute on x >= 0 and mirror.
  for (std::size_t i = c; i < grid.size(); ++i) {
    const double x = grid.x(i);
    const double a = 0.25 * x * x;
    Complex sum{};
    for (std::size_t j = 0; j + 1 < s_nodes.size(); ++j) {
      const PanelWeights pw = panel_weights(a, t - s_nodes[j + 1], t - s_nodes[j]);
      sum += pw.older * g_nodes[j] + pw.newer * g_nodes[j + 1];
    }
    const Complex source = kappa * sum;
    values[i] += source;
    if (i != c) values[2 * c - i] += source;
  }
  values.front() = Complex{};
  values.back() = Complex{};
  return WaveState(grid, t, std::move(values));
}

double trace_equation_residual(const WaveState& initial, const BoundaryTrace& trace,
                               const PhysicsParams& params, const VolterraConfig& cfg) {
  const double p = params.p();
  const std::size_t count = trace.times.size();
  if (count < 2) return 0.0;
  const FreePropagator free(initial, free_quadrature_from_points(cfg.free_field_quadrature_points));
  const Complex kappa = source_prefactor();
  const double t0 = trace.times.front();

  std::vector<Complex> g(count);
  for (std::size_t k = 0; k < count; ++k) g[k] = nonlinearity(trace.values[k], p);

  double worst = 0.0;
  for (std::size_t n = 1; n < count; ++n) {
    const double t = trace.times[n];
    Complex sum{};
    for (std::size_t j = 0; j < n; ++j) {
      const double s_mid = 0.5 * (trace.times[j] + trace.times[j + 1]);
      const Complex g_mid = 0.5 * (g[j] + g[j + 1]);
      const PanelWeights first = panel_weights(0.0, t - s_mid, t - trace.times[j]);
      const PanelWeights second = panel_weights(0.0, t - trace.times[j + 1], t - s_mid);
      sum += first.older * g[j] + first.newer * g_mid + second.older * g_mid + second.newer * g[j + 1];
    }
    const Complex rhs = free.at(0.0, t - t0) + kappa * sum;
    worst = std::max(worst, std::abs(trace.values[n] - rhs) / std::max(1.0, std::abs(trace.values[n])));
  }
  return worst;
}

}  // namespace pointnls
