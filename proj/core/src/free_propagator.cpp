#include "pointnls/free_propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pointnls/errors.hpp"
#include "pointnls/fresnel.hpp"

namespace pointnls {
namespace {

// Monomial coefficients in s of the cubic through (sigma_m, f_m), m = 0..3.
std::array<Complex, 4> cubic_through(const std::array<double, 4>& sigma, const std::array<Complex, 4>& f) {
  std::array<Complex, 4> dd = f;
  for (int level = 1; level < 4; ++level) {
    for (int m = 3; m >= level; --m) dd[m] = (dd[m] - dd[m - 1]) / (sigma[m] - sigma[m - level]);
  }
  // Horner in Newton form: q = dd3; q = q (s - sigma2) + dd2; ...
  std::array<Complex, 4> q{dd[3], 0.0, 0.0, 0.0};
  for (int m = 2; m >= 0; --m) {
    std::array<Complex, 4> next{};
    for (int k = 3; k >= 1; --k) next[k] = q[k - 1] - sigma[m] * q[k];
    next[0] = dd[m] - sigma[m] * q[0];
    q = next;
  }
  return q;
}

}  // namespace

FreeQuadrature free_quadrature_from_points(int points) {
  switch (points) {
    case 1: return FreeQuadrature::Trapezoid;
    case 2: return FreeQuadrature::ProductLinear;
    case 4: return FreeQuadrature::ProductCubic;
    default: throw ConfigError("free_field_quadrature_points must be 1, 2 or 4");
  }
}

int free_quadrature_points(FreeQuadrature rule) {
  switch (rule) {
    case FreeQuadrature::Trapezoid: return 1;
    case FreeQuadrature::ProductLinear: return 2;
    case FreeQuadrature::ProductCubic: return 4;
  }
  return 4;
}

Complex free_kernel_prefactor(double t) {
  return std::polar(1.0 / std::sqrt(4.0 * std::numbers::pi * t), -0.25 * std::numbers::pi);
}

FreePropagator::FreePropagator(const WaveState& initial, FreeQuadrature rule)
    : grid_(initial.grid()), rule_(rule), samples_(initial.values().begin(), initial.values().end()) {
  const std::size_t n = grid_.size();
  const double h = grid_.spacing();
  if (rule_ == FreeQuadrature::ProductCubic && n < 7) rule_ = FreeQuadrature::ProductLinear;
  if (rule_ == FreeQuadrature::Trapezoid) return;

  cells_.resize(n - 1);
  const std::size_t c = grid_.center();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (rule_ == FreeQuadrature::ProductLinear) {
      cells_[j] = {samples_[j], (samples_[j + 1] - samples_[j]) / h, 0.0, 0.0};
      continue;
    }
    // The data may have a kink at the origin node, so each stencil stays on one side of it.
    const std::size_t lo = j < c ? 0 : c;
    const std::size_t hi = j < c ? c : n - 1;
    const std::size_t s0 = std::clamp<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(j) - 1,
                                                      static_cast<std::ptrdiff_t>(lo),
                                                      static_cast<std::ptrdiff_t>(hi) - 3);
    std::array<double, 4> sigma{};
    std::array<Complex, 4> f{};
    for (std::size_t m = 0; m < 4; ++m) {
      sigma[m] = (static_cast<double>(s0 + m) - static_cast<double>(j)) * h;
      f[m] = samples_[s0 + m];
    }
    cells_[j] = cubic_through(sigma, f);
  }
}

// p0[k] = int_0^{z_k} exp(i alpha s^2) ds and e[k] = exp(i alpha z_k^2) with z_k = y_{k+offset} - x,
// where y are the grid nodes; x_shift is z at node 0 (used by the recursion).
Complex FreePropagator::cell_sum(std::span<const Complex> p0, std::span<const Complex> e, std::ptrdiff_t offset,
                                 double x_shift, double t) const {
  const double h = grid_.spacing();
  const Complex k1(0.0, -2.0 * t);  // 1 / (2 i alpha)
  const int degree = rule_ == FreeQuadrature::ProductCubic ? 3 : 1;
  Complex total{};
  for (std::size_t j = 0; j < cells_.size(); ++j) {
    const auto idx = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(j) + offset);
    const double zj = x_shift + static_cast<double>(j) * h;
    const Complex e0 = e[idx];
    const Complex e1 = e[idx + 1];
    // L_k = int_0^h s^k exp(i alpha (z_j + s)^2) ds via integration by parts.
    std::array<Complex, 4> L{};
    L[0] = p0[idx + 1] - p0[idx];
    L[1] = (e1 - e0) * k1 - zj * L[0];
    if (degree == 3) {
      L[2] = h * e1 * k1 - k1 * L[0] - zj * L[1];
      L[3] = h * h * e1 * k1 - 2.0 * k1 * L[1] - zj * L[2];
    }
    const auto& a = cells_[j];
    total += a[0] * L[0] + a[1] * L[1];
    if (degree == 3) total += a[2] * L[2] + a[3] * L[3];
  }
  return total;
}

Complex FreePropagator::at(double x, double t) const {
  if (!(t > 0.0)) throw DomainError("free propagator requires t > 0");
  const std::size_t n = grid_.size();
  const double h = grid_.spacing();
  const double alpha = 1.0 / (4.0 * t);
  if (rule_ == FreeQuadrature::Trapezoid) {
    if (h * h / (4.0 * t) > 0.25 * std::numbers::pi) {
      throw ResolutionError("trapezoid free propagator under-resolves the kernel oscillation (h^2/4t > pi/4)");
    }
    Complex sum{};
    for (std::size_t k = 0; k < n; ++k) {
      const double z = grid_.x(k) - x;
      const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
      sum += w * std::polar(1.0, alpha * z * z) * samples_[k];
    }
    return free_kernel_prefactor(t) * sum * h;
  }
  std::vector<Complex> p0(n);
  std::vector<Complex> e(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double z = grid_.x(k) - x;
    p0[k] = fresnel_primitive(z, alpha);
    e[k] = std::polar(1.0, alpha * z * z);
  }
  return free_kernel_prefactor(t) * cell_sum(p0, e, 0, grid_.x(0) - x, t);
}

std::vector<Complex> FreePropagator::on_grid(double t) const {
  if (!(t > 0.0)) throw DomainError("free propagator requires t > 0");
  const std::size_t n = grid_.size();
  if (rule_ == FreeQuadrature::Trapezoid) {
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = at(grid_.x(i), t);
    return out;
  }
  // z = y_k - x_i = (k - i) h depends only on the offset, so tabulate once.
  const double h = grid_.spacing();
  const double alpha = 1.0 / (4.0 * t);
  const std::size_t m = 2 * n - 1;
  std::vector<Complex> p0(m);
  std::vector<Complex> e(m);
  for (std::size_t q = 0; q < m; ++q) {
    const double z = (static_cast<double>(q) - static_cast<double>(n - 1)) * h;
    p0[q] = fresnel_primitive(z, alpha);
    e[q] = std::polar(1.0, alpha * z * z);
  }
  std::vector<Complex> out(n);
  const Complex pref = free_kernel_prefactor(t);
  for (std::size_t i = 0; i < n; ++i) {
    // Node k sits at table index k - i + n - 1.
    const auto offset = static_cast<std::ptrdiff_t>(n - 1) - static_cast<std::ptrdiff_t>(i);
    out[i] = pref * cell_sum(p0, e, offset, grid_.x(0) - grid_.x(i), t);
  }
  return out;
}

Complex free_propagator_at_origin(const WaveState& initial, double t, FreeQuadrature rule) {
  return FreePropagator(initial, rule).at(0.0, t);
}

}  // namespace pointnls
