#pragma once

#include <array>
#include <vector>

#include "pointnls/wave_state.hpp"

namespace pointnls {

/// Quadrature for (U(t) psi0)(x) = (4 pi i t)^{-1/2} int exp(i (x-y)^2 / 4t) psi0(y) dy.
///  - Trapezoid: plain node sum; refuses when h^2/(4t) > pi/4.
///  - ProductLinear / ProductCubic: the data is interpolated (linearly, or by cubics whose
///    stencils never straddle the origin node) and integrated against the kernel exactly
///    through Fresnel integrals, so small t is not a problem.
enum class FreeQuadrature { Trapezoid, ProductLinear, ProductCubic };

/// Maps the configured number of quadrature points per cell (1, 2, 4) to a rule.
FreeQuadrature free_quadrature_from_points(int points);
int free_quadrature_points(FreeQuadrature rule);

/// e^{-i pi/4} (4 pi t)^{-1/2}, the branch of (4 pi i t)^{-1/2} used throughout.
Complex free_kernel_prefactor(double t);

class FreePropagator {
 public:
  FreePropagator(const WaveState& initial, FreeQuadrature rule);

  FreeQuadrature rule() const noexcept { return rule_; }
  const GridSpec& grid() const noexcept { return grid_; }

  /// (U(t) psi0)(x) for elapsed time t > 0.
  Complex at(double x, double t) const;

  /// (U(t) psi0)(x_k) at every node of the data grid.
  std::vector<Complex> on_grid(double t) const;

 private:
  Complex cell_sum(std::span<const Complex> p0, std::span<const Complex> e, std::ptrdiff_t offset,
                   double x_shift, double t) const;

  GridSpec grid_;
  FreeQuadrature rule_;
  std::vector<Complex> samples_;
  std::vector<std::array<Complex, 4>> cells_;  // monomial coefficients in s = y - x_j
};

/// (U(t) psi0)(0). Trapezoid by default.
Complex free_propagator_at_origin(const WaveState& initial, double t,
                                  FreeQuadrature rule = FreeQuadrature::Trapezoid);

}  // namespace pointnls
