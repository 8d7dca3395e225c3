#pragma once

// Closed forms and brute-force quadratures used as independent references in the tests.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

namespace oracle {

using Complex = std::complex<double>;

/// Composite Simpson rule with n (even) panels.
inline Complex simpson(const std::function<Complex(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  Complex sum = f(a) + f(b);
  for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return sum * h / 3.0;
}

/// C(x) + i S(x) by brute-force Simpson on a grid fine enough for |x| <= 10.
inline Complex fresnel(double x) {
  const int n = 2 * static_cast<int>(4000.0 * (1.0 + std::abs(x) * std::abs(x)));
  return simpson([](double t) { return std::polar(1.0, std::numbers::pi * t * t / 2.0); }, 0.0, x, n);
}

/// Free evolution of exp(-x^2): (1 + 4it)^{-1/2} exp(-x^2 / (1 + 4it)).
inline Complex free_gaussian(double x, double t) {
  const Complex d(1.0, 4.0 * t);
  return std::exp(-x * x / d) / std::sqrt(d);
}

/// ||A exp(-x^2/w^2) exp(-i c x^2)||^2 on the whole line.
inline double gaussian_mass(double a, double w) { return a * a * w * std::sqrt(std::numbers::pi / 2.0); }

/// ||d/dx (A exp(-x^2/w^2) exp(-i c x^2))||^2 on the whole line.
inline double gaussian_kinetic(double a, double w, double c) {
  return a * a * std::sqrt(std::numbers::pi / 2.0) * (1.0 / w + c * c * w * w * w);
}

/// E = kinetic/2 - |A|^{p+1}/(p+1) for Gaussian data.
inline double gaussian_energy(double a, double w, double c, double p) {
  return 0.5 * gaussian_kinetic(a, w, c) - std::pow(std::abs(a), p + 1.0) / (p + 1.0);
}

/// Integral of 2^{2/(p-1)} e^{-2|x|} over |x| <= r.
inline double ground_state_window_mass(double p, double r) {
  return std::pow(2.0, 2.0 / (p - 1.0)) * (1.0 - std::exp(-2.0 * r));
}

/// Peak |s''| of the quintic smoothstep 10t^3 - 15t^4 + 6t^5 on [0,1], attained at t = (3 -+ sqrt3)/6.
inline double smoothstep_curvature_peak() { return 10.0 * std::sqrt(3.0) / 3.0; }

}  // namespace oracle
