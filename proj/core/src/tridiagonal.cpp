#include "pointnls/tridiagonal.hpp"

#include <algorithm>
#include <stdexcept>

namespace pointnls {
namespace {

std::complex<double> reciprocal(std::complex<double> z) {
  const double s = 1.0 / std::norm(z);
  return {z.real() * s, -z.imag() * s};
}

}  // namespace

ConstantTridiagonal::ConstantTridiagonal(std::size_t n, Complex diag, Complex off) : n_(n), off_(off) {
  if (n == 0) throw std::invalid_argument("empty tridiagonal system");
  Complex pivot = diag;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) pivot = diag - off * upper_[i - 1];
    const Complex inv = reciprocal(pivot);
    if (i > 0 && std::abs(inv - inv_pivot_[i - 1]) <= 4e-16 * std::abs(inv)) break;
    inv_pivot_.push_back(inv);
    upper_.push_back(off * inv);
  }
  inv_limit_ = inv_pivot_.back();
  upper_limit_ = upper_.back();
}

void ConstantTridiagonal::back_substitute(std::span<Complex> x) const {
  for (std::size_t i = n_ - 1; i-- > 0;) x[i] -= upper(i) * x[i + 1];
}

void ConstantTridiagonal::solve_in_place(std::span<Complex> rhs) const {
  if (rhs.size() != n_) throw std::invalid_argument("tridiagonal rhs size mismatch");
  rhs[0] *= inv_pivot(0);
  for (std::size_t i = 1; i < n_; ++i) rhs[i] = (rhs[i] - off_ * rhs[i - 1]) * inv_pivot(i);
  back_substitute(rhs);
}

void ConstantTridiagonal::solve_unit(std::size_t k, Complex value, std::span<Complex> out) const {
  if (out.size() != n_ || k >= n_) throw std::invalid_argument("tridiagonal unit solve out of range");
  // Both sweeps decay geometrically away from k; truncating below kNegligible keeps the
  // arithmetic out of the subnormal range.
  constexpr double kNegligible = 1e-250;
  const double cutoff = kNegligible * std::abs(value);
  for (std::size_t i = 0; i < k; ++i) out[i] = Complex{};
  out[k] = value * inv_pivot(k);
  std::size_t end = n_;
  for (std::size_t i = k + 1; i < n_; ++i) {
    out[i] = -off_ * out[i - 1] * inv_pivot(i);
    if (std::abs(out[i].real()) + std::abs(out[i].imag()) < cutoff) {
      end = i;
      break;
    }
  }
  for (std::size_t i = end; i < n_; ++i) out[i] = Complex{};
  for (std::size_t i = std::min(end, n_ - 1); i-- > 0;) {
    out[i] -= upper(i) * out[i + 1];
    if (i < k && std::abs(out[i].real()) + std::abs(out[i].imag()) < cutoff) {
      for (std::size_t m = 0; m < i; ++m) out[m] = Complex{};
      out[i] = Complex{};
      break;
    }
  }
}

}  // namespace pointnls
