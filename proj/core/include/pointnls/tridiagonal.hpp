#pragma once

#include <complex>
#include <span>
#include <vector>

namespace pointnls {

/// LU factors of the constant-coefficient tridiagonal matrix tridiag(off, diag, off) of size n,
/// reused across right-hand sides (Thomas algorithm). The pivots of a diagonally dominant
/// Toeplitz matrix converge geometrically; once two consecutive pivots agree to rounding the
/// rest are taken equal to the limit, so only a short prefix is stored.
class ConstantTridiagonal {
 public:
  using Complex = std::complex<double>;

  ConstantTridiagonal(std::size_t n, Complex diag, Complex off);

  std::size_t size() const noexcept { return n_; }
  std::size_t stored_pivots() const noexcept { return inv_pivot_.size(); }

  /// Overwrites rhs with the solution.
  void solve_in_place(std::span<Complex> rhs) const;

  /// Solves for value * e_k into `out` (size n), skipping the zero leading part of the sweep.
  void solve_unit(std::size_t k, Complex value, std::span<Complex> out) const;

 private:
  Complex inv_pivot(std::size_t i) const noexcept { return i < inv_pivot_.size() ? inv_pivot_[i] : inv_limit_; }
  Complex upper(std::size_t i) const noexcept { return i < upper_.size() ? upper_[i] : upper_limit_; }
  void back_substitute(std::span<Complex> x) const;

  std::size_t n_;
  Complex off_;
  std::vector<Complex> inv_pivot_;
  std::vector<Complex> upper_;  // modified super-diagonal
  Complex inv_limit_;
  Complex upper_limit_;
};

}  // namespace pointnls
