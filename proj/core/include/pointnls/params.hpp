#pragma once

namespace pointnls {

/// Nonlinearity exponent p of i psi_t + psi_xx + delta |psi|^{p-1} psi = 0.
///
/// The critical Sobolev index is always recomputed from p, never stored.
class PhysicsParams {
 public:
  explicit PhysicsParams(double p);

  double p() const noexcept { return p_; }
  double sigma_c() const noexcept { return 0.5 - 1.0 / (p_ - 1.0); }
  bool mass_critical() const noexcept { return p_ == 3.0; }

  /// (1 - sigma_c) / sigma_c = (p + 1) / (p - 3); only meaningful for p > 3.
  double mass_weight_exponent() const noexcept { return (p_ + 1.0) / (p_ - 3.0); }

  friend bool operator==(const PhysicsParams&, const PhysicsParams&) = default;

 private:
  double p_;
};

}  // namespace pointnls
