#pragma once

#include <array>

namespace pointnls {

/// Bounded virial weight a(x) = eps^{-2} e(eps x) with e'' = b, where the generator b
/// is 2 on [0,1], falls by a quintic smoothstep to -1 on [1,2], stays at -1 on [2,4]
/// and rises back to 0 on [4,5]. The plateau length makes the integral of b over
/// [0, inf) vanish, so d = e' and e are compactly supported / bounded.
///
/// Every piece is an exact polynomial, so all derivatives through the fourth are exact.
class VirialWeight {
 public:
  explicit VirialWeight(double epsilon);

  double epsilon() const noexcept { return epsilon_; }

  double value(double x) const;   // a
  double first(double x) const;   // a'
  double second(double x) const;  // a''
  double third(double x) const;   // a'''
  double fourth(double x) const;  // a''''

  /// a(x) = x^2 exactly for |x| <= 1/eps.
  double quadratic_radius() const noexcept { return 1.0 / epsilon_; }
  /// a is constant for |x| >= 5/eps.
  double support_radius() const noexcept { return 5.0 / epsilon_; }

  /// C = sup |b''|, so that |a''''| <= C eps^2. Computed from the polynomial pieces.
  double fourth_derivative_constant() const noexcept { return b2_sup_; }

  /// Value of the negative plateau of b (a'' >= this everywhere).
  static constexpr double plateau_value() { return -1.0; }

  /// Generator b and its antiderivatives on [0, inf).
  double generator(double s, int derivative = 0) const;

 private:
  struct Piece {
    double start;
    std::array<double, 8> e;  // e(start + tau) = sum e[k] tau^k
  };
  double eval_e(double s, int derivative) const;

  double epsilon_;
  std::array<Piece, 5> pieces_{};
  double b2_sup_ = 0.0;
};

inline VirialWeight construct_virial_weight(double epsilon) { return VirialWeight(epsilon); }

}  // namespace pointnls
