#include "pointnls/virial_weight.hpp"

#include <algorithm>
#include <cmath>

#include "pointnls/errors.hpp"

namespace pointnls {
namespace {

using Poly = std::array<double, 8>;

double eval(const Poly& c, double tau, int derivative) {
  double sum = 0.0;
  for (int k = 7; k >= derivative; --k) {
    double coeff = c[static_cast<std::size_t>(k)];
    for (int m = 0; m < derivative; ++m) coeff *= static_cast<double>(k - m);
    sum = sum * tau + coeff;
  }
  return sum;
}

Poly integrate(const Poly& c, double constant) {
  Poly out{};
  out[0] = constant;
  for (std::size_t k = 0; k + 1 < out.size(); ++k) out[k + 1] = c[k] / static_cast<double>(k + 1);
  return out;
}

// Quintic smoothstep 10 t^3 - 15 t^4 + 6 t^5 scaled by `height` plus `base`.
Poly smoothstep(double base, double height) {
  Poly c{};
  c[0] = base;
  c[3] = 10.0 * height;
  c[4] = -15.0 * height;
  c[5] = 6.0 * height;
  return c;
}

Poly constant(double v) {
  Poly c{};
  c[0] = v;
  return c;
}

// max |q| on [0, len] for a cubic q given by coefficients q[0..3].
double cubic_sup(const Poly& e, double len) {
  auto q = [&](double t) { return eval(e, t, 4); };
  double best = std::max(std::abs(q(0.0)), std::abs(q(len)));
  // q' = e^{(5)} is quadratic: A t^2 + B t + C.
  const double C = eval(e, 0.0, 5);
  const double B = eval(e, 0.0, 6);
  const double A = 0.5 * eval(e, 0.0, 7);
  std::array<double, 2> roots{-1.0, -1.0};
  if (A != 0.0) {
    const double disc = B * B - 4.0 * A * C;
    if (disc >= 0.0) {
      roots = {(-B - std::sqrt(disc)) / (2.0 * A), (-B + std::sqrt(disc)) / (2.0 * A)};
    }
  } else if (B != 0.0) {
    roots[0] = -C / B;
  }
  for (double r : roots) {
    if (r > 0.0 && r < len) best = std::max(best, std::abs(q(r)));
  }
  return best;
}

}  // namespace

VirialWeight::VirialWeight(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw DomainError("virial epsilon must be positive");

  // The -1 plateau on [2,4] balances the positive mass of b: 2 + 1/2 - 2 - 1/2 = 0.
  const std::array<double, 5> starts{0.0, 1.0, 2.0, 4.0, 5.0};
  const std::array<Poly, 5> b{constant(2.0), smoothstep(2.0, -3.0), constant(-1.0),
                              smoothstep(-1.0, 1.0), constant(0.0)};

  double d_start = 0.0;
  double e_start = 0.0;
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const Poly d = integrate(b[k], d_start);
    const Poly e = integrate(d, e_start);
    pieces_[k] = Piece{starts[k], e};
    if (k + 1 < pieces_.size()) {
      const double len = starts[k + 1] - starts[k];
      d_start = eval(d, len, 0);
      e_start = eval(e, len, 0);
      b2_sup_ = std::max(b2_sup_, cubic_sup(e, len));
    }
  }
}

double VirialWeight::eval_e(double s, int derivative) const {
  std::size_t k = pieces_.size() - 1;
  while (k > 0 && s < pieces_[k].start) --k;
  return eval(pieces_[k].e, s - pieces_[k].start, derivative);
}

double VirialWeight::generator(double s, int derivative) const {
  return eval_e(std::abs(s), derivative + 2);
}

double VirialWeight::value(double x) const {
  return eval_e(epsilon_ * std::abs(x), 0) / (epsilon_ * epsilon_);
}

double VirialWeight::first(double x) const {
  if (x == 0.0) return 0.0;
  const double sign = x > 0.0 ? 1.0 : -1.0;
  return sign * eval_e(epsilon_ * std::abs(x), 1) / epsilon_;
}

double VirialWeight::second(double x) const { return eval_e(epsilon_ * std::abs(x), 2); }

double VirialWeight::third(double x) const {
  if (x == 0.0) return 0.0;
  const double sign = x > 0.0 ? 1.0 : -1.0;
  return sign * epsilon_ * eval_e(epsilon_ * std::abs(x), 3);
}

double VirialWeight::fourth(double x) const {
  return epsilon_ * epsilon_ * eval_e(epsilon_ * std::abs(x), 4);
}

}  // namespace pointnls
