#include "pointnls/fresnel.hpp"

#include <cmath>
#include <numbers>

namespace pointnls {

std::complex<double> fresnel_cs(double x) {
  using std::numbers::pi;
  constexpr double kEps = 1e-16;
  constexpr int kMaxIt = 200;
  constexpr double kTiny = 1e-300;
  const double ax = std::abs(x);
  double c = 0.0;
  double s = 0.0;
  if (ax < std::sqrt(kTiny)) {
    c = ax;
  } else if (ax <= 1.5) {
    // Alternate between the cosine and sine series, which share one running term.
    double sum = 0.0;
    double sums = 0.0;
    double sumc = ax;
    double sign = 1.0;
    const double fact = 0.5 * pi * ax * ax;
    bool odd = true;
    double term = ax;
    int n = 3;
    for (int k = 1; k <= kMaxIt; ++k) {
      term *= fact / k;
      sum += sign * term / n;
      const double test = std::abs(sum) * kEps;
      if (odd) {
        sign = -sign;
        sums = sum;
        sum = sumc;
      } else {
        sumc = sum;
        sum = sums;
      }
      if (term < test) break;
      odd = !odd;
      n += 2;
    }
    s = sums;
    c = sumc;
  } else {
    // Lentz evaluation of the continued fraction for erfc at z = (sqrt(pi)/2)(1 - i) x.
    const double pix2 = pi * ax * ax;
    std::complex<double> b(1.0, -pix2);
    std::complex<double> cc(1.0 / kTiny, 0.0);
    std::complex<double> d = 1.0 / b;
    std::complex<double> h = d;
    int n = -1;
    for (int k = 2; k <= kMaxIt; ++k) {
      n += 2;
      const double a = -static_cast<double>(n) * (n + 1);
      b += 4.0;
      d = 1.0 / (a * d + b);
      cc = b + a / cc;
      const std::complex<double> del = cc * d;
      h *= del;
      if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
    }
    h *= std::complex<double>(ax, -ax);
    const std::complex<double> cs =
        std::complex<double>(0.5, 0.5) * (1.0 - std::complex<double>(std::cos(0.5 * pix2), std::sin(0.5 * pix2)) * h);
    c = cs.real();
    s = cs.imag();
  }
  if (x < 0.0) {
    c = -c;
    s = -s;
  }
  return {c, s};
}

std::complex<double> fresnel_primitive(double z, double alpha) {
  const double scale = std::sqrt(std::numbers::pi / (2.0 * alpha));
  return scale * fresnel_cs(z / scale);
}

}  // namespace pointnls
