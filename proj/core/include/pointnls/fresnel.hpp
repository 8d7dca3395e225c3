#pragma once

#include <complex>

namespace pointnls {

/// C(x) + i S(x) with C = int_0^x cos(pi t^2/2) dt and S = int_0^x sin(pi t^2/2) dt.
/// Power series for |x| <= 1.5, continued fraction for the complementary error function beyond.
std::complex<double> fresnel_cs(double x);

/// int_0^z exp(i alpha s^2) ds for alpha > 0 (any real z).
std::complex<double> fresnel_primitive(double z, double alpha);

}  // namespace pointnls
