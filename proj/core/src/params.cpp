#include "pointnls/params.hpp"

#include <cmath>

#include "pointnls/errors.hpp"

namespace pointnls {

PhysicsParams::PhysicsParams(double p) : p_(p) {
  if (!std::isfinite(p) || p <= 1.0) {
    throw DomainError("nonlinearity exponent must satisfy p > 1");
  }
}

}  // namespace pointnls
