#include "pointnls/grid.hpp"

#include <cmath>
#include <string>

#include "pointnls/errors.hpp"

namespace pointnls {

GridSpec::GridSpec(double half_width, std::size_t num_points)
    : half_width_(half_width), num_points_(num_points), spacing_(0.0) {
  if (!std::isfinite(half_width) || half_width <= 0.0) {
    throw DomainError("grid half_width must be positive");
  }
  if (num_points < 3 || num_points % 2 == 0) {
    throw DomainError("grid num_points must be odd and >= 3 (got " + std::to_string(num_points) +
                      "); an odd count places a node at x = 0");
  }
  spacing_ = 2.0 * half_width / static_cast<double>(num_points - 1);
}

std::vector<double> GridSpec::coordinates() const {
  std::vector<double> xs(num_points_);
  for (std::size_t j = 0; j < num_points_; ++j) xs[j] = x(j);
  return xs;
}

}  // namespace pointnls
