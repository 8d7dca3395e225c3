#pragma once

#include <cstddef>
#include <vector>

namespace pointnls {

/// Uniform symmetric grid on [-L, L] with an odd number of nodes, so one node sits at x = 0.
class GridSpec {
 public:
  GridSpec(double half_width, std::size_t num_points);

  double half_width() const noexcept { return half_width_; }
  std::size_t size() const noexcept { return num_points_; }
  double spacing() const noexcept { return spacing_; }
  std::size_t center() const noexcept { return (num_points_ - 1) / 2; }

  /// x_j = (j - c) h; exactly antisymmetric about the center node and exactly 0 there.
  double x(std::size_t j) const noexcept {
    return (static_cast<double>(j) - static_cast<double>(center())) * spacing_;
  }

  std::vector<double> coordinates() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double half_width_;
  std::size_t num_points_;
  double spacing_;
};

}  // namespace pointnls
