#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace pointnls {

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
  bool log_x = false;
  bool log_y = false;
};

/// Static single-series line chart. Non-finite points, and non-positive ones on log axes,
/// are dropped. Returns false when nothing could be drawn or the file could not be written.
bool write_svg_line_plot(const std::filesystem::path& path, const LinePlot& plot);

}  // namespace pointnls
