#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace banklaine::report {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string label;
  bool markers = false;  // draw points instead of a polyline
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
};

/// Static SVG with axes, ticks and a legend. Non-finite (or non-positive on a
/// log axis) points are dropped. Throws kInsufficientData when nothing is left.
void write_line_svg(std::ostream& os, const LinePlot& plot);

struct HeatMap {
  std::string title;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  int nx = 0;
  int ny = 0;
  std::vector<double> values;  // row-major, row 0 at y_min; NaN cells left blank
  double v_min = 0.0;
  double v_max = 1.0;
};

void write_heatmap_svg(std::ostream& os, const HeatMap& map);

/// Writes `text` to `path`, creating parent directories. Throws kInvalidInput on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace banklaine::report
