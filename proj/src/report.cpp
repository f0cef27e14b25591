#include "banklaine/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "banklaine/core.hpp"

namespace banklaine::report {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

const std::array<const char*, 6> kColours = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#333333"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

struct Axis {
  double lo;
  double hi;
  bool log;
  double pixel_lo;
  double pixel_hi;

  [[nodiscard]] double map(double v) const {
    const double a = log ? std::log10(v) : v;
    return pixel_lo + (a - lo) / (hi - lo) * (pixel_hi - pixel_lo);
  }
};

// Ticks in axis coordinates (log10 for log axes).
std::vector<double> ticks(double lo, double hi, bool log) {
  std::vector<double> out;
  if (log) {
    for (double k = std::ceil(lo); k <= std::floor(hi) + 1e-12; k += 1.0) out.push_back(k);
    if (out.size() >= 2) return out;
  }
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  out.clear();
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) out.push_back(t);
  return out;
}

void header(std::ostream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
     << "</text>\n";
}

}  // namespace

void write_line_svg(std::ostream& os, const LinePlot& plot) {
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!plot.log_x || x > 0.0) && (!plot.log_y || y > 0.0);
  };
  double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      const double ax = plot.log_x ? std::log10(s.x[i]) : s.x[i];
      const double ay = plot.log_y ? std::log10(s.y[i]) : s.y[i];
      x_lo = std::min(x_lo, ax);
      x_hi = std::max(x_hi, ax);
      y_lo = std::min(y_lo, ay);
      y_hi = std::max(y_hi, ay);
    }
  }
  if (!(x_lo <= x_hi)) throw Error(ErrorCode::kInsufficientData, "plot '" + plot.title + "' has no finite points");
  if (x_hi - x_lo < 1e-12) { x_lo -= 0.5; x_hi += 0.5; }
  if (y_hi - y_lo < 1e-12) { y_lo -= 0.5; y_hi += 0.5; }
  const double px = 0.03 * (x_hi - x_lo), py = 0.05 * (y_hi - y_lo);
  const Axis ax{x_lo - px, x_hi + px, plot.log_x, kLeft, kWidth - kRight};
  const Axis ay{y_lo - py, y_hi + py, plot.log_y, kHeight - kBottom, kTop};
  auto to_x = [&](double a) { return ax.pixel_lo + (a - ax.lo) / (ax.hi - ax.lo) * (ax.pixel_hi - ax.pixel_lo); };
  auto to_y = [&](double a) { return ay.pixel_lo + (a - ay.lo) / (ay.hi - ay.lo) * (ay.pixel_hi - ay.pixel_lo); };

  header(os, plot.title);
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight << "\" height=\""
     << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(ax.lo, ax.hi, ax.log)) {
    const double x = to_x(t);
    os << "<line x1=\"" << num(x) << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << num(x) << "\" y2=\""
       << kHeight - kBottom + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(x) << "\" y=\"" << kHeight - kBottom + 18 << "\" text-anchor=\"middle\">"
       << num(ax.log ? std::pow(10.0, t) : t) << "</text>\n";
  }
  for (double t : ticks(ay.lo, ay.hi, ay.log)) {
    const double y = to_y(t);
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(y) << "\" x2=\"" << kLeft << "\" y2=\"" << num(y)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">"
       << num(ay.log ? std::pow(10.0, t) : t) << "</text>\n";
  }
  os << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << (kTop + kHeight - kBottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << (kTop + kHeight - kBottom) / 2 << ")\">" << escape(plot.y_label) << "</text>\n";

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* colour = kColours[k % kColours.size()];
    std::ostringstream pts;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      const double x = ax.map(s.x[i]);
      const double y = ay.map(s.y[i]);
      if (s.markers) {
        os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\" fill=\"" << colour << "\"/>\n";
      } else {
        pts << num(x) << "," << num(y) << " ";
      }
    }
    if (!s.markers) {
      os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"" << pts.str()
         << "\"/>\n";
    }
    const double ly = kTop + 16.0 + 16.0 * static_cast<double>(k);
    os << "<rect x=\"" << kLeft + 12 << "\" y=\"" << ly - 9 << "\" width=\"10\" height=\"10\" fill=\"" << colour
       << "\"/>\n";
    os << "<text x=\"" << kLeft + 28 << "\" y=\"" << ly << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
}

void write_heatmap_svg(std::ostream& os, const HeatMap& map) {
  if (map.nx < 1 || map.ny < 1 || map.values.size() != static_cast<std::size_t>(map.nx) * map.ny) {
    throw Error(ErrorCode::kInvalidInput, "heat map size does not match its values");
  }
  const double span = map.v_max > map.v_min ? map.v_max - map.v_min : 1.0;
  const double plot_w = kWidth - kLeft - kRight - 60.0;
  const double plot_h = kHeight - kTop - kBottom;
  const double cw = plot_w / map.nx;
  const double ch = plot_h / map.ny;
  // white -> dark blue
  auto colour = [&](double v) {
    const double t = std::clamp((v - map.v_min) / span, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(255.0 * (1.0 - t) + 8.0 * t));
    const int g = static_cast<int>(std::lround(255.0 * (1.0 - t) + 48.0 * t));
    const int b = static_cast<int>(std::lround(255.0 * (1.0 - t) + 107.0 * t));
    std::ostringstream c;
    c << "rgb(" << r << "," << g << "," << b << ")";
    return c.str();
  };
  header(os, map.title);
  for (int j = 0; j < map.ny; ++j) {
    for (int i = 0; i < map.nx; ++i) {
      const double v = map.values[static_cast<std::size_t>(j) * map.nx + i];
      if (!std::isfinite(v)) continue;
      os << "<rect x=\"" << num(kLeft + i * cw) << "\" y=\"" << num(kTop + (map.ny - 1 - j) * ch) << "\" width=\""
         << num(cw + 0.05) << "\" height=\"" << num(ch + 0.05) << "\" fill=\"" << colour(v) << "\"/>\n";
    }
  }
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kLeft << "\" y=\"" << kHeight - kBottom + 18 << "\">" << num(map.x_min) << "</text>\n";
  os << "<text x=\"" << kLeft + plot_w << "\" y=\"" << kHeight - kBottom + 18 << "\" text-anchor=\"end\">"
     << num(map.x_max) << "</text>\n";
  os << "<text x=\"" << kLeft - 8 << "\" y=\"" << kHeight - kBottom << "\" text-anchor=\"end\">" << num(map.y_min)
     << "</text>\n";
  os << "<text x=\"" << kLeft - 8 << "\" y=\"" << kTop + 10 << "\" text-anchor=\"end\">" << num(map.y_max)
     << "</text>\n";
  // colour bar
  const double bx = kLeft + plot_w + 20.0;
  for (int k = 0; k < 50; ++k) {
    const double v = map.v_min + span * (k + 0.5) / 50.0;
    os << "<rect x=\"" << bx << "\" y=\"" << num(kTop + plot_h * (49 - k) / 50.0) << "\" width=\"14\" height=\""
       << num(plot_h / 50.0 + 0.05) << "\" fill=\"" << colour(v) << "\"/>\n";
  }
  os << "<text x=\"" << bx + 18 << "\" y=\"" << kTop + 10 << "\">" << num(map.v_max) << "</text>\n";
  os << "<text x=\"" << bx + 18 << "\" y=\"" << kTop + plot_h << "\">" << num(map.v_min) << "</text>\n";
  os << "</svg>\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidInput, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kInvalidInput, "write failed for " + path.string());
}

}  // namespace banklaine::report
