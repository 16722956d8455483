#pragma once

// Minimal self-contained SVG line charts.

#include <string>
#include <vector>

namespace angdil::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
  bool markers = false;  // points only, no connecting line
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
};

/// Non-finite points, and non-positive ones on log axes, are skipped.
std::string render_svg(const Chart& chart);

}  // namespace angdil::cli
