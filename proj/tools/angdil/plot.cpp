#include "angdil/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace angdil::cli {

namespace {

constexpr double kWidth = 720, kHeight = 460;
constexpr double kLeft = 80, kRight = 190, kTop = 40, kBottom = 60;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0, hi = 1;

  double t(double v) const {
    const double a = log ? std::log10(v) : v;
    return (a - lo) / (hi - lo);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      const int step = std::max(1, static_cast<int>(std::ceil((hi - lo) / 8.0)));
      for (int e = static_cast<int>(std::ceil(lo)); e <= static_cast<int>(std::floor(hi)); e += step)
        out.push_back(std::pow(10.0, e));
      return out;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
      step = m * mag;
      if (step >= raw) break;
    }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step)
      out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return out;
  }
};

bool usable(double v, bool log) { return std::isfinite(v) && (!log || v > 0.0); }

Axis fit_axis(const Chart& c, bool is_x) {
  Axis ax;
  ax.log = is_x ? c.log_x : c.log_y;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const Series& s : c.series) {
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
      if (!usable(s.x[k], c.log_x) || !usable(s.y[k], c.log_y)) continue;
      const double v = is_x ? s.x[k] : s.y[k];
      const double a = ax.log ? std::log10(v) : v;
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
  }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
    const double pad = ax.log ? 0.5 : std::max(0.5 * std::abs(hi), 0.5);
    lo -= pad;
    hi += pad;
  } else if (!ax.log) {
    const double pad = 0.04 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  ax.lo = lo;
  ax.hi = hi;
  return ax;
}

}  // namespace

std::string render_svg(const Chart& c) {
  const Axis ax = fit_axis(c, true), ay = fit_axis(c, false);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const auto px = [&](double v) { return kLeft + ax.t(v) * pw; };
  const auto py = [&](double v) { return kTop + (1.0 - ay.t(v)) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(c.title) + "</text>\n";

  // grid and ticks
  for (double v : ax.ticks()) {
    const double x = px(v);
    out += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(kTop + ph) + "\" stroke=\"#e6e6e6\"/>\n";
    out += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + ph + 16) +
           "\" text-anchor=\"middle\">" + tick_label(v) + "</text>\n";
  }
  for (double v : ay.ticks()) {
    const double y = py(v);
    out += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + pw) +
           "\" y2=\"" + num(y) + "\" stroke=\"#e6e6e6\"/>\n";
    out += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" +
           tick_label(v) + "</text>\n";
  }
  out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 18) +
         "\" text-anchor=\"middle\">" + escape(c.x_label + (c.log_x ? " (log)" : "")) + "</text>\n";
  out += "<text transform=\"translate(18 " + num(kTop + ph / 2) +
         ") rotate(-90)\" text-anchor=\"middle\">" + escape(c.y_label + (c.log_y ? " (log)" : "")) +
         "</text>\n";

  for (std::size_t s = 0; s < c.series.size(); ++s) {
    const Series& ser = c.series[s];
    const std::string color = kColors[s % std::size(kColors)];
    std::string pts;
    for (std::size_t k = 0; k < ser.x.size() && k < ser.y.size(); ++k) {
      if (!usable(ser.x[k], c.log_x) || !usable(ser.y[k], c.log_y)) continue;
      if (ser.markers) {
        out += "<circle cx=\"" + num(px(ser.x[k])) + "\" cy=\"" + num(py(ser.y[k])) +
               "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
      } else {
        pts += num(px(ser.x[k])) + "," + num(py(ser.y[k])) + " ";
      }
    }
    if (!pts.empty()) {
      pts.pop_back();
      out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
             (ser.dashed ? "2.5\" stroke-dasharray=\"6 4\"" : "1.5\"") + " points=\"" + pts +
             "\"/>\n";
    }
    // legend
    const double ly = kTop + 14 + 18.0 * static_cast<double>(s);
    const double lx = kLeft + pw + 12;
    if (ser.markers) {
      out += "<circle cx=\"" + num(lx + 11) + "\" cy=\"" + num(ly - 4) + "\" r=\"3\" fill=\"" +
             color + "\"/>\n";
    } else {
      out += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" + num(lx + 22) +
             "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"" +
             (ser.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    }
    out += "<text x=\"" + num(lx + 28) + "\" y=\"" + num(ly) + "\">" + escape(ser.name) +
           "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace angdil::cli
