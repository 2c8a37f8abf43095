#include "ioopt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ioopt {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
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

struct Viewport {
  double x, y, w, h;
  double x_min, x_max, y_min, y_max;

  double map_x(double v) const {
    const double range = x_max - x_min == 0.0 ? 1.0 : x_max - x_min;
    return x + (v - x_min) / range * w;
  }
  double map_y(double v) const {
    const double range = y_max - y_min == 0.0 ? 1.0 : y_max - y_min;
    return y + (1.0 - (v - y_min) / range) * h;
  }
};

void emit_frame(std::ostringstream& svg, const Viewport& vp, const std::string& title) {
  svg << "  <rect x=\"" << fmt(vp.x) << "\" y=\"" << fmt(vp.y) << "\" width=\"" << fmt(vp.w) << "\" height=\""
      << fmt(vp.h) << "\" style=\"fill:none;stroke:#333;stroke-width:1\"/>\n";
  svg << "  <text x=\"" << fmt(vp.x + vp.w / 2) << "\" y=\"" << fmt(vp.y - 8)
      << "\" style=\"font:13px sans-serif;text-anchor:middle\">" << xml_escape(title) << "</text>\n";
  // y extent labels
  svg << "  <text x=\"" << fmt(vp.x - 4) << "\" y=\"" << fmt(vp.y + 4)
      << "\" style=\"font:10px sans-serif;text-anchor:end\">" << fmt(vp.y_max) << "</text>\n";
  svg << "  <text x=\"" << fmt(vp.x - 4) << "\" y=\"" << fmt(vp.y + vp.h)
      << "\" style=\"font:10px sans-serif;text-anchor:end\">" << fmt(vp.y_min) << "</text>\n";
  if (vp.y_min < 0.0 && vp.y_max > 0.0) {
    svg << "  <line x1=\"" << fmt(vp.x) << "\" y1=\"" << fmt(vp.map_y(0)) << "\" x2=\"" << fmt(vp.x + vp.w)
        << "\" y2=\"" << fmt(vp.map_y(0)) << "\" style=\"stroke:#999;stroke-dasharray:3,3\"/>\n";
  }
  // x ticks at integer steps (at most ~10 labels)
  const int first = static_cast<int>(std::ceil(vp.x_min));
  const int last = static_cast<int>(std::floor(vp.x_max));
  const int stride = std::max(1, (last - first) / 10 + 1);
  for (int s = first; s <= last; s += stride) {
    svg << "  <text x=\"" << fmt(vp.map_x(s)) << "\" y=\"" << fmt(vp.y + vp.h + 14)
        << "\" style=\"font:10px sans-serif;text-anchor:middle\">" << s << "</text>\n";
  }
}

void emit_series(std::ostringstream& svg, const Viewport& vp, const Trajectory& t, std::size_t k, std::size_t upto,
                 const char* color) {
  svg << "  <polyline style=\"fill:none;stroke:" << color << ";stroke-width:1.5\" points=\"";
  for (std::size_t n = 0; n <= upto && n < t.steps.size(); ++n) {
    if (n) svg << ' ';
    svg << fmt(vp.map_x(static_cast<double>(n))) << ',' << fmt(vp.map_y(t.steps[n][k]));
  }
  svg << "\"/>\n";
}

std::pair<double, double> value_range(const Trajectory& t, std::size_t upto) {
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (std::size_t n = 0; n <= upto && n < t.steps.size(); ++n)
    for (double x : t.steps[n]) {
      lo = first ? x : std::min(lo, x);
      hi = first ? x : std::max(hi, x);
      first = false;
    }
  if (lo == hi) {
    lo -= 1.0;
    hi += 1.0;
  }
  return {lo, hi};
}

}  // namespace

std::string trajectory_svg(const Trajectory& t, const StabilityReport& report, const std::vector<std::string>& labels) {
  std::ostringstream svg;
  const double width = 960, height = 420;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" style=\"fill:#fff\"/>\n";
  if (t.steps.empty()) {
    svg << "</svg>\n";
    return svg.str();
  }
  const std::size_t d = t.steps.front().size();
  const std::size_t last = t.steps.size() - 1;

  std::vector<std::pair<Viewport, std::size_t>> panels;
  if (report.collapse_time && *report.collapse_time >= 1) {
    const std::size_t pre = static_cast<std::size_t>(*report.collapse_time) - 1;
    auto [lo1, hi1] = value_range(t, pre);
    auto [lo2, hi2] = value_range(t, last);
    panels.push_back({{60, 40, 380, 320, 0, static_cast<double>(std::max<std::size_t>(pre, 1)), lo1, hi1}, pre});
    panels.push_back({{540, 40, 380, 320, 0, static_cast<double>(last), lo2, hi2}, last});
  } else {
    auto [lo, hi] = value_range(t, last);
    panels.push_back({{60, 40, 860, 320, 0, static_cast<double>(std::max<std::size_t>(last, 1)), lo, hi}, last});
  }

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& [vp, upto] = panels[p];
    std::string title = std::string(to_string(t.space)) + "-space, steps 0-" + std::to_string(upto);
    emit_frame(svg, vp, title);
    for (std::size_t k = 0; k < d; ++k) emit_series(svg, vp, t, k, upto, kPalette[k % std::size(kPalette)]);
  }

  if (report.collapse_time && report.collapse_product) {
    const auto& vp = panels.back().first;
    const double x = vp.map_x(*report.collapse_time);
    svg << "  <line x1=\"" << fmt(x) << "\" y1=\"" << fmt(vp.y) << "\" x2=\"" << fmt(x) << "\" y2=\""
        << fmt(vp.y + vp.h) << "\" style=\"stroke:#000;stroke-dasharray:5,3\"/>\n";
    const double y = vp.map_y(t.steps[*report.collapse_time][*report.collapse_product]);
    svg << "  <circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"4\" style=\"fill:#000\"/>\n";
    svg << "  <text x=\"" << fmt(x - 4) << "\" y=\"" << fmt(vp.y + 14)
        << "\" style=\"font:11px sans-serif;text-anchor:end\">T = " << *report.collapse_time << "</text>\n";
  }

  for (std::size_t k = 0; k < d; ++k) {
    const double lx = 60 + 140.0 * static_cast<double>(k % 6);
    const double ly = 395 + 14.0 * static_cast<double>(k / 6);
    svg << "  <rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly - 8) << "\" width=\"10\" height=\"10\" style=\"fill:"
        << kPalette[k % std::size(kPalette)] << "\"/>\n";
    svg << "  <text x=\"" << fmt(lx + 14) << "\" y=\"" << fmt(ly) << "\" style=\"font:11px sans-serif\">"
        << xml_escape(k < labels.size() ? labels[k] : "p" + std::to_string(k + 1)) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string cdf_svg(const ClassificationReport& c, const std::vector<std::string>& labels) {
  std::ostringstream svg;
  const std::size_t n = c.cumulative.size();
  const double width = 720, height = 420;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" viewBox=\"0 0 " << fmt(width) << ' ' << fmt(height) << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" style=\"fill:#fff\"/>\n";
  Viewport vp{60, 40, 620, 320, 0.0, static_cast<double>(std::max<std::size_t>(n, 1)), 0.0, 1.0};
  emit_frame(svg, vp, "Cumulative distribution by ascending rank");

  for (double theta : {c.theta_weak, c.theta_pillar}) {
    svg << "  <line x1=\"" << fmt(vp.x) << "\" y1=\"" << fmt(vp.map_y(theta)) << "\" x2=\"" << fmt(vp.x + vp.w)
        << "\" y2=\"" << fmt(vp.map_y(theta)) << "\" style=\"stroke:#aaa;stroke-dasharray:2,4\"/>\n";
  }
  // Class boundaries sit halfway between the last product of one class and
  // the first of the next.
  const double weak_edge = static_cast<double>(c.weak.size()) + 0.5;
  const double pillar_edge = static_cast<double>(n - c.pillar.size()) + 0.5;
  for (double edge : {weak_edge, pillar_edge}) {
    svg << "  <line x1=\"" << fmt(vp.map_x(edge)) << "\" y1=\"" << fmt(vp.y) << "\" x2=\"" << fmt(vp.map_x(edge))
        << "\" y2=\"" << fmt(vp.y + vp.h) << "\" style=\"stroke:#d62728;stroke-width:1.5\"/>\n";
  }

  svg << "  <polyline style=\"fill:none;stroke:#1f77b4;stroke-width:1.5\" points=\"" << fmt(vp.map_x(0)) << ','
      << fmt(vp.map_y(0));
  for (std::size_t pos = 0; pos < n; ++pos)
    svg << ' ' << fmt(vp.map_x(static_cast<double>(pos + 1))) << ',' << fmt(vp.map_y(c.cumulative[pos]));
  svg << "\"/>\n";
  for (std::size_t pos = 0; pos < n; ++pos) {
    const auto product = c.ascending_order[pos];
    svg << "  <circle cx=\"" << fmt(vp.map_x(static_cast<double>(pos + 1))) << "\" cy=\""
        << fmt(vp.map_y(c.cumulative[pos])) << "\" r=\"2.5\" style=\"fill:#1f77b4\"><title>"
        << xml_escape(product < labels.size() ? labels[product] : "p" + std::to_string(product + 1))
        << "</title></circle>\n";
  }
  svg << "  <text x=\"" << fmt(vp.x) << "\" y=\"" << fmt(vp.y + vp.h + 32) << "\" style=\"font:11px sans-serif\">weak "
      << c.weak.size() << ", intermediate " << c.intermediate.size() << ", pillar " << c.pillar.size() << "</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ioopt
