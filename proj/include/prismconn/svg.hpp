#pragma once

// Minimal SVG: x/y line and scatter plots (log y by default) and a
// categorical grid for phase maps. Views only; nothing here feeds back into
// the CSV outputs.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "prismconn/errors.hpp"

namespace prismconn {

struct PlotSeries {
  std::string name;
  std::string color = "#000000";
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> err;  // optional symmetric error bars
  bool points = false;      // scatter instead of line
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label = "rho";
  std::string y_label = "P_out";
  bool log_y = true;
  double y_floor = 1e-8;  // log-scale cut for zero / tiny values
  int width = 720;
  int height = 480;
};

namespace svg_detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

}  // namespace svg_detail

inline std::string render_plot(const PlotSpec& spec, const std::vector<PlotSeries>& series) {
  using svg_detail::esc;
  using svg_detail::num;
  const double left = 70, right = 160, top = 40, bottom = 50;
  const double pw = spec.width - left - right, ph = spec.height - top - bottom;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  auto ty = [&](double y) { return spec.log_y ? std::log10(std::max(y, spec.y_floor)) : y; };
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, ty(s.y[i]));
      ymax = std::max(ymax, ty(s.y[i]));
    }
  }
  if (!(xmax > xmin)) { xmin -= 0.5; xmax += 0.5; }
  if (!(ymax > ymin)) { ymin -= 0.5; ymax += 0.5; }
  if (spec.log_y) { ymin = std::floor(ymin); ymax = std::ceil(ymax); }
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + (1.0 - (ty(y) - ymin) / (ymax - ymin)) * ph; };
  auto pyt = [&](double t) { return top + (1.0 - (t - ymin) / (ymax - ymin)) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
    << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(left + pw / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
    << esc(spec.title) << "</text>\n";
  o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw)
    << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  // ticks
  for (int i = 0; i <= 5; ++i) {
    const double x = xmin + (xmax - xmin) * i / 5.0;
    o << "<text x=\"" << num(px(x)) << "\" y=\"" << num(top + ph + 18)
      << "\" text-anchor=\"middle\">" << svg_detail::num(x) << "</text>\n";
  }
  if (spec.log_y) {
    for (int e = static_cast<int>(ymin); e <= static_cast<int>(ymax); ++e) {
      o << "<line x1=\"" << num(left) << "\" x2=\"" << num(left + pw) << "\" y1=\"" << num(pyt(e))
        << "\" y2=\"" << num(pyt(e)) << "\" stroke=\"#dddddd\"/>\n";
      o << "<text x=\"" << num(left - 6) << "\" y=\"" << num(pyt(e) + 4)
        << "\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
  } else {
    for (int i = 0; i <= 5; ++i) {
      const double t = ymin + (ymax - ymin) * i / 5.0;
      o << "<text x=\"" << num(left - 6) << "\" y=\"" << num(pyt(t) + 4)
        << "\" text-anchor=\"end\">" << num(t) << "</text>\n";
    }
  }
  o << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << spec.height - 10
    << "\" text-anchor=\"middle\">" << esc(spec.x_label) << "</text>\n";
  o << "<text transform=\"translate(16," << num(top + ph / 2)
    << ") rotate(-90)\" text-anchor=\"middle\">" << esc(spec.y_label) << "</text>\n";

  int legend = 0;
  for (const auto& s : series) {
    const std::string dash = s.dashed ? " stroke-dasharray=\"6,4\"" : "";
    if (s.points) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.y[i])) continue;
        if (i < s.err.size() && s.err[i] > 0) {
          const double lo = std::max(s.y[i] - s.err[i], spec.log_y ? spec.y_floor : -INFINITY);
          o << "<line x1=\"" << num(px(s.x[i])) << "\" x2=\"" << num(px(s.x[i])) << "\" y1=\""
            << num(py(lo)) << "\" y2=\"" << num(py(s.y[i] + s.err[i])) << "\" stroke=\"" << s.color
            << "\"/>\n";
        }
        o << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i]))
          << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
      }
    } else {
      o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"" << dash
        << " points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i)
        if (std::isfinite(s.y[i])) o << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
      o << "\"/>\n";
    }
    const double ly = top + 10 + 18 * legend++;
    const double lx = left + pw + 12;
    o << "<line x1=\"" << num(lx) << "\" x2=\"" << num(lx + 20) << "\" y1=\"" << num(ly)
      << "\" y2=\"" << num(ly) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"" << dash
      << "/>\n";
    o << "<text x=\"" << num(lx + 26) << "\" y=\"" << num(ly + 4) << "\">" << esc(s.name)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

struct GridPlot {
  std::string title;
  std::vector<double> x;  // columns (rho)
  std::vector<double> y;  // rows (L)
  std::vector<int> cell;  // category per (row, column), row-major
  std::vector<std::string> category_names;
  std::vector<std::string> category_colors;
  std::string x_label = "rho";
  std::string y_label = "L";
};

inline std::string render_grid(const GridPlot& g) {
  using svg_detail::esc;
  using svg_detail::num;
  const double left = 70, top = 40, pw = 480, ph = 400, right = 160, bottom = 50;
  const double cw = pw / std::max<std::size_t>(g.x.size(), 1);
  const double ch = ph / std::max<std::size_t>(g.y.size(), 1);
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(left + pw + right)
    << "\" height=\"" << num(top + ph + bottom) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(left + pw / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
    << esc(g.title) << "</text>\n";
  for (std::size_t r = 0; r < g.y.size(); ++r) {
    for (std::size_t c = 0; c < g.x.size(); ++c) {
      const int k = g.cell.at(r * g.x.size() + c);
      // row 0 at the bottom
      o << "<rect x=\"" << num(left + c * cw) << "\" y=\"" << num(top + ph - (r + 1) * ch)
        << "\" width=\"" << num(cw + 0.5) << "\" height=\"" << num(ch + 0.5) << "\" fill=\""
        << g.category_colors.at(static_cast<std::size_t>(k)) << "\"/>\n";
    }
  }
  o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw)
    << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!g.x.empty()) {
    o << "<text x=\"" << num(left) << "\" y=\"" << num(top + ph + 18) << "\">" << num(g.x.front())
      << "</text>\n";
    o << "<text x=\"" << num(left + pw) << "\" y=\"" << num(top + ph + 18)
      << "\" text-anchor=\"end\">" << num(g.x.back()) << "</text>\n";
  }
  if (!g.y.empty()) {
    o << "<text x=\"" << num(left - 6) << "\" y=\"" << num(top + ph) << "\" text-anchor=\"end\">"
      << num(g.y.front()) << "</text>\n";
    o << "<text x=\"" << num(left - 6) << "\" y=\"" << num(top + 10) << "\" text-anchor=\"end\">"
      << num(g.y.back()) << "</text>\n";
  }
  o << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(top + ph + 40)
    << "\" text-anchor=\"middle\">" << esc(g.x_label) << "</text>\n";
  o << "<text transform=\"translate(16," << num(top + ph / 2)
    << ") rotate(-90)\" text-anchor=\"middle\">" << esc(g.y_label) << "</text>\n";
  for (std::size_t k = 0; k < g.category_names.size(); ++k) {
    const double ly = top + 10 + 20 * k;
    o << "<rect x=\"" << num(left + pw + 12) << "\" y=\"" << num(ly - 8)
      << "\" width=\"14\" height=\"14\" fill=\"" << g.category_colors[k] << "\"/>\n";
    o << "<text x=\"" << num(left + pw + 32) << "\" y=\"" << num(ly + 4) << "\">"
      << esc(g.category_names[k]) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

inline void save_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

}  // namespace prismconn
