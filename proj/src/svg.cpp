#include "shredder/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "shredder/csv.hpp"

namespace shredder {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
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

struct Range {
  double lo = INFINITY;
  double hi = -INFINITY;
  void add(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("svg: non-finite data");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (hi == lo) {
      const double d = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
      lo -= d;
      hi += d;
    }
  }
};

} // namespace

std::string render_svg(const std::vector<Series>& series, const PlotSpec& spec) {
  if (series.empty()) throw std::invalid_argument("svg: no series");
  Range xr, yr;
  for (const auto& s : series) {
    const bool hist = spec.style == PlotStyle::Histogram;
    if (s.y.empty()) throw std::invalid_argument("svg: empty series '" + s.label + "'");
    if (hist ? s.x.size() != s.y.size() + 1 : s.x.size() != s.y.size())
      throw std::invalid_argument("svg: series '" + s.label + "' has mismatched lengths");
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
    if (hist) yr.add(0.0);
  }
  xr.pad();
  yr.pad();

  const double left = 70, right = 20, top = 36, bottom = 50;
  const double pw = spec.width - left - right;
  const double ph = spec.height - top - bottom;
  auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return top + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * ph; };

  std::string o;
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
       std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
       std::to_string(spec.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o += "<text x=\"" + num(spec.width / 2.0) + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" +
       escape(spec.title) + "</text>\n";
  o += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    o += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(top + ph + 16) + "\" text-anchor=\"middle\">" + num(fx) +
         "</text>\n";
    o += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(fy) + 4) + "\" text-anchor=\"end\">" + num(fy) +
         "</text>\n";
  }
  o += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(spec.height - 10.0) + "\" text-anchor=\"middle\">" +
       escape(spec.x_label) + "</text>\n";
  o += "<text x=\"16\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       num(top + ph / 2) + ")\">" + escape(spec.y_label) + "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const std::string color = kPalette[si % std::size(kPalette)];
    switch (spec.style) {
    case PlotStyle::Line: {
      o += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (i) o += ' ';
        o += num(px(s.x[i])) + "," + num(py(s.y[i]));
      }
      o += "\"/>\n";
      break;
    }
    case PlotStyle::Scatter:
      o += "<g fill=\"" + color + "\">\n";
      for (std::size_t i = 0; i < s.x.size(); ++i)
        o += "<circle cx=\"" + num(px(s.x[i])) + "\" cy=\"" + num(py(s.y[i])) + "\" r=\"1\"/>\n";
      o += "</g>\n";
      break;
    case PlotStyle::Histogram:
      o += "<g fill=\"" + color + "\" fill-opacity=\"0.7\" stroke=\"black\" stroke-width=\"0.5\">\n";
      for (std::size_t i = 0; i < s.y.size(); ++i) {
        const double x0 = px(s.x[i]), x1 = px(s.x[i + 1]);
        const double y0 = py(s.y[i]), y1 = py(0.0);
        o += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(x1 - x0) + "\" height=\"" +
             num(y1 - y0) + "\"/>\n";
      }
      o += "</g>\n";
      break;
    }
    if (!s.label.empty())
      o += "<text x=\"" + num(left + pw - 8) + "\" y=\"" + num(top + 16 + 14.0 * si) + "\" text-anchor=\"end\" fill=\"" +
           color + "\">" + escape(s.label) + "</text>\n";
  }
  o += "</svg>\n";
  return o;
}

void emit_svg_plot(const std::vector<Series>& series, const PlotSpec& spec, const std::filesystem::path& path) {
  write_text(render_svg(series, spec), path);
}

} // namespace shredder
