#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace shredder {

enum class PlotStyle { Line, Scatter, Histogram };

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y; // for Histogram: x holds bin edges (size y + 1)
};

struct PlotSpec {
  PlotStyle style = PlotStyle::Line;
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 720;
  int height = 420;
};

/// Static SVG document; identical inputs give identical bytes.
/// Throws std::invalid_argument for empty or malformed series.
std::string render_svg(const std::vector<Series>& series, const PlotSpec& spec);

void emit_svg_plot(const std::vector<Series>& series, const PlotSpec& spec, const std::filesystem::path& path);

} // namespace shredder
