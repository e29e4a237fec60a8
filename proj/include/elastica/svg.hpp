#pragma once

#include <string>
#include <vector>

#include "elastica/stats.hpp"

namespace elastica::svg {

enum class Style { Points, Line, Dashed, Bars };

struct Series {
    std::string name;
    Style style = Style::Points;
    std::string color = "#1f77b4";
    std::vector<Point> points;  // for Bars: x is the bin's left edge, bar width from `bar_width`
    double bar_width = 0.0;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    int width = 640;
    int height = 480;
};

/// Standalone SVG document: frame, ticks, axis labels, legend, and each
/// series drawn in order.
std::string render(const Plot& plot);

}  // namespace elastica::svg
