// svg.hpp
// Minimal SVG line-plot writer; no external plotting runtime.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qhsq::harness {

struct SvgSeries {
    std::vector<std::pair<double, double>> points; // data coordinates
    std::string color = "#000000";
    std::string dash;       // e.g. "6,4"; empty = solid
    double width = 1.5;
    std::string label;
    bool markers = false;
};

struct SvgFigure {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
    std::vector<double> vlines; // dashed vertical markers (data x)

    std::string render(int width_px = 760, int height_px = 460) const;
};

} // namespace qhsq::harness
