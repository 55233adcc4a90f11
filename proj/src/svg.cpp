#include "qhsq/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qhsq::harness {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << v;
    return os.str();
}

std::string fmt_tick(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

} // namespace

std::string SvgFigure::render(int width_px, int height_px) const {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    for (double v : vlines) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    if (!(xmax > xmin)) { xmin -= 1.0; xmax += 1.0; }
    if (!(ymax > ymin)) { ymin -= 1.0; ymax += 1.0; }
    const double xpad = 0.04 * (xmax - xmin), ypad = 0.06 * (ymax - ymin);
    xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;

    const double ml = 70, mr = 20, mt = 40, mb = 50;
    const double pw = width_px - ml - mr, ph = height_px - mt - mb;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return mt + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px << "\" height=\""
        << height_px << "\" viewBox=\"0 0 " << width_px << " " << height_px << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width_px / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << title << "</text>\n";

    // frame and ticks
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 5.0;
        const double yv = ymin + (ymax - ymin) * i / 5.0;
        svg << "<line x1=\"" << fmt(px(xv)) << "\" y1=\"" << mt + ph << "\" x2=\"" << fmt(px(xv))
            << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"#444\"/>\n";
        svg << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt_tick(xv) << "</text>\n";
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt(py(yv)) << "\" x2=\"" << ml
            << "\" y2=\"" << fmt(py(yv)) << "\" stroke=\"#444\"/>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(py(yv) + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">" << fmt_tick(yv) << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height_px - 10
        << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
    svg << "<text x=\"16\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
        << mt + ph / 2 << ")\">" << y_label << "</text>\n";

    for (double v : vlines) {
        svg << "<line x1=\"" << fmt(px(v)) << "\" y1=\"" << mt << "\" x2=\"" << fmt(px(v))
            << "\" y2=\"" << mt + ph << "\" stroke=\"#888\" stroke-dasharray=\"3,3\"/>\n";
    }

    double legend_y = mt + 14;
    for (const auto& s : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"" << s.width
            << "\"";
        if (!s.dash.empty()) svg << " stroke-dasharray=\"" << s.dash << "\"";
        svg << " points=\"";
        for (const auto& [x, y] : s.points) svg << fmt(px(x)) << "," << fmt(py(y)) << " ";
        svg << "\"/>\n";
        if (s.markers) {
            for (const auto& [x, y] : s.points) {
                svg << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y))
                    << "\" r=\"2.5\" fill=\"" << s.color << "\"/>\n";
            }
        }
        if (!s.label.empty()) {
            svg << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << legend_y - 4 << "\" x2=\""
                << ml + pw - 125 << "\" y2=\"" << legend_y - 4 << "\" stroke=\"" << s.color
                << "\" stroke-width=\"" << s.width << "\"";
            if (!s.dash.empty()) svg << " stroke-dasharray=\"" << s.dash << "\"";
            svg << "/>\n";
            svg << "<text x=\"" << ml + pw - 120 << "\" y=\"" << legend_y
                << "\" font-size=\"11\">" << s.label << "</text>\n";
            legend_y += 15;
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace qhsq::harness
