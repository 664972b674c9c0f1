// svgplot.hpp — Self-contained SVG line plots (inline polylines, fixed
// viewport, linear or log axes). No external plotting dependency.
#pragma once

#include <string>
#include <vector>

namespace oscbath {

class SvgPlot {
public:
    SvgPlot(std::string title, std::string x_label, std::string y_label,
            bool log_x = false, bool log_y = false);

    void add_series(std::string label, const std::vector<double>& x,
                    const std::vector<double>& y);

    std::string render() const;
    void write(const std::string& path) const;

    // Panel content without the <svg> wrapper (used for stacked layouts).
    std::string render_body() const;

private:
    struct Series {
        std::string label;
        std::vector<double> x, y;
    };
    std::string title_, x_label_, y_label_;
    bool log_x_, log_y_;
    std::vector<Series> series_;
};

// One SVG document with the given plots stacked vertically.
void write_svg_stack(const std::string& path,
                     const std::vector<const SvgPlot*>& panels);

}  // namespace oscbath
