#include "oscbath/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace oscbath {

namespace {

constexpr double kWidth = 820.0, kHeight = 560.0;
constexpr double kLeft = 80.0, kRight = 790.0, kTop = 50.0, kBottom = 500.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b"};

// Fixed-precision coordinate formatting keeps the output byte-stable.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::vector<double> linear_ticks(double lo, double hi, int want = 6) {
    std::vector<double> out;
    if (!(hi > lo)) return {lo};
    const double raw = (hi - lo) / want;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    const double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + 0.5 * step; v += step) out.push_back(v);
    return out;
}

std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> out;
    const int e0 = static_cast<int>(std::ceil(std::log10(lo) - 1e-12));
    const int e1 = static_cast<int>(std::floor(std::log10(hi) + 1e-12));
    for (int e = e0; e <= e1; ++e) out.push_back(std::pow(10.0, e));
    if (out.empty()) out = {lo, hi};
    return out;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label,
                 bool log_x, bool log_y)
    : title_(std::move(title)),
      x_label_(std::move(x_label)),
      y_label_(std::move(y_label)),
      log_x_(log_x),
      log_y_(log_y) {}

void SvgPlot::add_series(std::string label, const std::vector<double>& x,
                         const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("SvgPlot: size mismatch");
    series_.push_back({std::move(label), x, y});
}

std::string SvgPlot::render() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
       << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
       << kHeight << "\">\n"
       << render_body() << "</svg>\n";
    return os.str();
}

std::string SvgPlot::render_body() const {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    auto usable = [&](double v, bool log_axis) {
        return std::isfinite(v) && (!log_axis || v > 0.0);
    };
    for (const auto& s : series_) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], log_x_) || !usable(s.y[i], log_y_)) continue;
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    }
    if (!(xhi >= xlo)) {
        xlo = log_x_ ? 1.0 : 0.0;
        xhi = log_x_ ? 10.0 : 1.0;
    }
    if (!(yhi >= ylo)) {
        ylo = log_y_ ? 1.0 : 0.0;
        yhi = log_y_ ? 10.0 : 1.0;
    }
    if (xhi == xlo) xhi = log_x_ ? 10.0 * xlo : xlo + 1.0;
    if (yhi == ylo) yhi = log_y_ ? 10.0 * ylo : ylo + 1.0;
    if (!log_y_) {
        const double pad = 0.05 * (yhi - ylo);
        ylo -= pad;
        yhi += pad;
    }

    auto xmap = [&](double v) {
        const double u = log_x_ ? (std::log10(v) - std::log10(xlo)) /
                                      (std::log10(xhi) - std::log10(xlo))
                                : (v - xlo) / (xhi - xlo);
        return kLeft + u * (kRight - kLeft);
    };
    auto ymap = [&](double v) {
        const double u = log_y_ ? (std::log10(v) - std::log10(ylo)) /
                                      (std::log10(yhi) - std::log10(ylo))
                                : (v - ylo) / (yhi - ylo);
        return kBottom - u * (kBottom - kTop);
    };

    std::ostringstream os;
    os << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << 0.5 * kWidth << "\" y=\"28\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"16\">" << title_ << "</text>\n";

    // Axes frame
    os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
       << kRight - kLeft << "\" height=\"" << kBottom - kTop
       << "\" fill=\"none\" stroke=\"black\"/>\n";

    const auto xticks = log_x_ ? log_ticks(xlo, xhi) : linear_ticks(xlo, xhi);
    const auto yticks = log_y_ ? log_ticks(ylo, yhi) : linear_ticks(ylo, yhi);
    for (double v : xticks) {
        if (v < xlo || v > xhi) continue;
        const double px = xmap(v);
        os << "<line x1=\"" << fmt(px) << "\" y1=\"" << kBottom << "\" x2=\""
           << fmt(px) << "\" y2=\"" << kBottom + 6 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << fmt(px) << "\" y=\"" << kBottom + 22
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
              "font-size=\"12\">" << fmt_tick(v) << "</text>\n";
    }
    for (double v : yticks) {
        if (v < ylo || v > yhi) continue;
        const double py = ymap(v);
        os << "<line x1=\"" << kLeft - 6 << "\" y1=\"" << fmt(py) << "\" x2=\""
           << kLeft << "\" y2=\"" << fmt(py) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << kLeft - 10 << "\" y=\"" << fmt(py + 4)
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
              "font-size=\"12\">" << fmt_tick(v) << "</text>\n";
    }
    os << "<text x=\"" << 0.5 * (kLeft + kRight) << "\" y=\"" << kHeight - 14
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"14\">" << x_label_ << "</text>\n";
    os << "<text x=\"20\" y=\"" << 0.5 * (kTop + kBottom)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
          "transform=\"rotate(-90 20 " << 0.5 * (kTop + kBottom) << ")\">"
       << y_label_ << "</text>\n";

    for (std::size_t si = 0; si < series_.size(); ++si) {
        const auto& s = series_[si];
        const char* color = kColors[si % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!usable(s.x[i], log_x_) || !usable(s.y[i], log_y_)) continue;
            os << fmt(xmap(s.x[i])) << ',' << fmt(ymap(s.y[i])) << ' ';
        }
        os << "\"/>\n";
        const double ly = kTop + 18.0 + 18.0 * static_cast<double>(si);
        os << "<line x1=\"" << kRight - 150 << "\" y1=\"" << fmt(ly) << "\" x2=\""
           << kRight - 120 << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << kRight - 114 << "\" y=\"" << fmt(ly + 4)
           << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label
           << "</text>\n";
    }
    return os.str();
}

void SvgPlot::write(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << render();
}

void write_svg_stack(const std::string& path,
                     const std::vector<const SvgPlot*>& panels) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    const double total = kHeight * static_cast<double>(panels.size());
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
       << "\" height=\"" << total << "\" viewBox=\"0 0 " << kWidth << " "
       << total << "\">\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        os << "<g transform=\"translate(0," << fmt(kHeight * static_cast<double>(i))
           << ")\">\n"
           << panels[i]->render_body() << "</g>\n";
    }
    os << "</svg>\n";
}

}  // namespace oscbath
