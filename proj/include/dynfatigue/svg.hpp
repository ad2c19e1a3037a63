#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace dynfatigue::svg {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = false;  ///< draw points instead of a polyline
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    int width = 640;
    int height = 400;
};

namespace detail {

inline std::string num(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, r.ptr);
}

inline std::string tick(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 4);
    return std::string(buf, r.ptr);
}

inline std::string escape(const std::string& s) {
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

inline constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd"};

}  // namespace detail

/// Standalone SVG 1.1 line chart with axes, five ticks per axis and a legend.
inline void render(std::ostream& out, const Chart& chart) {
    const double left = 70, right = 150, top = 40, bottom = 55;
    const double pw = chart.width - left - right;
    const double ph = chart.height - top - bottom;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : chart.series) {
        for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
        for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    }
    if (!std::isfinite(xmin)) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    if (xmax == xmin) { xmax = xmin + 1.0; }
    if (ymax == ymin) { ymin -= 0.5; ymax += 0.5; }
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << chart.width
        << "\" height=\"" << chart.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << detail::num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << detail::escape(chart.title) << "</text>\n"
        << "<rect x=\"" << detail::num(left) << "\" y=\"" << detail::num(top) << "\" width=\""
        << detail::num(pw) << "\" height=\"" << detail::num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        out << "<line x1=\"" << detail::num(px(xv)) << "\" y1=\"" << detail::num(top + ph)
            << "\" x2=\"" << detail::num(px(xv)) << "\" y2=\"" << detail::num(top + ph + 5)
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << detail::num(px(xv)) << "\" y=\"" << detail::num(top + ph + 18)
            << "\" text-anchor=\"middle\">" << detail::tick(xv) << "</text>\n"
            << "<line x1=\"" << detail::num(left - 5) << "\" y1=\"" << detail::num(py(yv))
            << "\" x2=\"" << detail::num(left) << "\" y2=\"" << detail::num(py(yv))
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << detail::num(left - 8) << "\" y=\"" << detail::num(py(yv) + 4)
            << "\" text-anchor=\"end\">" << detail::tick(yv) << "</text>\n";
    }
    out << "<text x=\"" << detail::num(left + pw / 2) << "\" y=\"" << chart.height - 12
        << "\" text-anchor=\"middle\">" << detail::escape(chart.x_label) << "</text>\n"
        << "<text transform=\"translate(16," << detail::num(top + ph / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << detail::escape(chart.y_label) << "</text>\n";

    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        const auto& s = chart.series[k];
        const char* color = detail::kPalette[k % std::size(detail::kPalette)];
        const std::size_t n = std::min(s.x.size(), s.y.size());
        if (s.markers) {
            for (std::size_t i = 0; i < n; ++i) {
                out << "<circle cx=\"" << detail::num(px(s.x[i])) << "\" cy=\"" << detail::num(py(s.y[i]))
                    << "\" r=\"3.5\" fill=\"" << color << "\"/>\n";
            }
        } else {
            out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (std::size_t i = 0; i < n; ++i) {
                out << (i ? " " : "") << detail::num(px(s.x[i])) << ',' << detail::num(py(s.y[i]));
            }
            out << "\"/>\n";
        }
        const double ly = top + 10 + 18.0 * static_cast<double>(k);
        out << "<line x1=\"" << detail::num(left + pw + 10) << "\" y1=\"" << detail::num(ly)
            << "\" x2=\"" << detail::num(left + pw + 30) << "\" y2=\"" << detail::num(ly)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << detail::num(left + pw + 35) << "\" y=\"" << detail::num(ly + 4) << "\">"
            << detail::escape(s.name) << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace dynfatigue::svg
