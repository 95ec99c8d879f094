#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mvf/asymptotics/prediction.hpp"
#include "mvf/io/format.hpp"
#include "mvf/perron/perron.hpp"

namespace mvf::io {

struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
    bool dashed = false;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = true;
    bool log_y = true;
    std::vector<PlotSeries> series;
};

namespace detail {

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

inline const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    return colors[i % 6];
}

}  // namespace detail

/// Standalone SVG text for the plot; throws if there is nothing to draw.
inline std::string render_svg(const Plot& plot) {
    auto tx = [&](double v) { return plot.log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return plot.log_y ? std::log10(v) : v; };
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    std::size_t drawable = 0;
    for (const auto& s : plot.series)
        for (auto [x, y] : s.points) {
            if ((plot.log_x && !(x > 0)) || (plot.log_y && !(y > 0)) || !std::isfinite(x) || !std::isfinite(y)) continue;
            x0 = std::min(x0, tx(x));
            x1 = std::max(x1, tx(x));
            y0 = std::min(y0, ty(y));
            y1 = std::max(y1, ty(y));
            ++drawable;
        }
    if (drawable == 0) throw std::invalid_argument("render_plot: report has no plottable points");
    if (x1 - x0 < 1e-12) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;

    const double W = 720, H = 480, L = 80, R = 160, T = 40, B = 60;
    auto px = [&](double v) { return L + (tx(v) - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double v) { return H - B - (ty(v) - y0) / (y1 - y0) * (H - T - B); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
       << ' ' << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
       << detail::escape(plot.title) << "</text>\n";
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    // ticks at the ends of each axis
    auto label = [&](double v, bool log) { return format_double(log ? std::pow(10.0, v) : v); };
    os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    os << "<text x=\"" << L << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << label(x0, plot.log_x) << "</text>\n";
    os << "<text x=\"" << W - R << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << label(x1, plot.log_x) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << H - B << "\" text-anchor=\"end\">" << label(y0, plot.log_y) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << T + 4 << "\" text-anchor=\"end\">" << label(y1, plot.log_y) << "</text>\n";
    os << "<text x=\"" << (W - R + L) / 2 << "\" y=\"" << H - 20 << "\" text-anchor=\"middle\">"
       << detail::escape(plot.x_label) << (plot.log_x ? " (log)" : "") << "</text>\n";
    os << "<text transform=\"translate(20," << (H - B + T) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << detail::escape(plot.y_label) << (plot.log_y ? " (log)" : "") << "</text>\n";
    os << "</g>\n";

    for (std::size_t i = 0; i < plot.series.size(); ++i) {
        const auto& s = plot.series[i];
        std::ostringstream pts;
        for (auto [x, y] : s.points) {
            if ((plot.log_x && !(x > 0)) || (plot.log_y && !(y > 0)) || !std::isfinite(x) || !std::isfinite(y)) continue;
            pts << format_double(std::round(px(x) * 100) / 100) << ',' << format_double(std::round(py(y) * 100) / 100)
                << ' ';
        }
        os << "<polyline fill=\"none\" stroke=\"" << detail::palette(i) << "\" stroke-width=\"2\""
           << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"" << pts.str() << "\"/>\n";
        os << "<text x=\"" << W - R + 10 << "\" y=\"" << T + 16 + 18 * static_cast<double>(i)
           << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << detail::palette(i) << "\">"
           << detail::escape(s.name) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

/// Writes the SVG; nothing is created if rendering fails.
inline void render_plot(const Plot& plot, const std::filesystem::path& path) {
    const std::string text = render_svg(plot);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("render_plot: cannot open " + path.string());
    out << text;
    out.close();
    if (!out) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
        throw std::runtime_error("render_plot: write failed for " + path.string());
    }
}

/// Relative error against ln x, one line per function.
inline Plot sweep_plot(const std::vector<PredictionReport>& rows) {
    Plot p{"relative error of the asymptotic prediction", "ln x", "relative error", false, true, {}};
    for (auto fn : all_functions) {
        PlotSeries s{std::string(tag(fn)), {}, false};
        for (const auto& r : rows)
            if (r.fn == fn) s.points.emplace_back(std::log(static_cast<double>(r.x ? r.x : r.h)), r.rel_err);
        if (!s.points.empty()) p.series.push_back(std::move(s));
    }
    return p;
}

/// Truncation error and the x ln x / T bound against T.
inline Plot perron_plot(const std::vector<PerronScan>& scans) {
    Plot p{"truncated Perron integral error", "T", "absolute error", true, true, {}};
    for (const auto& sc : scans) {
        PlotSeries err{std::string(tag(sc.fn)) + " error", {}, false};
        PlotSeries bound{std::string(tag(sc.fn)) + " x ln x / T", {}, true};
        for (const auto& r : sc.rows) {
            err.points.emplace_back(r.T, r.abs_err);
            bound.points.emplace_back(r.T, r.bound);
        }
        if (err.points.empty()) continue;
        p.series.push_back(std::move(err));
        p.series.push_back(std::move(bound));
    }
    return p;
}

}  // namespace mvf::io
