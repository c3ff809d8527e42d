#include "cvibench/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "cvibench/cli/report_io.hpp"

namespace cvibench::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kPanelHeight = 300.0;
constexpr double kTitleHeight = 30.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 45.0;

constexpr std::array<const char*, 6> kColors{"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#17becf"};

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

std::string num(double v) {
    // Pixel coordinates: two decimals are plenty.
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
}

std::string label(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void settle() {
        if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
        if (hi == lo) lo -= 0.5, hi += 0.5;
    }
};

}  // namespace

std::string render_svg(const std::string& title, const std::vector<Panel>& panels) {
    const double height = kTitleHeight + kPanelHeight * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(height)
        << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << num(kWidth / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
        << "</text>\n";

    for (std::size_t p = 0; p < panels.size(); ++p) {
        const auto& panel = panels[p];
        const double top = kTitleHeight + kPanelHeight * static_cast<double>(p);
        const double x0 = kLeft;
        const double x1 = kWidth - kRight;
        const double y0 = top + kPanelHeight - kBottom;
        const double y1 = top + kTop;

        Range xr;
        Range yr;
        for (const auto& s : panel.series) {
            for (double v : s.x) xr.add(v);
            for (double v : s.y) yr.add(v);
        }
        xr.settle();
        yr.settle();
        auto px = [&](double v) { return x0 + (v - xr.lo) / (xr.hi - xr.lo) * (x1 - x0); };
        auto py = [&](double v) { return y0 - (v - yr.lo) / (yr.hi - yr.lo) * (y0 - y1); };

        svg << "<g class=\"panel\">\n"
            << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(top + 18) << "\" text-anchor=\"middle\">"
            << escape(panel.title) << "</text>\n"
            << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(y0)
            << "\" stroke=\"black\"/>\n"
            << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(y1)
            << "\" stroke=\"black\"/>\n";
        for (double v : {xr.lo, xr.hi})
            svg << "<text x=\"" << num(px(v)) << "\" y=\"" << num(y0 + 16) << "\" text-anchor=\"middle\">" << label(v)
                << "</text>\n";
        for (double v : {yr.lo, yr.hi})
            svg << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(py(v) + 4) << "\" text-anchor=\"end\">" << label(v)
                << "</text>\n";
        svg << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(y0 + 34) << "\" text-anchor=\"middle\">"
            << escape(panel.x_label) << "</text>\n"
            << "<text transform=\"translate(" << num(x0 - 50) << ' ' << num((y0 + y1) / 2)
            << ") rotate(-90)\" text-anchor=\"middle\">" << escape(panel.y_label) << "</text>\n";

        for (std::size_t s = 0; s < panel.series.size(); ++s) {
            const auto& series = panel.series[s];
            const char* color = kColors[s % kColors.size()];
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            bool first = true;
            for (std::size_t i = 0; i < series.x.size() && i < series.y.size(); ++i) {
                if (!std::isfinite(series.x[i]) || !std::isfinite(series.y[i])) continue;
                if (!first) svg << ' ';
                svg << num(px(series.x[i])) << ',' << num(py(series.y[i]));
                first = false;
            }
            svg << "\"><title>" << escape(series.name) << "</title></polyline>\n";
            if (series.marked && *series.marked < series.x.size())
                svg << "<circle cx=\"" << num(px(series.x[*series.marked])) << "\" cy=\""
                    << num(py(series.y[*series.marked])) << "\" r=\"4\" fill=\"red\"/>\n";
            svg << "<text x=\"" << num(x1 + 10) << "\" y=\"" << num(y1 + 14 + 16 * static_cast<double>(s))
                << "\" fill=\"" << color << "\">" << escape(series.name) << "</text>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace cvibench::cli
