#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cvibench::cli {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    std::optional<std::size_t> marked;  // index drawn as a red dot
};

struct Panel {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

/// Self-contained SVG: panels stacked vertically, one <polyline> per
/// series, axis ticks at the data extremes. Deterministic output.
std::string render_svg(const std::string& title, const std::vector<Panel>& panels);

}  // namespace cvibench::cli
