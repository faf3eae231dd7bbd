#pragma once
// Minimal self-contained SVG line charts for the figure experiments. CSV is
// the interface of record; these are a quick visual check with no plotting
// dependency.

#include <string>
#include <vector>

namespace nomasec {

struct Series {
    std::string label;
    std::vector<double> x, y;
    bool markers_only = false; // scatter (used for MC points over analytic lines)
};

struct PlotSpec {
    std::string title, xlabel, ylabel;
    bool log_x = false;
};

void write_svg_plot(const std::string& path, const PlotSpec& spec,
                    const std::vector<Series>& series);

} // namespace nomasec
