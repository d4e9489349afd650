#pragma once

#include <string>
#include <vector>

namespace sfrj {

// Minimal static SVG line plots for run artifacts. Purely an output format:
// nothing here feeds back into any computation.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false; // plots log10(|y|) with a floor at 1e-12
    std::vector<PlotSeries> series;
};

void write_svg_plot(const PlotSpec& spec, const std::string& path);

// Several stacked panels in one file.
void write_svg_panels(const std::vector<PlotSpec>& panels, const std::string& path);

} // namespace sfrj
