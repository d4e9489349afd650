#include "sfrj/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sfrj {

namespace {

constexpr double kPanelW = 760, kPanelH = 300;
constexpr double kMarginL = 70, kMarginR = 20, kMarginT = 34, kMarginB = 42;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

double transform_y(double v, bool log_y) {
    if (!log_y) return v;
    return std::log10(std::max(std::abs(v), 1e-12));
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void render_panel(std::ostringstream& out, const PlotSpec& spec, double y_off) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : spec.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double yv = transform_y(s.y[i], spec.log_y);
            if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, yv);
            ymax = std::max(ymax, yv);
        }
    }
    if (!std::isfinite(xmin)) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) { ymax += 0.5; ymin -= 0.5; }
    const double pad = 0.04 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const double px0 = kMarginL, px1 = kPanelW - kMarginR;
    const double py0 = y_off + kPanelH - kMarginB, py1 = y_off + kMarginT;
    auto sx = [&](double x) { return px0 + (x - xmin) / (xmax - xmin) * (px1 - px0); };
    auto sy = [&](double y) { return py0 + (y - ymin) / (ymax - ymin) * (py1 - py0); };

    out << "<rect x='" << px0 << "' y='" << py1 << "' width='" << px1 - px0 << "' height='"
        << py0 - py1 << "' fill='none' stroke='#444'/>\n";
    out << "<text x='" << (px0 + px1) / 2 << "' y='" << y_off + 18
        << "' text-anchor='middle' font-size='14'>" << spec.title << "</text>\n";
    out << "<text x='" << (px0 + px1) / 2 << "' y='" << py0 + 32
        << "' text-anchor='middle' font-size='12'>" << spec.x_label << "</text>\n";
    out << "<text x='16' y='" << (py0 + py1) / 2 << "' text-anchor='middle' font-size='12' "
        << "transform='rotate(-90 16 " << (py0 + py1) / 2 << ")'>"
        << (spec.log_y ? "log10 " + spec.y_label : spec.y_label) << "</text>\n";

    for (int i = 0; i <= 4; ++i) {
        double fx = xmin + i * (xmax - xmin) / 4;
        double fy = ymin + i * (ymax - ymin) / 4;
        out << "<line x1='" << sx(fx) << "' y1='" << py0 << "' x2='" << sx(fx) << "' y2='"
            << py0 + 4 << "' stroke='#444'/>\n";
        out << "<text x='" << sx(fx) << "' y='" << py0 + 16
            << "' text-anchor='middle' font-size='10'>" << fmt(fx) << "</text>\n";
        out << "<line x1='" << px0 - 4 << "' y1='" << sy(fy) << "' x2='" << px0 << "' y2='"
            << sy(fy) << "' stroke='#444'/>\n";
        out << "<text x='" << px0 - 6 << "' y='" << sy(fy) + 3
            << "' text-anchor='end' font-size='10'>" << fmt(fy) << "</text>\n";
    }

    int ci = 0;
    for (const auto& s : spec.series) {
        const char* color = kColors[ci % 6];
        out << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double yv = transform_y(s.y[i], spec.log_y);
            if (!std::isfinite(s.x[i]) || !std::isfinite(yv)) continue;
            out << sx(s.x[i]) << "," << sy(yv) << " ";
        }
        out << "'/>\n";
        if (spec.series.size() > 1) {
            double lx = px1 - 150, ly = py1 + 14 + 14 * ci;
            out << "<line x1='" << lx << "' y1='" << ly << "' x2='" << lx + 20 << "' y2='" << ly
                << "' stroke='" << color << "' stroke-width='1.5'/>\n";
            out << "<text x='" << lx + 25 << "' y='" << ly + 4 << "' font-size='11'>" << s.label
                << "</text>\n";
        }
        ++ci;
    }
}

} // namespace

void write_svg_panels(const std::vector<PlotSpec>& panels, const std::string& path) {
    std::ostringstream out;
    double total_h = kPanelH * panels.size();
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kPanelW << "' height='" << total_h
        << "' viewBox='0 0 " << kPanelW << " " << total_h << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i)
        render_panel(out, panels[i], i * kPanelH);
    out << "</svg>\n";

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write plot file: " + path);
    f << out.str();
}

void write_svg_plot(const PlotSpec& spec, const std::string& path) {
    write_svg_panels({spec}, path);
}

} // namespace sfrj
