#include "nomasec/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace nomasec {

namespace {

constexpr int kWidth = 860, kHeight = 560;
constexpr int kLeft = 80, kRight = 250, kTop = 50, kBottom = 60;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
                         "#bcbd22", "#e377c2", "#636363", "#1b9e77"};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace

void write_svg_plot(const std::string& path, const PlotSpec& spec,
                    const std::vector<Series>& series) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double x = s.x[i];
            if (spec.log_x) {
                if (!(x > 0)) continue;
                x = std::log10(x);
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!(xmin < xmax)) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (!(ymin < ymax)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto sx = [&](double x) {
        if (spec.log_x) x = std::log10(x);
        return kLeft + (x - xmin) / (xmax - xmin) * plot_w;
    };
    auto sy = [&](double y) { return kTop + (1.0 - (y - ymin) / (ymax - ymin)) * plot_h; };

    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write plot file: " + path);
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
       << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n"
       << "<rect width='100%' height='100%' fill='white'/>\n"
       << "<text x='" << kLeft + plot_w / 2 << "' y='28' text-anchor='middle' font-size='18' "
          "font-family='sans-serif'>"
       << spec.title << "</text>\n";

    // frame and ticks
    os << "<rect x='" << kLeft << "' y='" << kTop << "' width='" << plot_w << "' height='"
       << plot_h << "' fill='none' stroke='black'/>\n";
    const int n_ticks = 6;
    for (int i = 0; i <= n_ticks; ++i) {
        const double tx = xmin + (xmax - xmin) * i / n_ticks;
        const double px = kLeft + plot_w * i / n_ticks;
        const double label = spec.log_x ? std::pow(10.0, tx) : tx;
        os << "<line x1='" << px << "' y1='" << kTop + plot_h << "' x2='" << px << "' y2='"
           << kTop + plot_h + 6 << "' stroke='black'/>\n"
           << "<text x='" << px << "' y='" << kTop + plot_h + 22
           << "' text-anchor='middle' font-size='12' font-family='sans-serif'>" << fmt(label)
           << "</text>\n";
        const double ty = ymin + (ymax - ymin) * i / n_ticks;
        const double py = sy(ty);
        os << "<line x1='" << kLeft - 6 << "' y1='" << py << "' x2='" << kLeft << "' y2='" << py
           << "' stroke='black'/>\n"
           << "<text x='" << kLeft - 10 << "' y='" << py + 4
           << "' text-anchor='end' font-size='12' font-family='sans-serif'>" << fmt(ty)
           << "</text>\n"
           << "<line x1='" << kLeft << "' y1='" << py << "' x2='" << kLeft + plot_w << "' y2='"
           << py << "' stroke='#dddddd' stroke-width='0.5'/>\n";
    }
    os << "<text x='" << kLeft + plot_w / 2 << "' y='" << kHeight - 16
       << "' text-anchor='middle' font-size='14' font-family='sans-serif'>" << spec.xlabel
       << "</text>\n"
       << "<text x='22' y='" << kTop + plot_h / 2
       << "' text-anchor='middle' font-size='14' font-family='sans-serif' transform='rotate(-90 22 "
       << kTop + plot_h / 2 << ")'>" << spec.ylabel << "</text>\n";

    int color_idx = 0;
    double legend_y = kTop + 10;
    for (const auto& s : series) {
        const char* color = kColors[color_idx % (sizeof kColors / sizeof kColors[0])];
        ++color_idx;
        if (!s.markers_only) {
            os << "<polyline fill='none' stroke='" << color << "' stroke-width='2' points='";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (spec.log_x && !(s.x[i] > 0)) continue;
                os << sx(s.x[i]) << "," << sy(s.y[i]) << " ";
            }
            os << "'/>\n";
        }
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (spec.log_x && !(s.x[i] > 0)) continue;
            os << "<circle cx='" << sx(s.x[i]) << "' cy='" << sy(s.y[i]) << "' r='3' fill='"
               << color << "'/>\n";
        }
        os << "<line x1='" << kLeft + plot_w + 14 << "' y1='" << legend_y << "' x2='"
           << kLeft + plot_w + 40 << "' y2='" << legend_y << "' stroke='" << color
           << "' stroke-width='2'/>\n"
           << "<text x='" << kLeft + plot_w + 46 << "' y='" << legend_y + 4
           << "' font-size='12' font-family='sans-serif'>" << s.label << "</text>\n";
        legend_y += 18;
    }
    os << "</svg>\n";
}

} // namespace nomasec
