#include "shockbayes/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "shockbayes/errors.hpp"

namespace shockbayes {

namespace {

constexpr double kW = 640.0, kH = 480.0;
constexpr double kL = 70.0, kR = 20.0, kT = 40.0, kB = 50.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string gnum(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string emit_svg(const std::vector<SvgSeries>& series, const std::string& x_label,
                     const std::string& y_label, const std::string& title) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    bool any = false;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            any = true;
            xmin = std::min(xmin, s.x[i]); xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]); ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!any) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    if (xmax <= xmin) xmax = xmin + 1;
    if (ymax <= ymin) ymax = ymin + 1;
    double xpad = 0.03 * (xmax - xmin), ypad = 0.05 * (ymax - ymin);
    xmin -= xpad; xmax += xpad; ymin -= ypad; ymax += ypad;
    auto px = [&](double x) { return kL + (x - xmin) / (xmax - xmin) * (kW - kL - kR); };
    auto py = [&](double y) { return kH - kB - (y - ymin) / (ymax - ymin) * (kH - kT - kB); };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kW) +
                      "\" height=\"" + num(kH) + "\" viewBox=\"0 0 " + num(kW) + " " +
                      num(kH) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(kW / 2) + "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" + title + "</text>\n";
    // axes
    svg += "<line x1=\"" + num(kL) + "\" y1=\"" + num(kH - kB) + "\" x2=\"" +
           num(kW - kR) + "\" y2=\"" + num(kH - kB) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(kL) + "\" y1=\"" + num(kT) + "\" x2=\"" + num(kL) +
           "\" y2=\"" + num(kH - kB) + "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        double fx = xmin + (xmax - xmin) * k / 4.0;
        double fy = ymin + (ymax - ymin) * k / 4.0;
        svg += "<text x=\"" + num(px(fx)) + "\" y=\"" + num(kH - kB + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               gnum(fx) + "</text>\n";
        svg += "<text x=\"" + num(kL - 6) + "\" y=\"" + num(py(fy) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               gnum(fy) + "</text>\n";
    }
    svg += "<text x=\"" + num((kL + kW - kR) / 2) + "\" y=\"" + num(kH - 10) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
           x_label + "</text>\n";
    svg += "<text x=\"16\" y=\"" + num((kT + kH - kB) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 16 " + num((kT + kH - kB) / 2) + ")\">" +
           y_label + "</text>\n";
    double legend_y = kT + 8;
    for (const auto& s : series) {
        if (s.x.empty()) continue;  // empty optional series stay out of the legend
        std::string pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            pts += num(px(s.x[i])) + "," + num(py(s.y[i]));
            if (i + 1 < s.x.size()) pts += " ";
        }
        if (s.filled) {
            svg += "<polygon points=\"" + pts + "\" fill=\"" + s.color +
                   "\" fill-opacity=\"0.30\" stroke=\"none\"/>\n";
        } else {
            svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + s.color +
                   "\" stroke-width=\"1.5\"/>\n";
        }
        if (!s.label.empty()) {
            svg += "<rect x=\"" + num(kW - kR - 150) + "\" y=\"" + num(legend_y - 9) +
                   "\" width=\"14\" height=\"10\" fill=\"" + s.color + "\"/>\n";
            svg += "<text x=\"" + num(kW - kR - 132) + "\" y=\"" + num(legend_y) +
                   "\" font-family=\"sans-serif\" font-size=\"11\">" + s.label +
                   "</text>\n";
            legend_y += 16;
        }
    }
    svg += "</svg>\n";
    return svg;
}

std::string svg_band(const Band& b, const std::string& x_label,
                     const std::string& y_label, const std::string& title) {
    if (b.up.empty()) throw EmptyInput("svg_band requires band data");
    SvgSeries fill;
    fill.label = "band";
    fill.filled = true;
    fill.color = "#ff8c42";
    fill.x = b.up;
    fill.y = b.lo;
    for (std::size_t i = b.up.size(); i-- > 0;) {
        fill.x.push_back(b.up[i]);
        fill.y.push_back(b.hi[i]);
    }
    SvgSeries mid{"mean", b.up, b.mid, "#1f6fb4", false};
    return emit_svg({fill, mid}, x_label, y_label, title);
}

std::string svg_pv_band(const PVBand& b, const std::string& title) {
    SvgSeries fill;
    fill.label = "band";
    fill.filled = true;
    fill.color = "#ff8c42";
    fill.x = b.v_grid;
    fill.y = b.p_lo;
    for (std::size_t i = b.v_grid.size(); i-- > 0;) {
        fill.x.push_back(b.v_grid[i]);
        fill.y.push_back(b.p_hi[i]);
    }
    std::vector<SvgSeries> all{fill};
    if (b.p_mean) all.push_back(SvgSeries{"mean", b.v_grid, *b.p_mean, "#1f6fb4", false});
    return emit_svg(all, "volume (cm^3/g)", "pressure (GPa)", title);
}

std::string svg_ellipse(const CredibleEllipse& e, const std::string& title,
                        std::size_t boundary_points) {
    SvgSeries s;
    s.label = "credible region";
    s.color = "#c0392b";
    for (std::size_t i = 0; i <= boundary_points; ++i) {
        double th = 2.0 * 3.14159265358979323846 * static_cast<double>(i) /
                    static_cast<double>(boundary_points);
        auto [c0, sl] = e.boundary(th);
        s.x.push_back(c0);
        s.y.push_back(sl);
    }
    return emit_svg({s}, "c0 (km/s)", "s", title);
}

std::string svg_histogram(const std::vector<double>& values, std::size_t bins,
                          const std::string& x_label, const std::string& title) {
    if (values.empty()) throw EmptyInput("histogram of an empty series");
    if (bins < 1) throw DomainError("need at least one bin");
    double lo = *std::min_element(values.begin(), values.end());
    double hi = *std::max_element(values.begin(), values.end());
    if (hi <= lo) hi = lo + 1.0;
    std::vector<double> count(bins, 0.0);
    for (double v : values) {
        auto k = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
        if (k >= bins) k = bins - 1;
        count[k] += 1.0;
    }
    SvgSeries bars;
    bars.label = "frequency";
    bars.filled = true;
    for (std::size_t k = 0; k < bins; ++k) {
        double x0 = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bins);
        double x1 = lo + (hi - lo) * static_cast<double>(k + 1) / static_cast<double>(bins);
        bars.x.push_back(x0); bars.y.push_back(0.0);
        bars.x.push_back(x0); bars.y.push_back(count[k]);
        bars.x.push_back(x1); bars.y.push_back(count[k]);
        bars.x.push_back(x1); bars.y.push_back(0.0);
    }
    return emit_svg({bars}, x_label, "count", title);
}

}  // namespace shockbayes
