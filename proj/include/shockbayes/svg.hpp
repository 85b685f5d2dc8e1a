#pragma once

#include <string>
#include <vector>

#include "shockbayes/hugoniot.hpp"
#include "shockbayes/regression.hpp"

namespace shockbayes {

// Minimal standalone SVG plots. The numbers shown always come from the
// corresponding CSV; the SVG is presentation only.

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f6fb4";
    bool filled = false;  // polygon (band) rather than polyline
};

std::string emit_svg(const std::vector<SvgSeries>& series, const std::string& x_label,
                     const std::string& y_label, const std::string& title);

std::string svg_band(const Band& b, const std::string& x_label,
                     const std::string& y_label, const std::string& title);
std::string svg_pv_band(const PVBand& b, const std::string& title);
std::string svg_ellipse(const CredibleEllipse& e, const std::string& title,
                        std::size_t boundary_points = 256);
std::string svg_histogram(const std::vector<double>& values, std::size_t bins,
                          const std::string& x_label, const std::string& title);

}  // namespace shockbayes
