#pragma once

#include "fieldscope/geometry.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace fieldscope::cli {

/// Fixed ten-decimal notation; negative zero prints as zero.
std::string format_fixed(double x);

/// "t,re,im" rows of a boundary parametrisation.
void write_boundary_csv(std::ostream& out, const std::vector<double>& t, const PointCloud& points);

/// "k,re,im" rows of polygon vertices.
void write_polygon_csv(std::ostream& out, const Polygon2D& poly);

/// "phi,h,re,im": support values and the boundary point recovered from them.
void write_profile_csv(std::ostream& out, const SupportProfile& profile, const PointCloud& boundary);

struct SvgLayer {
    PointCloud points;
    bool closed = true;   // polygon outline, else scattered dots
    std::string colour = "#1f4e9a";
};

/// Standalone SVG with the imaginary axis pointing up and a 5% margin.
void write_svg(std::ostream& out, const std::vector<SvgLayer>& layers, const std::string& title);

} // namespace fieldscope::cli
