#pragma once

#include "fieldscope/linalg.hpp"

#include <cstddef>
#include <vector>

namespace fieldscope {

/**
 * Closed elliptical region with boundary
 *   t -> center + e^{i rotation} (axis_u cos t + i axis_v sin t).
 *
 * axis_u is not required to be the larger semi-axis; canonicalize() orders
 * them. One zero axis gives a segment, two give a point.
 */
struct Ellipse {
    Complex center{0.0, 0.0};
    double axis_u = 0.0;
    double axis_v = 0.0;
    double rotation = 0.0;
};

/// Major axis first, rotation in [0, pi), rotation 0 for circles and points.
Ellipse canonicalize(const Ellipse& e);

/// Set equality up to tol: centres and semi-axes within tol, and the boundary
/// displacement caused by a rotation mismatch, (major - minor) * angle, within tol.
bool same_ellipse(const Ellipse& a, const Ellipse& b, double tol);

/// The Joukowsky map z -> a z + b / z restricted to the unit circle.
struct JoukowskyMap {
    Complex a;
    Complex b;
};

using PointCloud = std::vector<Complex>;

/// Convex polygon, counterclockwise, without repeated or collinear vertices.
/// Degenerate hulls have one (point) or two (segment) vertices.
struct Polygon2D {
    std::vector<Complex> vertices;
};

/// Support values h(phi) = max Re(z e^{-i phi}) on a uniform angle grid.
struct SupportProfile {
    std::vector<double> angles;
    std::vector<double> values;
};

/// a e^{it} + b e^{-it}
Complex joukowsky_eval(const JoukowskyMap& map, double t);

/// Ellipse traced by the map: semi-axes |a| + |b| and ||a| - |b||, rotation
/// (arg a + arg b) / 2 mod pi, centred at 0.
Ellipse joukowsky_ellipse(const JoukowskyMap& map);

double ellipse_support(const Ellipse& e, double phi);
Complex ellipse_boundary_point(const Ellipse& e, double t);

/// Distance from p to the boundary curve (to the segment or point when degenerate).
double ellipse_boundary_distance(const Ellipse& e, Complex p);

/// Distance from p to the closed region; 0 inside.
double ellipse_outside_distance(const Ellipse& e, Complex p);

/// True iff p lies in the closed region, up to a distance tol.
bool ellipse_contains(const Ellipse& e, Complex p, double tol);

/// Image of the origin-centred axis-aligned ellipse boundary under z -> z^2.
Ellipse square_map_ellipse(double axis_u, double axis_v);

/// `k` boundary points at t = 2 pi j / k, as a convex polygon.
Polygon2D ellipse_polygon(const Ellipse& e, std::size_t k);

std::vector<double> uniform_angles(std::size_t k);

SupportProfile support_profile_of_cloud(const PointCloud& cloud, std::size_t k);
SupportProfile ellipse_support_profile(const Ellipse& e, std::size_t k);

/// Boundary recovery x = h cos - h' sin, y = h sin + h' cos, with h' from
/// central differences on the periodic grid. Needs at least 16 angles.
PointCloud natural_parametrization(const SupportProfile& h);

SupportProfile minkowski_support_sum(const SupportProfile& h1, const SupportProfile& h2);

/// Andrew's monotone chain. Interior points that are provably inside the
/// octagon of extreme points are discarded first for large inputs.
Polygon2D convex_hull_2d(const PointCloud& cloud);

/// Distance from p to the convex region bounded by `poly` (0 inside).
double distance_to_polygon(const Polygon2D& poly, Complex p);

/// Hausdorff distance between two convex regions.
double hausdorff_distance(const Polygon2D& a, const Polygon2D& b);

double polygon_area(const Polygon2D& poly);
double polygon_diameter(const Polygon2D& poly);

} // namespace fieldscope
