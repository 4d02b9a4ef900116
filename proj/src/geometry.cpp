#include "fieldscope/geometry.hpp"

#include "fieldscope/error.hpp"
#include "fieldscope/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace fieldscope {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

double segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len_sq = std::norm(ab);
    if (len_sq == 0.0) {
        return std::abs(p - a);
    }
    const double t = std::clamp(((p - a) * std::conj(ab)).real() / len_sq, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

// Root of the secular equation for the closest point on an ellipse
// (bisection on s; converges to machine precision).
double ellipse_secular_root(double r0, double z0, double z1, double g) {
    const double n0 = r0 * z0;
    double s0 = z1 - 1.0;
    double s1 = g < 0.0 ? 0.0 : std::hypot(n0, z1) - 1.0;
    double s = 0.0;
    for (int i = 0; i < 2200; ++i) {
        s = 0.5 * (s0 + s1);
        if (s == s0 || s == s1) {
            break;
        }
        const double ratio0 = n0 / (s + r0);
        const double ratio1 = z1 / (s + 1.0);
        g = ratio0 * ratio0 + ratio1 * ratio1 - 1.0;
        if (g > 0.0) {
            s0 = s;
        } else if (g < 0.0) {
            s1 = s;
        } else {
            break;
        }
    }
    return s;
}

// Distance from (y0, y1), both >= 0, to the curve (x/e0)^2 + (y/e1)^2 = 1 with e0 >= e1 > 0.
double first_quadrant_distance(double e0, double e1, double y0, double y1) {
    if (y1 > 0.0) {
        if (y0 > 0.0) {
            const double z0 = y0 / e0;
            const double z1 = y1 / e1;
            const double g = z0 * z0 + z1 * z1 - 1.0;
            if (g == 0.0) {
                return 0.0;
            }
            const double r0 = (e0 / e1) * (e0 / e1);
            const double sbar = ellipse_secular_root(r0, z0, z1, g);
            const double x0 = r0 * y0 / (sbar + r0);
            const double x1 = y1 / (sbar + 1.0);
            return std::hypot(x0 - y0, x1 - y1);
        }
        return std::abs(y1 - e1);
    }
    const double numer0 = e0 * y0;
    const double denom0 = e0 * e0 - e1 * e1;
    if (numer0 < denom0) {
        const double xde0 = numer0 / denom0;
        const double x0 = e0 * xde0;
        const double x1 = e1 * std::sqrt(std::max(0.0, 1.0 - xde0 * xde0));
        return std::hypot(x0 - y0, x1);
    }
    return std::abs(y0 - e0);
}

// Canonical ellipse frame coordinates of p: major axis along x.
Complex to_frame(const Ellipse& c, Complex p) { return (p - c.center) * std::polar(1.0, -c.rotation); }

} // namespace

Ellipse canonicalize(const Ellipse& e) {
    Ellipse c = e;
    c.axis_u = std::abs(e.axis_u);
    c.axis_v = std::abs(e.axis_v);
    if (c.axis_v > c.axis_u) {
        std::swap(c.axis_u, c.axis_v);
        c.rotation += 0.5 * kPi;
    }
    c.rotation = wrap_pi(c.rotation);
    if (c.axis_u - c.axis_v <= 1e-14 * (1.0 + c.axis_u)) {
        c.rotation = 0.0;
    }
    return c;
}

bool same_ellipse(const Ellipse& a, const Ellipse& b, double tol) {
    const Ellipse ca = canonicalize(a);
    const Ellipse cb = canonicalize(b);
    if (std::abs(ca.center - cb.center) > tol || std::abs(ca.axis_u - cb.axis_u) > tol ||
        std::abs(ca.axis_v - cb.axis_v) > tol) {
        return false;
    }
    double dr = std::abs(ca.rotation - cb.rotation);
    dr = std::min(dr, kPi - dr);
    const double eccentric = std::max(ca.axis_u - ca.axis_v, cb.axis_u - cb.axis_v);
    return eccentric * dr <= tol;
}

Complex joukowsky_eval(const JoukowskyMap& map, double t) {
    return map.a * std::polar(1.0, t) + map.b * std::polar(1.0, -t);
}

Ellipse joukowsky_ellipse(const JoukowskyMap& map) {
    const double ma = std::abs(map.a);
    const double mb = std::abs(map.b);
    Ellipse e;
    e.axis_u = ma + mb;
    e.axis_v = std::abs(ma - mb);
    e.rotation = wrap_pi(0.5 * (principal_arg(map.a) + principal_arg(map.b)));
    return e;
}

double ellipse_support(const Ellipse& e, double phi) {
    const double c = std::cos(phi - e.rotation);
    const double s = std::sin(phi - e.rotation);
    const double offset = (e.center * std::polar(1.0, -phi)).real();
    return offset + std::sqrt(e.axis_u * e.axis_u * c * c + e.axis_v * e.axis_v * s * s);
}

Complex ellipse_boundary_point(const Ellipse& e, double t) {
    return e.center + std::polar(1.0, e.rotation) * Complex(e.axis_u * std::cos(t), e.axis_v * std::sin(t));
}

double ellipse_boundary_distance(const Ellipse& e, Complex p) {
    const Ellipse c = canonicalize(e);
    const Complex q = to_frame(c, p);
    const double y0 = std::abs(q.real());
    const double y1 = std::abs(q.imag());
    if (c.axis_v == 0.0) {
        return std::hypot(std::max(0.0, y0 - c.axis_u), y1);
    }
    return first_quadrant_distance(c.axis_u, c.axis_v, y0, y1);
}

double ellipse_outside_distance(const Ellipse& e, Complex p) {
    const Ellipse c = canonicalize(e);
    const Complex q = to_frame(c, p);
    if (c.axis_v == 0.0) {
        return std::hypot(std::max(0.0, std::abs(q.real()) - c.axis_u), q.imag());
    }
    const double x = q.real() / c.axis_u;
    const double y = q.imag() / c.axis_v;
    if (x * x + y * y <= 1.0) {
        return 0.0;
    }
    return first_quadrant_distance(c.axis_u, c.axis_v, std::abs(q.real()), std::abs(q.imag()));
}

bool ellipse_contains(const Ellipse& e, Complex p, double tol) { return ellipse_outside_distance(e, p) <= tol; }

Ellipse square_map_ellipse(double axis_u, double axis_v) {
    if (axis_u < 0.0 || axis_v < 0.0) {
        throw PreconditionError("square_map_ellipse: semi-axes must be nonnegative");
    }
    const double u2 = axis_u * axis_u;
    const double v2 = axis_v * axis_v;
    return Ellipse{Complex(0.5 * (u2 - v2), 0.0), 0.5 * (u2 + v2), axis_u * axis_v, 0.0};
}

Polygon2D ellipse_polygon(const Ellipse& e, std::size_t k) {
    PointCloud pts;
    pts.reserve(k);
    for (double t : uniform_angles(k)) {
        pts.push_back(ellipse_boundary_point(e, t));
    }
    return convex_hull_2d(pts);
}

std::vector<double> uniform_angles(std::size_t k) {
    std::vector<double> angles(k);
    for (std::size_t j = 0; j < k; ++j) {
        angles[j] = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(k);
    }
    return angles;
}

SupportProfile support_profile_of_cloud(const PointCloud& cloud, std::size_t k) {
    if (cloud.empty()) {
        throw PreconditionError("support_profile_of_cloud: empty cloud");
    }
    SupportProfile h{uniform_angles(k), std::vector<double>(k)};
    for (std::size_t j = 0; j < k; ++j) {
        h.values[j] = kernels::max_projection(cloud, std::cos(h.angles[j]), std::sin(h.angles[j]));
    }
    return h;
}

SupportProfile ellipse_support_profile(const Ellipse& e, std::size_t k) {
    SupportProfile h{uniform_angles(k), std::vector<double>(k)};
    for (std::size_t j = 0; j < k; ++j) {
        h.values[j] = ellipse_support(e, h.angles[j]);
    }
    return h;
}

PointCloud natural_parametrization(const SupportProfile& h) {
    const std::size_t k = h.values.size();
    if (k < 16 || h.angles.size() != k) {
        throw PreconditionError("natural_parametrization: need at least 16 angles with matching values");
    }
    const double step = 2.0 * kPi / static_cast<double>(k);
    for (std::size_t j = 0; j < k; ++j) {
        if (std::abs(h.angles[j] - step * static_cast<double>(j)) > 1e-9) {
            throw PreconditionError("natural_parametrization: angles must form the uniform grid 2 pi j / k");
        }
    }
    PointCloud pts(k);
    for (std::size_t j = 0; j < k; ++j) {
        const double hj = h.values[j];
        const double dh = (h.values[(j + 1) % k] - h.values[(j + k - 1) % k]) / (2.0 * step);
        const double c = std::cos(h.angles[j]);
        const double s = std::sin(h.angles[j]);
        pts[j] = Complex(hj * c - dh * s, hj * s + dh * c);
    }
    return pts;
}

SupportProfile minkowski_support_sum(const SupportProfile& h1, const SupportProfile& h2) {
    if (h1.angles.size() != h2.angles.size() || h1.values.size() != h1.angles.size() ||
        h2.values.size() != h2.angles.size()) {
        throw PreconditionError("minkowski_support_sum: angle grids differ");
    }
    SupportProfile sum{h1.angles, std::vector<double>(h1.values.size())};
    for (std::size_t j = 0; j < h1.angles.size(); ++j) {
        if (std::abs(h1.angles[j] - h2.angles[j]) > 1e-12) {
            throw PreconditionError("minkowski_support_sum: angle grids differ");
        }
        sum.values[j] = h1.values[j] + h2.values[j];
    }
    return sum;
}

namespace {

// Drops points strictly inside the octagon spanned by the extreme points in
// eight directions; none of them can be a hull vertex.
PointCloud octagon_filter(const PointCloud& cloud) {
    std::array<std::size_t, 8> idx{};
    std::array<double, 8> best;
    best.fill(-std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < cloud.size(); ++k) {
        const double x = cloud[k].real();
        const double y = cloud[k].imag();
        // E, NE, N, NW, W, SW, S, SE: already counterclockwise.
        const std::array<double, 8> proj{x, x + y, y, y - x, -x, -x - y, -y, x - y};
        for (int d = 0; d < 8; ++d) {
            if (proj[d] > best[d]) {
                best[d] = proj[d];
                idx[d] = k;
            }
        }
    }
    std::vector<Complex> ring;
    for (int d = 0; d < 8; ++d) {
        const Complex v = cloud[idx[d]];
        if (ring.empty() || ring.back() != v) {
            ring.push_back(v);
        }
    }
    while (ring.size() > 1 && ring.front() == ring.back()) {
        ring.pop_back();
    }
    if (ring.size() < 3) {
        return cloud;
    }
    PointCloud kept;
    kept.reserve(cloud.size() / 4);
    for (const Complex& p : cloud) {
        bool inside = true;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            if (cross(ring[i], ring[(i + 1) % ring.size()], p) <= 0.0) {
                inside = false;
                break;
            }
        }
        if (!inside) {
            kept.push_back(p);
        }
    }
    kept.insert(kept.end(), ring.begin(), ring.end());
    return kept;
}

} // namespace

Polygon2D convex_hull_2d(const PointCloud& cloud) {
    if (cloud.empty()) {
        throw PreconditionError("convex_hull_2d: empty cloud");
    }
    PointCloud pts = cloud.size() > 1024 ? octagon_filter(cloud) : cloud;
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() == 1) {
        return {pts};
    }

    double scale = 0.0;
    for (const Complex& p : pts) {
        scale = std::max({scale, std::abs(p.real() - pts.front().real()), std::abs(p.imag() - pts.front().imag())});
    }
    const double eps = 1e-12 * scale * scale;

    std::vector<Complex> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Complex& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= eps) {
            --k;
        }
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= eps) {
            --k;
        }
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    if (hull.size() == 2 && hull[0] == hull[1]) {
        hull.pop_back();
    }
    return {std::move(hull)};
}

double distance_to_polygon(const Polygon2D& poly, Complex p) {
    const auto& v = poly.vertices;
    if (v.empty()) {
        throw PreconditionError("distance_to_polygon: empty polygon");
    }
    if (v.size() == 1) {
        return std::abs(p - v[0]);
    }
    if (v.size() == 2) {
        return segment_distance(p, v[0], v[1]);
    }
    bool inside = true;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Complex a = v[i];
        const Complex b = v[(i + 1) % v.size()];
        if (cross(a, b, p) < 0.0) {
            inside = false;
        }
        best = std::min(best, segment_distance(p, a, b));
    }
    return inside ? 0.0 : best;
}

double hausdorff_distance(const Polygon2D& a, const Polygon2D& b) {
    if (a.vertices.empty() || b.vertices.empty()) {
        throw PreconditionError("hausdorff_distance: empty polygon");
    }
    // The distance to a convex set is convex, so its maximum over a polygon sits at a vertex.
    double d = 0.0;
    for (const Complex& p : a.vertices) {
        d = std::max(d, distance_to_polygon(b, p));
    }
    for (const Complex& p : b.vertices) {
        d = std::max(d, distance_to_polygon(a, p));
    }
    return d;
}

double polygon_area(const Polygon2D& poly) {
    const auto& v = poly.vertices;
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Complex a = v[i];
        const Complex b = v[(i + 1) % v.size()];
        twice += a.real() * b.imag() - b.real() * a.imag();
    }
    return 0.5 * std::abs(twice);
}

double polygon_diameter(const Polygon2D& poly) {
    double d = 0.0;
    const auto& v = poly.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            d = std::max(d, std::abs(v[i] - v[j]));
        }
    }
    return d;
}

} // namespace fieldscope
