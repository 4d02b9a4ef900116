#include "fieldscope/cli/emit.hpp"

#include "fieldscope/error.hpp"

#include <algorithm>
#include <cstdio>

namespace fieldscope::cli {

namespace {

std::string svg_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    std::string s(buf);
    if (s == "-0") {
        s = "0";
    }
    return s;
}

} // namespace

std::string format_fixed(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", x);
    std::string s(buf);
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') {
        s.erase(0, 1);
    }
    return s;
}

void write_boundary_csv(std::ostream& out, const std::vector<double>& t, const PointCloud& points) {
    if (t.size() != points.size()) {
        throw PreconditionError("boundary parameters and points differ in length");
    }
    out << "t,re,im\n";
    for (std::size_t k = 0; k < t.size(); ++k) {
        out << format_fixed(t[k]) << ',' << format_fixed(points[k].real()) << ',' << format_fixed(points[k].imag())
            << '\n';
    }
}

void write_polygon_csv(std::ostream& out, const Polygon2D& poly) {
    out << "k,re,im\n";
    for (std::size_t k = 0; k < poly.vertices.size(); ++k) {
        out << k << ',' << format_fixed(poly.vertices[k].real()) << ',' << format_fixed(poly.vertices[k].imag())
            << '\n';
    }
}

void write_profile_csv(std::ostream& out, const SupportProfile& profile, const PointCloud& boundary) {
    if (profile.angles.size() != profile.values.size() || boundary.size() != profile.angles.size()) {
        throw PreconditionError("support profile and boundary differ in length");
    }
    out << "phi,h,re,im\n";
    for (std::size_t k = 0; k < boundary.size(); ++k) {
        out << format_fixed(profile.angles[k]) << ',' << format_fixed(profile.values[k]) << ','
            << format_fixed(boundary[k].real()) << ',' << format_fixed(boundary[k].imag()) << '\n';
    }
}

void write_svg(std::ostream& out, const std::vector<SvgLayer>& layers, const std::string& title) {
    double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
    bool first = true;
    for (const auto& layer : layers) {
        for (const Complex& z : layer.points) {
            if (first) {
                xmin = xmax = z.real();
                ymin = ymax = z.imag();
                first = false;
            }
            xmin = std::min(xmin, z.real());
            xmax = std::max(xmax, z.real());
            ymin = std::min(ymin, z.imag());
            ymax = std::max(ymax, z.imag());
        }
    }
    double span = std::max(xmax - xmin, ymax - ymin);
    if (!(span > 0.0)) {
        span = 1.0;
    }
    const double margin = 0.05 * span;
    const double x0 = xmin - margin, y0 = -(ymax + margin);
    const double w = (xmax - xmin) + 2.0 * margin, h = (ymax - ymin) + 2.0 * margin;
    const double stroke = span / 400.0;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << svg_number(x0) << ' ' << svg_number(y0) << ' '
        << svg_number(std::max(w, 2.0 * margin)) << ' ' << svg_number(std::max(h, 2.0 * margin)) << "\">\n";
    out << "<title>" << title << "</title>\n";
    for (const auto& layer : layers) {
        if (layer.closed) {
            out << "<polygon fill=\"none\" stroke=\"" << layer.colour << "\" stroke-width=\"" << svg_number(stroke)
                << "\" points=\"";
            for (std::size_t k = 0; k < layer.points.size(); ++k) {
                out << (k ? " " : "") << svg_number(layer.points[k].real()) << ','
                    << svg_number(-layer.points[k].imag());
            }
            out << "\"/>\n";
        } else {
            for (const Complex& z : layer.points) {
                out << "<circle cx=\"" << svg_number(z.real()) << "\" cy=\"" << svg_number(-z.imag()) << "\" r=\""
                    << svg_number(stroke) << "\" fill=\"" << layer.colour << "\"/>\n";
            }
        }
    }
    out << "</svg>\n";
}

} // namespace fieldscope::cli
