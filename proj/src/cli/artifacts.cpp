#include "fieldscope/cli/artifacts.hpp"

#include "fieldscope/error.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace fieldscope::cli {

namespace {

double number(const Json& j, const char* what) {
    if (!j.is_number()) {
        throw PreconditionError(std::string("expected a number for ") + what);
    }
    return j.get<double>();
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw PreconditionError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

Json points_to_json(const std::vector<Complex>& pts) {
    Json arr = Json::array();
    for (const Complex& z : pts) {
        arr.push_back(complex_to_json(z));
    }
    return arr;
}

std::vector<Complex> points_from_json(const Json& j, const char* what) {
    if (!j.is_array()) {
        throw PreconditionError(std::string("expected an array for ") + what);
    }
    std::vector<Complex> pts;
    pts.reserve(j.size());
    for (const auto& z : j) {
        pts.push_back(complex_from_json(z));
    }
    return pts;
}

std::vector<double> reals_from_json(const Json& j, const char* what) {
    if (!j.is_array()) {
        throw PreconditionError(std::string("expected an array for ") + what);
    }
    std::vector<double> xs;
    xs.reserve(j.size());
    for (const auto& x : j) {
        xs.push_back(number(x, what));
    }
    return xs;
}

Json axes_to_json(const SubEllipseAxes& s) { return {{"major", s.major}, {"minor", s.minor}, {"angle", s.angle}}; }

SubEllipseAxes axes_from_json(const Json& j) {
    return {number(field(j, "major"), "major"), number(field(j, "minor"), "minor"), number(field(j, "angle"), "angle")};
}

} // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw PreconditionError("complex numbers must be [re, im] pairs");
    }
    return {number(j[0], "real part"), number(j[1], "imaginary part")};
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.size(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return {{"n", m.size()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    const Json& rows = field(j, "entries");
    if (!rows.is_array() || rows.empty()) {
        throw PreconditionError("\"entries\" must be a nonempty array of rows");
    }
    const std::size_t n = rows.size();
    if (j.contains("n")) {
        const Json& declared = j.at("n");
        if (!declared.is_number_integer() || declared.get<long long>() != static_cast<long long>(n)) {
            throw DimensionError("\"n\" does not match the number of rows");
        }
    }
    std::vector<Complex> entries;
    entries.reserve(n * n);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != n) {
            throw DimensionError("matrix must be square: every row needs n entries");
        }
        for (const auto& z : row) {
            entries.push_back(complex_from_json(z));
        }
    }
    return ComplexMatrix(n, std::move(entries));
}

Json ellipse_to_json(const Ellipse& e) {
    const Ellipse c = canonicalize(e);
    return {{"center", complex_to_json(c.center)},
            {"semi_axes", Json::array({c.axis_u, c.axis_v})},
            {"rotation_rad", c.rotation}};
}

Ellipse ellipse_from_json(const Json& j) {
    const Json& axes = field(j, "semi_axes");
    if (!axes.is_array() || axes.size() != 2) {
        throw PreconditionError("\"semi_axes\" must be a pair");
    }
    return Ellipse{complex_from_json(field(j, "center")), number(axes[0], "semi_axes"), number(axes[1], "semi_axes"),
                   number(field(j, "rotation_rad"), "rotation_rad")};
}

Json polygon_to_json(const Polygon2D& p) { return {{"vertices", points_to_json(p.vertices)}}; }

Polygon2D polygon_from_json(const Json& j) { return {points_from_json(field(j, "vertices"), "vertices")}; }

Json profile_to_json(const SupportProfile& p) { return {{"angles", p.angles}, {"values", p.values}}; }

SupportProfile profile_from_json(const Json& j) {
    SupportProfile p{reals_from_json(field(j, "angles"), "angles"), reals_from_json(field(j, "values"), "values")};
    if (p.angles.size() != p.values.size()) {
        throw PreconditionError("support profile angles and values differ in length");
    }
    return p;
}

Json report_to_json(const ComparisonReport& r) {
    return {{"hausdorff", r.hausdorff}, {"max_outward_violation", r.max_outward_violation}, {"n_points", r.n_points}};
}

ComparisonReport report_from_json(const Json& j) {
    return {number(field(j, "hausdorff"), "hausdorff"),
            number(field(j, "max_outward_violation"), "max_outward_violation"),
            field(j, "n_points").get<std::size_t>()};
}

Json row_form_to_json(const RankOneRowForm& f) {
    return {{"n", f.n}, {"c11", complex_to_json(f.c11)}, {"tail_norm", f.tail_norm}, {"row", points_to_json(f.row)}};
}

RankOneRowForm row_form_from_json(const Json& j) {
    RankOneRowForm f;
    f.n = field(j, "n").get<std::size_t>();
    f.c11 = complex_from_json(field(j, "c11"));
    f.tail_norm = number(field(j, "tail_norm"), "tail_norm");
    f.row = points_from_json(field(j, "row"), "row");
    return f;
}

Json pair_to_json(const MatrixPair& p) { return {{"a", matrix_to_json(p.a)}, {"c", matrix_to_json(p.c)}}; }

MatrixPair pair_from_json(const Json& j) {
    MatrixPair p{matrix_from_json(field(j, "a")), matrix_from_json(field(j, "c"))};
    if (p.a.size() != p.c.size()) {
        throw DimensionError("matrices \"a\" and \"c\" must have the same dimension");
    }
    return p;
}

Json nr3_ellipse_to_json(const Nr3EllipseArtifact& a) {
    Json j = ellipse_to_json(a.ellipse);
    j["principal"] = {{"lambda1", a.principal.lambda1}, {"lambda2", a.principal.lambda2}, {"gamma", a.principal.gamma}};
    j["block12"] = axes_to_json(a.block12);
    j["block13"] = axes_to_json(a.block13);
    return j;
}

Nr3EllipseArtifact nr3_ellipse_from_json(const Json& j) {
    const Json& p = field(j, "principal");
    return {ellipse_from_json(j),
            {number(field(p, "lambda1"), "lambda1"), number(field(p, "lambda2"), "lambda2"),
             number(field(p, "gamma"), "gamma")},
            axes_from_json(field(j, "block12")),
            axes_from_json(field(j, "block13"))};
}

Json invert_to_json(const InvertArtifact& a) {
    return {{"point", complex_to_json(a.point)}, {"h", points_to_json(a.h)}, {"value", complex_to_json(a.value)},
            {"r", a.r},  {"theta1", a.theta1},    {"z", complex_to_json(a.z)}};
}

InvertArtifact invert_from_json(const Json& j) {
    return {complex_from_json(field(j, "point")), points_from_json(field(j, "h"), "h"),
            complex_from_json(field(j, "value")), number(field(j, "r"), "r"),
            number(field(j, "theta1"), "theta1"),  complex_from_json(field(j, "z"))};
}

Json member_to_json(const MemberArtifact& a) { return {{"point", complex_to_json(a.point)}, {"member", a.member}}; }

MemberArtifact member_from_json(const Json& j) {
    const Json& m = field(j, "member");
    if (!m.is_boolean()) {
        throw PreconditionError("\"member\" must be a boolean");
    }
    return {complex_from_json(field(j, "point")), m.get<bool>()};
}

Json reduction_to_json(const ReductionArtifact& a) {
    return {{"q", matrix_to_json(a.q)},
            {"b", matrix_to_json(a.b)},
            {"diagonal_residual", a.diagonal_residual},
            {"unitarity_residual", a.unitarity_residual}};
}

ReductionArtifact reduction_from_json(const Json& j) {
    return {matrix_from_json(field(j, "q")), matrix_from_json(field(j, "b")),
            number(field(j, "diagonal_residual"), "diagonal_residual"),
            number(field(j, "unitarity_residual"), "unitarity_residual")};
}

Json rank_one_to_json(const RankOneArtifact& a) {
    return {{"row_form", row_form_to_json(a.form)},
            {"profile", profile_to_json(a.profile)},
            {"hull", polygon_to_json(a.hull)}};
}

RankOneArtifact rank_one_from_json(const Json& j) {
    return {row_form_from_json(field(j, "row_form")), profile_from_json(field(j, "profile")),
            polygon_from_json(field(j, "hull"))};
}

Json verify_to_json(const std::vector<VerifyCheck>& checks) {
    Json arr = Json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"report", report_to_json(c.report)},
                       {"violation_limit", c.violation_limit},
                       {"hausdorff_limit", c.hausdorff_limit},
                       {"pass", c.pass}});
    }
    return {{"checks", std::move(arr)}};
}

std::vector<VerifyCheck> verify_from_json(const Json& j) {
    std::vector<VerifyCheck> checks;
    for (const auto& c : field(j, "checks")) {
        checks.push_back({field(c, "name").get<std::string>(), report_from_json(field(c, "report")),
                          number(field(c, "violation_limit"), "violation_limit"),
                          number(field(c, "hausdorff_limit"), "hausdorff_limit"), field(c, "pass").get<bool>()});
    }
    return checks;
}

Json read_json_file(const std::string& path) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    } else {
        std::ifstream in(path);
        if (!in) {
            throw PreconditionError("cannot open input file '" + path + "'");
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw PreconditionError(std::string("input is not valid JSON: ") + e.what());
    }
}

} // namespace fieldscope::cli
