#include "fieldscope/cli/run.hpp"

#include "fieldscope/cli/artifacts.hpp"
#include "fieldscope/cli/emit.hpp"
#include "fieldscope/cnr.hpp"
#include "fieldscope/error.hpp"
#include "fieldscope/nr2.hpp"
#include "fieldscope/nr3.hpp"
#include "fieldscope/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

namespace fieldscope::cli {

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 10> kCommands{{
    {Command::nr2, "nr2"},
    {Command::nr3_ellipse, "nr3-ellipse"},
    {Command::nr3_sample, "nr3-sample"},
    {Command::member, "member"},
    {Command::invert, "invert"},
    {Command::reduce_diag, "reduce-diag"},
    {Command::cnr2, "cnr2"},
    {Command::cnr_rank1, "cnr-rank1"},
    {Command::qrange, "qrange"},
    {Command::verify, "verify"},
}};

constexpr std::size_t kBoundaryPoints = 360;
constexpr std::size_t kProfileAngles = 64;
constexpr std::size_t kDiskPoints = 32;

class Session {
public:
    Session(const RunConfig& config, std::ostream& out) : config_(config), out_(out) {}

    void execute() {
        switch (config_.command) {
        case Command::nr2: nr2(); break;
        case Command::nr3_ellipse: nr3_ellipse(); break;
        case Command::nr3_sample: nr3_sample_cmd(); break;
        case Command::member: member(); break;
        case Command::invert: invert(); break;
        case Command::reduce_diag: reduce_diag(); break;
        case Command::cnr2: cnr2(); break;
        case Command::cnr_rank1: rank_one(load_pair_rank_one()); break;
        case Command::qrange: rank_one(load_q_form()); break;
        case Command::verify: verify(); break;
        }
    }

private:
    const RunConfig& config_;
    std::ostream& out_;

    Json input() const { return read_json_file(config_.input_path); }

    ComplexMatrix load_matrix(std::size_t required) const {
        ComplexMatrix m = matrix_from_json(input());
        if (required != 0 && m.size() != required) {
            throw DimensionError(std::string(command_name(config_.command)) + ": input matrix must be " +
                                 std::to_string(required) + "x" + std::to_string(required));
        }
        return m;
    }

    void unsupported_format() const {
        throw PreconditionError(std::string(command_name(config_.command)) + ": output format not supported");
    }

    void emit_json(const Json& j) const { out_ << j.dump(2) << '\n'; }

    void emit_ellipse(const Ellipse& e, Json j) const {
        switch (config_.format) {
        case Format::json: emit_json(j); break;
        case Format::csv: {
            const std::vector<double> t = uniform_angles(kBoundaryPoints);
            PointCloud pts;
            for (double s : t) {
                pts.push_back(ellipse_boundary_point(e, s));
            }
            write_boundary_csv(out_, t, pts);
            break;
        }
        case Format::svg:
            write_svg(out_, {{ellipse_polygon(e, kBoundaryPoints).vertices, true, "#1f4e9a"}},
                      std::string(command_name(config_.command)));
            break;
        }
    }

    void nr2() const {
        const Ellipse e = numerical_range_2x2(load_matrix(2));
        emit_ellipse(e, ellipse_to_json(e));
    }

    // Zero-diagonal representative of A - tr(A)/3 and the shift back.
    std::pair<ComplexMatrix, Complex> reduced_3x3() const {
        const ComplexMatrix a = load_matrix(3);
        return {zero_diagonal_reduce_3x3(a).b, trace(a) / 3.0};
    }

    void nr3_ellipse() const {
        const auto [b, shift_back] = reduced_3x3();
        const Nr3EllipseDetail d = nr3_ellipse_detail(b, config_.tol);
        Nr3EllipseArtifact art{d.ellipse, d.principal, d.block12, d.block13};
        art.ellipse.center += shift_back;
        emit_ellipse(art.ellipse, nr3_ellipse_to_json(art));
    }

    void nr3_sample_cmd() const {
        const auto [b, shift_back] = reduced_3x3();
        Polygon2D hull = nr3_sample_hull(b);
        for (auto& v : hull.vertices) {
            v += shift_back;
        }
        switch (config_.format) {
        case Format::json: emit_json(polygon_to_json(hull)); break;
        case Format::csv: write_polygon_csv(out_, hull); break;
        case Format::svg: write_svg(out_, {{hull.vertices, true, "#1f4e9a"}}, "nr3-sample"); break;
        }
    }

    void member() const {
        const MemberArtifact art{*config_.point, membership_specht(load_matrix(2), *config_.point, config_.tol)};
        switch (config_.format) {
        case Format::json: emit_json(member_to_json(art)); break;
        case Format::csv:
            out_ << "re,im,member\n"
                 << format_fixed(art.point.real()) << ',' << format_fixed(art.point.imag()) << ','
                 << (art.member ? "true" : "false") << '\n';
            break;
        case Format::svg: unsupported_format();
        }
    }

    void invert() const {
        const ComplexMatrix a = load_matrix(2);
        const InverseSolution s = inverse_numerical_range_detailed(a, *config_.point, config_.tol);
        const InvertArtifact art{*config_.point, s.h.components(), quadratic_form(a, s.h.components()), s.r, s.theta1,
                                 s.z};
        switch (config_.format) {
        case Format::json: emit_json(invert_to_json(art)); break;
        case Format::csv:
            out_ << "k,re,im\n";
            for (std::size_t k = 0; k < art.h.size(); ++k) {
                out_ << k << ',' << format_fixed(art.h[k].real()) << ',' << format_fixed(art.h[k].imag()) << '\n';
            }
            break;
        case Format::svg: unsupported_format();
        }
    }

    void reduce_diag() const {
        const ComplexMatrix a = load_matrix(3);
        const ZeroDiagonalReduction red = zero_diagonal_reduce_3x3(a);
        ReductionArtifact art{red.q, red.b, 0.0, 0.0};
        const ComplexMatrix gram = mat_mul(adjoint(red.q), red.q);
        for (std::size_t i = 0; i < 3; ++i) {
            art.diagonal_residual = std::max(art.diagonal_residual, std::abs(red.b(i, i)));
            for (std::size_t j = 0; j < 3; ++j) {
                art.unitarity_residual =
                    std::max(art.unitarity_residual, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
            }
        }
        switch (config_.format) {
        case Format::json: emit_json(reduction_to_json(art)); break;
        case Format::csv:
            out_ << "matrix,i,j,re,im\n";
            for (const auto& [name, m] : {std::pair{"q", &art.q}, std::pair{"b", &art.b}}) {
                for (std::size_t i = 0; i < 3; ++i) {
                    for (std::size_t j = 0; j < 3; ++j) {
                        out_ << name << ',' << i << ',' << j << ',' << format_fixed((*m)(i, j).real()) << ','
                             << format_fixed((*m)(i, j).imag()) << '\n';
                    }
                }
            }
            break;
        case Format::svg: unsupported_format();
        }
    }

    void cnr2() const {
        const MatrixPair p = pair_from_json(input());
        if (p.a.size() != 2) {
            throw DimensionError("cnr2: matrices \"a\" and \"c\" must be 2x2");
        }
        const Ellipse e = cnr_2x2(p.a, p.c);
        emit_ellipse(e, ellipse_to_json(e));
    }

    std::pair<ComplexMatrix, RankOneRowForm> load_pair_rank_one() const {
        MatrixPair p = pair_from_json(input());
        RankOneRowForm form = rank1_row_form(p.c);
        return {std::move(p.a), std::move(form)};
    }

    std::pair<ComplexMatrix, RankOneRowForm> load_q_form() const {
        ComplexMatrix a = load_matrix(0);
        RankOneRowForm form = q_form(a.size(), *config_.q);
        return {std::move(a), std::move(form)};
    }

    void rank_one(const std::pair<ComplexMatrix, RankOneRowForm>& in) const {
        const auto& [a, form] = in;
        const SeededSampler sampler(config_.seed);
        RankOneArtifact art{form, cnr_rank1_support_profile(a, form, kProfileAngles, sampler, config_.samples),
                            convex_hull_2d(cnr_rank1_sample(a, form, sampler, config_.samples, kDiskPoints))};
        switch (config_.format) {
        case Format::json: emit_json(rank_one_to_json(art)); break;
        case Format::csv: write_profile_csv(out_, art.profile, natural_parametrization(art.profile)); break;
        case Format::svg:
            write_svg(out_,
                      {{art.hull.vertices, true, "#1f4e9a"}, {natural_parametrization(art.profile), true, "#b8412c"}},
                      std::string(command_name(config_.command)));
            break;
        }
    }

    static VerifyCheck check(std::string name, const ComparisonReport& r, double violation_limit,
                             double hausdorff_limit) {
        return {std::move(name), r, violation_limit, hausdorff_limit,
                r.max_outward_violation <= violation_limit && r.hausdorff <= hausdorff_limit};
    }

    static double diameter_of(const Ellipse& e) { return 2.0 * std::max(e.axis_u, e.axis_v); }

    std::vector<VerifyCheck> verify_matrix(const ComplexMatrix& a) const {
        const SeededSampler sampler(config_.seed);
        const double scale = 1.0 + hs_norm(a);
        std::vector<VerifyCheck> checks;
        if (a.size() == 2) {
            const Ellipse e = numerical_range_2x2(a);
            const double diam = std::max(diameter_of(e), 1e-8 * scale);
            checks.push_back(check("nr2/unit-vector-sampling",
                                   compare_region(e, sample_numerical_range(a, sampler, config_.samples)),
                                   1e-8 * scale, 0.02 * diam));
            checks.push_back(
                check("nr2/exact-grid", compare_region(e, exact_grid_2x2(a, 256, 256)), 1e-10 * scale, 1e-3 * diam));
            return checks;
        }
        if (a.size() == 3) {
            const ComplexMatrix b = zero_diagonal_reduce_3x3(a).b;
            const Complex shift_back = trace(a) / 3.0;
            PointCloud cloud = sample_numerical_range(a, sampler, config_.samples);
            if (std::abs(b(1, 2)) + std::abs(b(2, 1)) <= config_.tol * scale) {
                Ellipse e = nr3_ellipse_zero23(b, config_.tol);
                e.center += shift_back;
                const double diam = std::max(diameter_of(e), 1e-8 * scale);
                checks.push_back(
                    check("nr3-ellipse/unit-vector-sampling", compare_region(e, cloud), 1e-8 * scale, 0.05 * diam));
                PointCloud grid = nr3_sample(b);
                for (auto& z : grid) {
                    z += shift_back;
                }
                checks.push_back(check("nr3-ellipse/union-grid", compare_region(e, grid), 1e-8 * scale, 1e-2 * diam));
            } else {
                Polygon2D hull = nr3_sample_hull(b);
                for (auto& v : hull.vertices) {
                    v += shift_back;
                }
                ComparisonReport r;
                r.n_points = cloud.size();
                for (const Complex& z : cloud) {
                    r.max_outward_violation = std::max(r.max_outward_violation, distance_to_polygon(hull, z));
                }
                r.hausdorff = hausdorff_distance(hull, convex_hull_2d(cloud));
                const double diam = std::max(polygon_diameter(hull), 1e-8 * scale);
                checks.push_back(check("nr3-union/unit-vector-sampling", r, 1e-2 * diam, 0.05 * diam));
            }
            return checks;
        }
        throw DimensionError("verify: a single input matrix must be 2x2 or 3x3");
    }

    std::vector<VerifyCheck> verify_pair(const MatrixPair& p) const {
        const SeededSampler sampler(config_.seed);
        const double scale = (1.0 + hs_norm(p.a)) * (1.0 + hs_norm(p.c));
        const PointCloud orbit = sample_c_numerical_range(p.a, p.c, sampler, config_.samples);
        std::vector<VerifyCheck> checks;
        if (p.a.size() == 2) {
            const Ellipse e = cnr_2x2(p.a, p.c);
            const double diam = std::max(diameter_of(e), 1e-8 * scale);
            checks.push_back(check("cnr2/orbit-sampling", compare_region(e, orbit), 1e-8 * scale, 0.02 * diam));
        }
        try {
            const RankOneRowForm form = rank1_row_form(p.c);
            const SupportProfile disks = cnr_rank1_support_profile(p.a, form, kProfileAngles, sampler, config_.samples);
            const SupportProfile orbits = orbit_support_profile(p.a, p.c, kProfileAngles, sampler, config_.samples);
            // Both profiles are attained values, so each is a lower bound of the true support.
            ComparisonReport r;
            r.n_points = config_.samples;
            for (std::size_t k = 0; k < disks.values.size(); ++k) {
                r.max_outward_violation = std::max(r.max_outward_violation, orbits.values[k] - disks.values[k]);
                r.hausdorff = std::max(r.hausdorff, std::abs(orbits.values[k] - disks.values[k]));
            }
            const double diam = std::max(polygon_diameter(convex_hull_2d(natural_parametrization(disks))), 1e-8 * scale);
            checks.push_back(check("cnr-rank1/orbit-support", r, 1e-3 * diam, 0.02 * diam));
        } catch (const NotRankOneError&) {
        }
        if (checks.empty()) {
            throw PreconditionError("verify: no closed form applies to this pair (need 2x2 or rank-1 C)");
        }
        return checks;
    }

    void verify() const {
        const Json j = input();
        const std::vector<VerifyCheck> checks =
            j.contains("a") ? verify_pair(pair_from_json(j)) : verify_matrix(matrix_from_json(j));
        switch (config_.format) {
        case Format::json: emit_json(verify_to_json(checks)); break;
        case Format::csv:
            out_ << "name,hausdorff,max_outward_violation,n_points,pass\n";
            for (const auto& c : checks) {
                out_ << c.name << ',' << format_fixed(c.report.hausdorff) << ','
                     << format_fixed(c.report.max_outward_violation) << ',' << c.report.n_points << ','
                     << (c.pass ? "true" : "false") << '\n';
            }
            break;
        case Format::svg: unsupported_format();
        }
    }
};

} // namespace

std::optional<Command> parse_command(std::string_view name) {
    for (const auto& [c, n] : kCommands) {
        if (n == name) {
            return c;
        }
    }
    return std::nullopt;
}

std::string_view command_name(Command c) {
    for (const auto& [cmd, n] : kCommands) {
        if (cmd == c) {
            return n;
        }
    }
    return "?";
}

std::optional<Format> parse_format(std::string_view name) {
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    if (name == "svg") return Format::svg;
    return std::nullopt;
}

void validate(const RunConfig& config) {
    if (config.input_path.empty()) {
        throw PreconditionError("an input file is required (--input)");
    }
    if (config.samples < 1) {
        throw PreconditionError("--samples must be at least 1");
    }
    if (!(config.tol > 0.0) || !std::isfinite(config.tol)) {
        throw PreconditionError("--tol must be positive");
    }
    if (config.q && !(*config.q >= 0.0 && *config.q <= 1.0)) {
        throw PreconditionError("--q must lie in [0, 1]");
    }
    if ((config.command == Command::member || config.command == Command::invert) && !config.point) {
        throw PreconditionError(std::string(command_name(config.command)) + " requires --point RE IM");
    }
    if (config.command == Command::qrange && !config.q) {
        throw PreconditionError("qrange requires --q");
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        validate(config);
        std::ostringstream artifact;
        Session(config, artifact).execute();
        if (config.output_path.empty()) {
            out << artifact.str();
        } else {
            std::ofstream file(config.output_path, std::ios::binary);
            if (!file || !(file << artifact.str()) || !file.flush()) {
                throw PreconditionError("cannot write output file '" + config.output_path + "'");
            }
        }
        return kExitOk;
    } catch (const OutsideRangeError& e) {
        err << "fieldscope: " << e.what() << '\n';
        return config.command == Command::invert ? kExitOutsideRange : kExitInvalid;
    } catch (const Error& e) {
        err << "fieldscope: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const Json::exception& e) {
        err << "fieldscope: malformed input: " << e.what() << '\n';
        return kExitInvalid;
    }
}

} // namespace fieldscope::cli
