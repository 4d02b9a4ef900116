#include "fieldscope/cli/artifacts.hpp"
#include "fieldscope/cli/emit.hpp"
#include "fieldscope/cli/run.hpp"
#include "fieldscope/cnr.hpp"
#include "fieldscope/kernels.hpp"
#include "fieldscope/nr2.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace fieldscope;
using namespace fieldscope::cli;
namespace fs = std::filesystem;

namespace {

const Complex I1{0.0, 1.0};
const ComplexMatrix kPaper{{0.0, 8.0}, {4.0, 0.0}};

struct ScratchDir {
    fs::path path = fs::temp_directory_path() / ("fieldscope_cli_" + std::to_string(::getpid()));
    ScratchDir() { fs::create_directories(path); }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

fs::path scratch() {
    static const ScratchDir dir;
    return dir.path;
}

std::string write_input(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string write_matrix(const std::string& name, const ComplexMatrix& m) {
    return write_input(name, matrix_to_json(m).dump());
}

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(RunConfig config) {
    std::ostringstream out, err;
    const int code = run(config, out, err);
    return {code, out.str(), err.str()};
}

RunConfig config_for(Command c, const std::string& input, Format f = Format::json) {
    RunConfig cfg;
    cfg.command = c;
    cfg.input_path = input;
    cfg.format = f;
    return cfg;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

} // namespace

TEST_CASE("command and format names") {
    for (const char* name : {"nr2", "nr3-ellipse", "nr3-sample", "member", "invert", "reduce-diag", "cnr2", "cnr-rank1",
                             "qrange", "verify"}) {
        const auto c = parse_command(name);
        REQUIRE(c.has_value());
        CHECK(command_name(*c) == name);
    }
    CHECK_FALSE(parse_command("nr4").has_value());
    CHECK(parse_format("csv") == Format::csv);
    CHECK(parse_format("svg") == Format::svg);
    CHECK_FALSE(parse_format("xml").has_value());
}

TEST_CASE("nr2 on the worked example") {
    const Result r = invoke(config_for(Command::nr2, write_matrix("a.json", kPaper)));
    CHECK(r.code == kExitOk);
    const Ellipse e = ellipse_from_json(Json::parse(r.out));
    CHECK(e.axis_u == 6.0);
    CHECK(e.axis_v == 2.0);
    CHECK(e.rotation == 0.0);
    CHECK(e.center == Complex(0.0));
}

TEST_CASE("member and invert") {
    const std::string in = write_matrix("a.json", kPaper);
    RunConfig m = config_for(Command::member, in);
    m.point = Complex(7.0, 0.0);
    Result r = invoke(m);
    CHECK(r.code == kExitOk);
    CHECK_FALSE(member_from_json(Json::parse(r.out)).member);
    m.point = Complex(1.0, 1.0);
    CHECK(member_from_json(Json::parse(invoke(m).out)).member);

    RunConfig inv = config_for(Command::invert, in);
    inv.point = Complex(1.0, 1.0);
    r = invoke(inv);
    REQUIRE(r.code == kExitOk);
    const InvertArtifact a = invert_from_json(Json::parse(r.out));
    const double s = std::sqrt(10.0) / 6;
    const double t1 = 0.5 * std::asin(s);
    CHECK(std::abs(a.h[0] - std::cos(t1)) <= 1e-10);
    CHECK(std::abs(a.h[1] - std::sin(t1) * Complex(1.0, 3.0) / std::sqrt(10.0)) <= 1e-10);
    CHECK(std::abs(a.value - Complex(1.0, 1.0)) <= 1e-10);
    CHECK(std::abs(testing::form(kPaper, a.h) - Complex(1.0, 1.0)) <= 1e-10);

    inv.point = Complex(7.0, 0.0);
    r = invoke(inv);
    CHECK(r.code == kExitOutsideRange);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("invalid input is rejected with exit code 2") {
    const std::string in = write_matrix("a.json", kPaper);

    RunConfig missing = config_for(Command::invert, in);
    CHECK(invoke(missing).code == kExitInvalid);
    RunConfig noq = config_for(Command::qrange, in);
    CHECK(invoke(noq).code == kExitInvalid);
    RunConfig badq = noq;
    badq.q = 1.5;
    CHECK(invoke(badq).code == kExitInvalid);
    RunConfig zero = config_for(Command::nr2, in);
    zero.samples = 0;
    CHECK(invoke(zero).code == kExitInvalid);
    RunConfig neg_tol = config_for(Command::nr2, in);
    neg_tol.tol = -1.0;
    CHECK(invoke(neg_tol).code == kExitInvalid);

    CHECK(invoke(config_for(Command::nr2, write_input("bad.json", "{\"n\": 2, \"entries\": "))).code == kExitInvalid);
    CHECK(invoke(config_for(Command::nr2, write_input("rect.json", "{\"n\": 2, \"entries\": [[[1,0],[0,0]]]}"))).code ==
          kExitInvalid);
    CHECK(invoke(config_for(Command::nr2, write_matrix("three.json", ComplexMatrix::identity(3)))).code == kExitInvalid);
    CHECK(invoke(config_for(Command::nr2, (scratch() / "absent.json").string())).code == kExitInvalid);
    CHECK(invoke(config_for(Command::member, in, Format::svg)).code == kExitInvalid);

    MatrixPair full{ComplexMatrix::identity(3), ComplexMatrix::identity(3)};
    CHECK(invoke(config_for(Command::cnr_rank1, write_input("full.json", pair_to_json(full).dump()))).code ==
          kExitInvalid);
    MatrixPair mismatched{ComplexMatrix::identity(3), ComplexMatrix::identity(2)};
    CHECK(invoke(config_for(Command::cnr2, write_input("mm.json", pair_to_json(mismatched).dump()))).code ==
          kExitInvalid);
}

TEST_CASE("nr3 commands") {
    const ComplexMatrix ex{{0.0, 8.0, 2.0 * I1}, {4.0, 0.0, 0.0}, {4.0 * I1, 0.0, 0.0}};
    const std::string in = write_matrix("ex.json", ex);
    const Result r = invoke(config_for(Command::nr3_ellipse, in));
    REQUIRE(r.code == kExitOk);
    const Nr3EllipseArtifact a = nr3_ellipse_from_json(Json::parse(r.out));
    CHECK(std::abs(a.principal.lambda1 - 37.0) <= 1e-10);
    CHECK(std::abs(a.principal.lambda2 - 13.0) <= 1e-10);
    CHECK(std::abs(a.principal.gamma) <= 1e-10);
    CHECK(a.ellipse.axis_u == doctest::Approx(std::sqrt(37.0)));

    // A shifted copy: the reduction recovers the same ellipse around tr/3.
    const ComplexMatrix shifted = shift(ex, Complex(1.0, -2.0));
    const Nr3EllipseArtifact b =
        nr3_ellipse_from_json(Json::parse(invoke(config_for(Command::nr3_ellipse, write_matrix("sh.json", shifted))).out));
    CHECK(std::abs(b.ellipse.center - Complex(1.0, -2.0)) <= 1e-9);
    CHECK(b.ellipse.axis_u == doctest::Approx(std::sqrt(37.0)));

    ComplexMatrix general = testing::Rng(3).matrix(3);
    CHECK(invoke(config_for(Command::nr3_ellipse, write_matrix("g.json", general))).code == kExitInvalid);

    const Result hull = invoke(config_for(Command::nr3_sample, in, Format::csv));
    REQUIRE(hull.code == kExitOk);
    CHECK(first_line(hull.out) == "k,re,im");
}

TEST_CASE("reduce-diag reports small residuals") {
    const ComplexMatrix a = testing::Rng(4).matrix(3);
    const std::string in = write_matrix("r.json", a);
    const Result r = invoke(config_for(Command::reduce_diag, in));
    REQUIRE(r.code == kExitOk);
    const ReductionArtifact art = reduction_from_json(Json::parse(r.out));
    CHECK(art.diagonal_residual <= 1e-9 * (1.0 + hs_norm(a)));
    CHECK(art.unitarity_residual <= 1e-12);
    CHECK(testing::max_abs_diff(testing::conjugate_by(shift(a, -trace(a) / 3.0), art.q), art.b) <= 1e-10 * (1.0 + hs_norm(a)));
    const Result csv = invoke(config_for(Command::reduce_diag, in, Format::csv));
    CHECK(first_line(csv.out) == "matrix,i,j,re,im");
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 19);
}

TEST_CASE("cnr commands") {
    const MatrixPair p{ComplexMatrix{{0.0, 2.0}, {0.0, 0.0}}, ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}};
    const std::string in = write_input("pair.json", pair_to_json(p).dump());
    const Ellipse e = ellipse_from_json(Json::parse(invoke(config_for(Command::cnr2, in)).out));
    CHECK(e.axis_u == doctest::Approx(2.0));
    CHECK(e.axis_v == doctest::Approx(2.0));

    RunConfig rk = config_for(Command::cnr_rank1, in);
    rk.samples = 2000;
    const Result r = invoke(rk);
    REQUIRE(r.code == kExitOk);
    const RankOneArtifact art = rank_one_from_json(Json::parse(r.out));
    CHECK(art.form.tail_norm == doctest::Approx(1.0));
    for (std::size_t k = 0; k < art.profile.values.size(); ++k) {
        CHECK(std::abs(art.profile.values[k] - ellipse_support(e, art.profile.angles[k])) <= 1e-6);
    }

    RunConfig q = config_for(Command::qrange, write_matrix("n.json", ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), Format::csv);
    q.q = 0.0;
    q.samples = 2000;
    const Result qr = invoke(q);
    REQUIRE(qr.code == kExitOk);
    CHECK(first_line(qr.out) == "phi,h,re,im");
}

TEST_CASE("verify passes on the examples") {
    for (const auto& [name, text] : std::vector<std::pair<std::string, std::string>>{
             {"v1.json", matrix_to_json(kPaper).dump()},
             {"v2.json", matrix_to_json(ComplexMatrix{{0.0, 8.0, 2.0 * I1}, {4.0, 0.0, 0.0}, {4.0 * I1, 0.0, 0.0}}).dump()},
             {"v3.json", matrix_to_json(testing::Rng(5).matrix(3)).dump()},
             {"v4.json", pair_to_json({testing::Rng(6).matrix(2), testing::Rng(7).matrix(2)}).dump()},
             {"v5.json", pair_to_json({testing::Rng(8).matrix(3), ComplexMatrix{{0.6, 0.8, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}}).dump()},
         }) {
        CAPTURE(name);
        const Result r = invoke(config_for(Command::verify, write_input(name, text)));
        REQUIRE(r.code == kExitOk);
        const auto checks = verify_from_json(Json::parse(r.out));
        CHECK_FALSE(checks.empty());
        for (const VerifyCheck& c : checks) {
            CAPTURE(c.name);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("csv and svg output") {
    const std::string in = write_matrix("a.json", kPaper);
    const Result csv = invoke(config_for(Command::nr2, in, Format::csv));
    REQUIRE(csv.code == kExitOk);
    CHECK(first_line(csv.out) == "t,re,im");
    CHECK(csv.out.find("-0.0000000000") == std::string::npos);
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    CHECK(line == "0.0000000000,6.0000000000,0.0000000000");
    CHECK(invoke(config_for(Command::nr2, in, Format::csv)).out == csv.out);

    const Result svg = invoke(config_for(Command::nr2, in, Format::svg));
    CHECK(svg.out.rfind("<svg", 0) == 0);
    CHECK(svg.out.find("</svg>") != std::string::npos);

    CHECK(format_fixed(-0.0) == "0.0000000000");
    CHECK(format_fixed(-1e-13) == "0.0000000000");
    CHECK(format_fixed(1.5) == "1.5000000000");
}

TEST_CASE("output file") {
    RunConfig cfg = config_for(Command::nr2, write_matrix("a.json", kPaper));
    cfg.output_path = (scratch() / "out.json").string();
    const Result r = invoke(cfg);
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream f(cfg.output_path);
    const Ellipse e = ellipse_from_json(Json::parse(f));
    CHECK(e.axis_u == 6.0);
}

TEST_CASE("csv is byte-identical across threads and SIMD levels") {
    const MatrixPair p{testing::Rng(9).matrix(3), ComplexMatrix{{0.6, 0.8, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
    RunConfig cfg = config_for(Command::cnr_rank1, write_input("p3.json", pair_to_json(p).dump()), Format::csv);
    cfg.samples = 3000;
    ::setenv("FIELDSCOPE_THREADS", "1", 1);
    const std::string base = invoke(cfg).out;
    ::setenv("FIELDSCOPE_THREADS", "3", 1);
    CHECK(invoke(cfg).out == base);
    kernels::force_level(kernels::SimdLevel::scalar);
    CHECK(invoke(cfg).out == base);
    kernels::force_level(std::nullopt);
    ::unsetenv("FIELDSCOPE_THREADS");
}

TEST_CASE("artifact round trips") {
    testing::Rng rng(10);
    const ComplexMatrix m = rng.matrix(3);
    CHECK(testing::max_abs_diff(matrix_from_json(matrix_to_json(m)), m) == 0.0);
    const Complex z(1.25, -3.5);
    CHECK(complex_from_json(complex_to_json(z)) == z);

    const Ellipse e = canonicalize(Ellipse{Complex(1, 2), 3.0, 1.0, 0.5});
    const Ellipse e2 = ellipse_from_json(ellipse_to_json(e));
    CHECK(e2.center == e.center);
    CHECK(e2.axis_u == e.axis_u);
    CHECK(e2.rotation == e.rotation);

    const Polygon2D poly = ellipse_polygon(e, 7);
    CHECK(polygon_from_json(polygon_to_json(poly)).vertices == poly.vertices);
    const SupportProfile prof = ellipse_support_profile(e, 9);
    const SupportProfile prof2 = profile_from_json(profile_to_json(prof));
    CHECK(prof2.angles == prof.angles);
    CHECK(prof2.values == prof.values);

    const ComparisonReport rep{0.1, 0.2, 33};
    const ComparisonReport rep2 = report_from_json(report_to_json(rep));
    CHECK(rep2.hausdorff == 0.1);
    CHECK(rep2.n_points == 33);

    const RankOneRowForm f = q_form(3, 0.6);
    const RankOneRowForm f2 = row_form_from_json(row_form_to_json(f));
    CHECK(f2.row == f.row);
    CHECK(f2.tail_norm == f.tail_norm);

    const MatrixPair p{m, rng.matrix(3)};
    const MatrixPair p2 = pair_from_json(pair_to_json(p));
    CHECK(testing::max_abs_diff(p2.c, p.c) == 0.0);

    const Nr3EllipseArtifact n3{e, {37.0, 13.0, 0.0}, {6.0, 2.0, 0.0}, {3.0, 1.0, 1.5}};
    const Nr3EllipseArtifact n3b = nr3_ellipse_from_json(nr3_ellipse_to_json(n3));
    CHECK(n3b.principal.lambda1 == 37.0);
    CHECK(n3b.block13.angle == 1.5);

    const InvertArtifact inv{z, {0.6, Complex(0.0, 0.8)}, z, 0.5, 0.3, Complex(0.0, 1.0)};
    const InvertArtifact inv2 = invert_from_json(invert_to_json(inv));
    CHECK(inv2.h == inv.h);
    CHECK(inv2.theta1 == 0.3);

    const MemberArtifact mem{z, true};
    CHECK(member_from_json(member_to_json(mem)).member);

    const ReductionArtifact red{m, m, 1e-15, 2e-16};
    CHECK(reduction_from_json(reduction_to_json(red)).unitarity_residual == 2e-16);

    const RankOneArtifact r1{f, prof, poly};
    const RankOneArtifact r1b = rank_one_from_json(rank_one_to_json(r1));
    CHECK(r1b.hull.vertices == poly.vertices);
    CHECK(r1b.profile.values == prof.values);

    const std::vector<VerifyCheck> checks{{"x", rep, 1.0, 2.0, true}};
    const auto checks2 = verify_from_json(verify_to_json(checks));
    REQUIRE(checks2.size() == 1);
    CHECK(checks2[0].name == "x");
    CHECK(checks2[0].pass);

    CHECK_THROWS(matrix_from_json(Json::parse("{\"n\": 2}")));
    CHECK_THROWS(ellipse_from_json(Json::parse("{\"center\": [0, 0]}")));
}
