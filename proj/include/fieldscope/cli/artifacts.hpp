#pragma once

#include "fieldscope/cnr.hpp"
#include "fieldscope/geometry.hpp"
#include "fieldscope/linalg.hpp"
#include "fieldscope/nr3.hpp"
#include "fieldscope/oracle.hpp"

#include <json.hpp>

#include <string>
#include <vector>

// JSON forms of everything the command line reads or writes. Complex numbers
// are [re, im] pairs; matrices are {"n": n, "entries": rows of pairs}.
namespace fieldscope::cli {

using Json = nlohmann::json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// {"center": [re, im], "semi_axes": [major, minor], "rotation_rad": r}, canonical form.
Json ellipse_to_json(const Ellipse& e);
Ellipse ellipse_from_json(const Json& j);

Json polygon_to_json(const Polygon2D& p);
Polygon2D polygon_from_json(const Json& j);

Json profile_to_json(const SupportProfile& p);
SupportProfile profile_from_json(const Json& j);

Json report_to_json(const ComparisonReport& r);
ComparisonReport report_from_json(const Json& j);

Json row_form_to_json(const RankOneRowForm& f);
RankOneRowForm row_form_from_json(const Json& j);

/// Input of the commands that need two matrices: {"a": matrix, "c": matrix}.
struct MatrixPair {
    ComplexMatrix a;
    ComplexMatrix c;
};

Json pair_to_json(const MatrixPair& p);
MatrixPair pair_from_json(const Json& j);

struct Nr3EllipseArtifact {
    Ellipse ellipse;
    PrincipalForm principal;
    SubEllipseAxes block12;
    SubEllipseAxes block13;
};

Json nr3_ellipse_to_json(const Nr3EllipseArtifact& a);
Nr3EllipseArtifact nr3_ellipse_from_json(const Json& j);

struct InvertArtifact {
    Complex point;
    std::vector<Complex> h;
    Complex value;  // <A h, h>
    double r = 0.0;
    double theta1 = 0.0;
    Complex z;
};

Json invert_to_json(const InvertArtifact& a);
InvertArtifact invert_from_json(const Json& j);

struct MemberArtifact {
    Complex point;
    bool member = false;
};

Json member_to_json(const MemberArtifact& a);
MemberArtifact member_from_json(const Json& j);

struct ReductionArtifact {
    ComplexMatrix q;
    ComplexMatrix b;
    double diagonal_residual = 0.0;
    double unitarity_residual = 0.0;
};

Json reduction_to_json(const ReductionArtifact& a);
ReductionArtifact reduction_from_json(const Json& j);

struct RankOneArtifact {
    RankOneRowForm form;
    SupportProfile profile;
    Polygon2D hull;
};

Json rank_one_to_json(const RankOneArtifact& a);
RankOneArtifact rank_one_from_json(const Json& j);

struct VerifyCheck {
    std::string name;
    ComparisonReport report;
    double violation_limit = 0.0;
    double hausdorff_limit = 0.0;
    bool pass = false;
};

Json verify_to_json(const std::vector<VerifyCheck>& checks);
std::vector<VerifyCheck> verify_from_json(const Json& j);

/// Reads a whole file ("-" means standard input) and parses it as JSON.
Json read_json_file(const std::string& path);

} // namespace fieldscope::cli
