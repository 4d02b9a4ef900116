#pragma once

#include "fieldscope/geometry.hpp"
#include "fieldscope/linalg.hpp"

#include <cstddef>

namespace fieldscope {

/// Boundary e^{i angle}(major cos t + i minor sin t) of a 2x2 block's range.
struct SubEllipseAxes {
    double major = 0.0;
    double minor = 0.0;
    double angle = 0.0;
};

/// Eigen-data of M = R(alpha) diag(A^2, B^2) R(alpha)^T + R(beta) diag(C^2, D^2) R(beta)^T,
/// where (A, B, alpha), (C, D, beta) describe the 2x2 block ranges. The range
/// boundary is e^{i gamma}(sqrt(lambda1) cos t + i sqrt(lambda2) sin t).
struct PrincipalForm {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double gamma = 0.0;
};

struct Nr3EllipseDetail {
    SubEllipseAxes block12;  // from [[0, a12], [a21, 0]]
    SubEllipseAxes block13;  // from [[0, a13], [a31, 0]]
    PrincipalForm principal;
    Ellipse ellipse;
};

struct ZeroDiagonalReduction {
    ComplexMatrix q;  // unitary
    ComplexMatrix b;  // q* (A - tr(A)/3 I) q, zero diagonal
};

/**
 * Unitary q with a zero diagonal in q* (A - tr(A)/3 I) q, built from a chain
 * of 2x2 inverse numerical-range solves on compressions. `tol` (relative to
 * 1 + ||A||_HS) decides when a diagonal entry already counts as zero and
 * when the diagonal is collinear.
 */
ZeroDiagonalReduction zero_diagonal_reduce_3x3(const ComplexMatrix& a, double tol = 1e-12);

/// <A h, h> for h = (c1, e^{i psi2} s1 c2, e^{i psi3} s1 s2), written as a sum of
/// Joukowsky terms. `a` must have a zero diagonal (within 1e-9 relative).
Complex nr3_point(const ComplexMatrix& a, double theta1, double theta2, double psi2, double psi3);

/// Sampling densities: theta1, theta2 on [0, pi/2] inclusive, psi2, psi3 on [0, 2 pi).
struct Nr3Grid {
    std::size_t theta1 = 32;
    std::size_t theta2 = 32;
    std::size_t psi2 = 64;
    std::size_t psi3 = 64;

    [[nodiscard]] std::size_t total() const noexcept { return theta1 * theta2 * psi2 * psi3; }
};

/// All grid points, ordered theta1-major, psi3 fastest.
PointCloud nr3_sample(const ComplexMatrix& a, const Nr3Grid& grid = {});

/// Convex hull of nr3_sample without materialising the whole cloud.
Polygon2D nr3_sample_hull(const ComplexMatrix& a, const Nr3Grid& grid = {});

/// Closed form for zero-diagonal A with a23 = a32 = 0 (within tol relative).
Nr3EllipseDetail nr3_ellipse_detail(const ComplexMatrix& a, double tol = 1e-9);
Ellipse nr3_ellipse_zero23(const ComplexMatrix& a, double tol = 1e-9);

/// Support function of W(A) for the a23 = a32 = 0 family: the Euclidean norm
/// of the two block range supports.
double nr3_support_from_blocks(const Nr3EllipseDetail& detail, double phi);

} // namespace fieldscope
