#pragma once

#include "fieldscope/geometry.hpp"
#include "fieldscope/linalg.hpp"
#include "fieldscope/oracle.hpp"

#include <cstddef>
#include <utility>

namespace fieldscope {

struct CnrEllipseParams {
    double k1 = 0.0;
    double k2 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    Complex center;
};

/// Hot forms of A and C: K1 = b1 b2 + c1 c2, K2 = b1 b2 - c1 c2.
CnrEllipseParams cnr_2x2_params(const ComplexMatrix& a, const ComplexMatrix& c);

/// W_C(A) for 2x2 A, C: centre tr(A) tr(C) / 2, semi-axes (K1, K2), rotation -(theta1 + theta2).
Ellipse cnr_2x2(const ComplexMatrix& a, const ComplexMatrix& c);

/**
 * (K1^2, K2^2) from the unitarily invariant radical expression
 *   ||A0||^2 ||C0||^2 + sqrt(||A0||^4 - 4 det(A0)^2) sqrt(||C0||^4 - 4 det(C0)^2) +- 4 det(A0) det(C0).
 * Evaluates to 2 (b1 b2 +- c1 c2)^2, twice the squared semi-axes; kept for cross-checks.
 */
std::pair<double, double> cnr_2x2_radical_squares(const ComplexMatrix& a, const ComplexMatrix& c);

/// First row of a rank-1 matrix after a unitary change of basis that zeroes every other row.
struct RankOneRowForm {
    std::size_t n = 0;
    Complex c11;
    double tail_norm = 0.0;
    std::vector<Complex> row;
};

/// Throws NotRankOneError when sigma2 > tol * sigma1 or C = 0.
RankOneRowForm rank1_row_form(const ComplexMatrix& c, double tol = 1e-10);

/// Row form (q, sqrt(1 - q^2), 0, ...) in dimension n; q must lie in [0, 1].
RankOneRowForm q_form(std::size_t n, double q);

struct Disk {
    Complex center;
    double radius = 0.0;
};

/// Disk(c11 <A h, h>, tail_norm sqrt(||A h||^2 - |<A h, h>|^2)).
Disk cnr_rank1_disk(const ComplexMatrix& a, const RankOneRowForm& form, const UnitVector& h);

/**
 * Support of W_C(A) for rank-1 C in direction phi: the best disk support over
 * n_samples sampled unit vectors, each new running maximum then polished by a
 * coordinate pattern search. Nondecreasing in n_samples for a fixed seed.
 */
double cnr_rank1_support(const ComplexMatrix& a, const RankOneRowForm& form, double phi,
                         const SeededSampler& sampler, std::size_t n_samples);

/// cnr_rank1_support at uniform angles, sharing the samples across angles.
SupportProfile cnr_rank1_support_profile(const ComplexMatrix& a, const RankOneRowForm& form, std::size_t n_angles,
                                         const SeededSampler& sampler, std::size_t n_samples);

/// n_circle boundary points of each of n_h sampled disks.
PointCloud cnr_rank1_sample(const ComplexMatrix& a, const RankOneRowForm& form, const SeededSampler& sampler,
                            std::size_t n_h, std::size_t n_circle);

Disk q_numerical_range_disk(const ComplexMatrix& a, double q, const UnitVector& h);
double q_numerical_range_support(const ComplexMatrix& a, double q, double phi, const SeededSampler& sampler,
                                 std::size_t n_samples);
SupportProfile q_numerical_range_profile(const ComplexMatrix& a, double q, std::size_t n_angles,
                                         const SeededSampler& sampler, std::size_t n_samples);
PointCloud q_numerical_range_sample(const ComplexMatrix& a, double q, const SeededSampler& sampler, std::size_t n_h,
                                    std::size_t n_circle);

} // namespace fieldscope
