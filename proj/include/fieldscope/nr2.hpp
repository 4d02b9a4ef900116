#pragma once

#include "fieldscope/geometry.hpp"
#include "fieldscope/linalg.hpp"

namespace fieldscope {

/// A0 = e^{i theta} (A - center I) with center = tr(A)/2 and det(A0) real, <= 0.
struct CenteredForm {
    ComplexMatrix a0;
    double theta = 0.0;
    Complex center;
};

/**
 * Reduced shape of a traceless 2x2 matrix with nonpositive real determinant:
 * witness* A0 witness = [[0, b], [c, 0]] with b >= c >= 0.
 *
 * theta and center are carried over from the CenteredForm when produced by
 * hot_form_of(); hot_form_reduce() alone leaves them at 0.
 */
struct HotForm2 {
    double b = 0.0;
    double c = 0.0;
    double theta = 0.0;
    Complex center;
    ComplexMatrix witness;
};

/// theta = (pi - arg det(A - tr(A)/2)) / 2, with arg(0) := 0.
CenteredForm center_and_rotate(const ComplexMatrix& a);

/// Constructive unitary reduction to the hot form; throws PreconditionError
/// unless A0 is traceless with real nonpositive determinant (relative tol).
HotForm2 hot_form_reduce(const ComplexMatrix& a0, double tol = kDefaultTol);

/// center_and_rotate followed by hot_form_reduce.
HotForm2 hot_form_of(const ComplexMatrix& a);

/// W(A) of a 2x2 matrix: centre tr(A)/2, semi-axes (b+c)/2, (b-c)/2, rotation -theta.
Ellipse numerical_range_2x2(const ComplexMatrix& a);

/// Semi-axes from the unitarily invariant closed form
/// sqrt(||A0||^2/4 -+ det(A0)/2); agrees with numerical_range_2x2.
std::pair<double, double> radical_semi_axes_2x2(const ComplexMatrix& a);

/// p in W(A) iff 2|p(tr A - p) - det A| <= ||A||^2 - |p|^2 - |tr A - p|^2 (+ tol).
bool membership_specht(const ComplexMatrix& a, Complex p, double tol = kDefaultTol);

/**
 * r >= 0 such that p lies on the boundary of the concentric copy r W(A)
 * (r <= 1 iff p in W(A)). For a segment range the imaginary offset must be
 * within tol * (1 + ||A||_HS) or OutsideRangeError is thrown.
 */
double concentric_scale(const ComplexMatrix& a, Complex p, double tol = kDefaultTol);

/// The pieces of a constructive inverse solve.
struct InverseSolution {
    UnitVector h;
    double r = 0.0;       // concentric scale
    double theta1 = 0.0;  // sin(2 theta1) = r
    Complex z;            // unimodular phase e^{i psi}
    HotForm2 hot;
};

InverseSolution inverse_numerical_range_detailed(const ComplexMatrix& a, Complex p, double tol = kDefaultTol);

/// Unit h with <A h, h> = p. Throws OutsideRangeError when r > 1 + tol.
UnitVector inverse_numerical_range(const ComplexMatrix& a, Complex p, double tol = kDefaultTol);

/// det(A* A - A A*) of a 3x3 matrix. Nonzero means A is not unitarily
/// equivalent to a direct sum of a 2x2 block and a scalar.
Complex direct_sum_obstruction(const ComplexMatrix& a);

} // namespace fieldscope
