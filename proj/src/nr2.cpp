#include "fieldscope/nr2.hpp"

#include "fieldscope/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fieldscope {

namespace {

constexpr double kPi = std::numbers::pi;

void require_2x2(const ComplexMatrix& a, const char* op) {
    if (a.size() != 2) {
        throw DimensionError(std::string(op) + ": matrix must be 2x2");
    }
}

bool already_hot(const ComplexMatrix& a0) {
    const Complex x = a0(0, 1), y = a0(1, 0);
    return a0(0, 0) == Complex(0.0) && a0(1, 1) == Complex(0.0) && x.imag() == 0.0 && y.imag() == 0.0 &&
           x.real() >= y.real() && y.real() >= 0.0;
}

} // namespace

CenteredForm center_and_rotate(const ComplexMatrix& a) {
    require_2x2(a, "center_and_rotate");
    const Complex center = 0.5 * trace(a);
    const ComplexMatrix centred = shift(a, -center);
    const double theta = 0.5 * (kPi - principal_arg(det(centred)));
    return {mat_scale(std::polar(1.0, theta), centred), theta, center};
}

HotForm2 hot_form_reduce(const ComplexMatrix& a0, double tol) {
    require_2x2(a0, "hot_form_reduce");
    const double scale = 1.0 + hs_norm(a0);
    const Complex d = det(a0);
    if (std::abs(trace(a0)) > tol * scale) {
        throw PreconditionError("hot_form_reduce: matrix must be traceless");
    }
    if (std::abs(d.imag()) > tol * scale * scale || d.real() > tol * scale * scale) {
        throw PreconditionError("hot_form_reduce: determinant must be real and nonpositive");
    }

    HotForm2 hot;
    if (already_hot(a0)) {
        hot.b = a0(0, 1).real();
        hot.c = a0(1, 0).real();
        hot.witness = ComplexMatrix::identity(2);
        return hot;
    }

    // (1) Triangularise: U* A0 U = [[l, y], [0, -l]].
    const Schur2 schur = schur_2x2(a0);
    const Complex lambda = schur.t(0, 0);
    const Complex y = schur.t(0, 1);
    const double ml = std::abs(lambda);
    const double my = std::abs(y);

    // (2) Unit v = (cos t, e^{i psi} sin t) with <T v, v> = 0.
    const double t = 0.5 * std::atan2(2.0 * ml, my);
    const Complex phase = (ml > 0.0 && my > 0.0) ? -lambda * std::conj(y) / (ml * my) : Complex(1.0);
    const Complex v0 = std::cos(t);
    const Complex v1 = phase * std::sin(t);

    // (3) Basis {v, v_perp} gives a zero diagonal.
    ComplexMatrix basis{{v0, -std::conj(v1)}, {v1, std::conj(v0)}};
    ComplexMatrix w = mat_mul(schur.u, basis);
    ComplexMatrix m = mat_mul(mat_mul(adjoint(w), a0), w);

    // (4) Diagonal phase makes both off-diagonal entries real and nonnegative.
    const Complex x = m(0, 1);
    const double phi = std::abs(x) > 0.0 ? -principal_arg(x) : principal_arg(m(1, 0));
    const ComplexMatrix diag{{1.0, 0.0}, {0.0, std::polar(1.0, phi)}};
    w = mat_mul(w, diag);
    m = mat_mul(mat_mul(adjoint(w), a0), w);

    // (5) Order so that b >= c.
    if (std::abs(m(0, 1)) < std::abs(m(1, 0))) {
        const ComplexMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
        w = mat_mul(w, swap);
    }

    // Fix the global phase so the witness is deterministic (identity for hot inputs).
    const Complex pivot = std::abs(w(0, 0)) > 1e-8 ? w(0, 0) : w(1, 0);
    w = mat_scale(std::polar(1.0, -principal_arg(pivot)), w);

    m = mat_mul(mat_mul(adjoint(w), a0), w);
    hot.b = std::abs(m(0, 1));
    hot.c = std::abs(m(1, 0));
    hot.witness = std::move(w);
    return hot;
}

HotForm2 hot_form_of(const ComplexMatrix& a) {
    const CenteredForm cf = center_and_rotate(a);
    HotForm2 hot = hot_form_reduce(cf.a0);
    hot.theta = cf.theta;
    hot.center = cf.center;
    return hot;
}

Ellipse numerical_range_2x2(const ComplexMatrix& a) {
    const HotForm2 hot = hot_form_of(a);
    return Ellipse{hot.center, 0.5 * (hot.b + hot.c), 0.5 * (hot.b - hot.c), wrap_pi(-hot.theta)};
}

std::pair<double, double> radical_semi_axes_2x2(const ComplexMatrix& a) {
    const CenteredForm cf = center_and_rotate(a);
    const double n2 = hs_norm_sq(cf.a0);
    const double d = det(cf.a0).real();
    return {std::sqrt(std::max(0.0, 0.25 * n2 - 0.5 * d)), std::sqrt(std::max(0.0, 0.25 * n2 + 0.5 * d))};
}

bool membership_specht(const ComplexMatrix& a, Complex p, double tol) {
    require_2x2(a, "membership_specht");
    const Complex tr = trace(a);
    const double lhs = 2.0 * std::abs(p * (tr - p) - det(a));
    const double rhs = hs_norm_sq(a) - std::norm(p) - std::norm(tr - p);
    return lhs <= rhs + tol;
}

namespace {

struct ScaledPoint {
    HotForm2 hot;
    Complex p0;  // point in the hot frame
    double r = 0.0;
};

ScaledPoint scale_in_hot_frame(const ComplexMatrix& a, Complex p, double tol) {
    require_2x2(a, "concentric_scale");
    ScaledPoint sp{hot_form_of(a), Complex(), 0.0};
    sp.p0 = std::polar(1.0, sp.hot.theta) * (p - sp.hot.center);
    const double band = tol * (1.0 + hs_norm(a));
    const double u = 0.5 * (sp.hot.b + sp.hot.c);
    const double v = 0.5 * (sp.hot.b - sp.hot.c);

    if (u <= 1e-14 * (1.0 + hs_norm(a))) {
        if (std::abs(sp.p0) > band) {
            throw OutsideRangeError("point is not the single point of the numerical range");
        }
        sp.r = 0.0;
    } else if (v <= 1e-12 * u) {
        if (std::abs(sp.p0.imag()) > band) {
            throw OutsideRangeError("point is off the segment numerical range");
        }
        sp.r = std::abs(sp.p0.real()) / u;
    } else {
        sp.r = std::hypot(sp.p0.real() / u, sp.p0.imag() / v);
    }
    return sp;
}

} // namespace

double concentric_scale(const ComplexMatrix& a, Complex p, double tol) { return scale_in_hot_frame(a, p, tol).r; }

InverseSolution inverse_numerical_range_detailed(const ComplexMatrix& a, Complex p, double tol) {
    ScaledPoint sp = scale_in_hot_frame(a, p, tol);
    if (sp.r > 1.0 + tol) {
        throw OutsideRangeError("point lies outside the numerical range (concentric scale " + std::to_string(sp.r) +
                                ")");
    }
    const double r = std::min(sp.r, 1.0);
    const ComplexMatrix& w = sp.hot.witness;

    if (r == 0.0) {
        std::vector<Complex> h{w(0, 0), w(1, 0)};
        return {UnitVector::normalized(std::move(h)), 0.0, 0.0, Complex(1.0), std::move(sp.hot)};
    }

    // (r/2)(b z + c / z) = p0 on |z| = 1  <=>  b z^2 - (2 p0 / r) z + c = 0.
    const double b = sp.hot.b;
    const double c = sp.hot.c;
    const Complex lin = 2.0 * sp.p0 / r;
    const Complex disc = std::sqrt(lin * lin - 4.0 * b * c);
    const Complex q = 0.5 * (std::abs(lin + disc) >= std::abs(lin - disc) ? lin + disc : lin - disc);
    Complex z1 = q / b;
    Complex z2 = q != Complex(0.0) ? Complex(c) / q : z1;
    Complex z = std::abs(std::abs(z1) - 1.0) <= std::abs(std::abs(z2) - 1.0) ? z1 : z2;
    z = std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0);

    const double theta1 = 0.5 * std::asin(r);
    const Complex h0 = std::cos(theta1);
    const Complex h1 = z * std::sin(theta1);
    std::vector<Complex> h{w(0, 0) * h0 + w(0, 1) * h1, w(1, 0) * h0 + w(1, 1) * h1};
    return {UnitVector::normalized(std::move(h)), r, theta1, z, std::move(sp.hot)};
}

UnitVector inverse_numerical_range(const ComplexMatrix& a, Complex p, double tol) {
    return inverse_numerical_range_detailed(a, p, tol).h;
}

Complex direct_sum_obstruction(const ComplexMatrix& a) {
    if (a.size() != 3) {
        throw DimensionError("direct_sum_obstruction: matrix must be 3x3");
    }
    const ComplexMatrix as = adjoint(a);
    return det(mat_sub(mat_mul(as, a), mat_mul(a, as)));
}

} // namespace fieldscope
