#include "fieldscope/linalg.hpp"

#include "fieldscope/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fieldscope {

namespace {

void require_finite(std::span<const Complex> values, const char* what) {
    for (const auto& z : values) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw PreconditionError(std::string(what) + ": entries must be finite");
        }
    }
}

void require_same_size(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.size() != b.size()) {
        throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), a_(n * n) {}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<Complex> entries) : n_(n), a_(std::move(entries)) {
    if (a_.size() != n_ * n_) {
        throw DimensionError("ComplexMatrix: expected " + std::to_string(n_ * n_) + " entries, got " +
                             std::to_string(a_.size()));
    }
    require_finite(a_, "ComplexMatrix");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : n_(rows.size()) {
    a_.reserve(n_ * n_);
    for (const auto& row : rows) {
        if (row.size() != n_) {
            throw DimensionError("ComplexMatrix: matrix must be square");
        }
        a_.insert(a_.end(), row.begin(), row.end());
    }
    require_finite(a_, "ComplexMatrix");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

UnitVector::UnitVector(std::vector<Complex> components) : x_(std::move(components)) {
    require_finite(x_, "UnitVector");
    if (x_.empty() || std::abs(std::sqrt(norm_sq(x_)) - 1.0) > 1e-12) {
        throw PreconditionError("UnitVector: norm must be within 1e-12 of 1");
    }
}

UnitVector UnitVector::normalized(std::vector<Complex> v) {
    const double nrm = std::sqrt(norm_sq(v));
    if (!(nrm > 0.0) || !std::isfinite(nrm)) {
        throw PreconditionError("UnitVector: cannot normalise a zero or non-finite vector");
    }
    for (auto& z : v) {
        z /= nrm;
    }
    return UnitVector(std::move(v));
}

UnitVector UnitVector::basis(std::size_t n, std::size_t k) {
    std::vector<Complex> v(n);
    v.at(k) = 1.0;
    return UnitVector(std::move(v));
}

std::array<std::pair<Complex, int>, 7> TraceInvariants3::words() const {
    return {{{tr_a, 1},
             {tr_a2, 2},
             {Complex(tr_aastar), 2},
             {tr_a3, 3},
             {tr_a2astar, 3},
             {Complex(tr_a2astar2), 4},
             {tr_a2astar2aastar, 6}}};
}

Complex trace(const ComplexMatrix& m) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        s += m(i, i);
    }
    return s;
}

Complex det(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0) {
        return 1.0;
    }
    if (n == 1) {
        return m(0, 0);
    }
    if (n == 2) {
        return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    }
    if (n == 3) {
        return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
               m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
               m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    }
    // Gaussian elimination with partial pivoting.
    ComplexMatrix lu = m;
    Complex result = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) {
                pivot = i;
            }
        }
        if (lu(pivot, k) == Complex(0.0)) {
            return 0.0;
        }
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(lu(k, j), lu(pivot, j));
            }
            result = -result;
        }
        result *= lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = lu(i, k) / lu(k, k);
            for (std::size_t j = k; j < n; ++j) {
                lu(i, j) -= f * lu(k, j);
            }
        }
    }
    return result;
}

double hs_norm_sq(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& z : m.entries()) {
        s += std::norm(z);
    }
    return s;
}

double hs_norm(const ComplexMatrix& m) { return std::sqrt(hs_norm_sq(m)); }

ComplexMatrix adjoint(const ComplexMatrix& m) {
    const std::size_t n = m.size();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            r(j, i) = std::conj(m(i, j));
        }
    }
    return r;
}

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_size(a, b, "mat_mul");
    const std::size_t n = a.size();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                r(i, j) += aik * b(k, j);
            }
        }
    }
    return r;
}

ComplexMatrix mat_scale(Complex c, const ComplexMatrix& m) {
    ComplexMatrix r = m;
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            r(i, j) *= c;
        }
    }
    return r;
}

ComplexMatrix mat_add(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_size(a, b, "mat_add");
    ComplexMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            r(i, j) += b(i, j);
        }
    }
    return r;
}

ComplexMatrix mat_sub(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_size(a, b, "mat_sub");
    ComplexMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            r(i, j) -= b(i, j);
        }
    }
    return r;
}

ComplexMatrix shift(const ComplexMatrix& m, Complex c) {
    ComplexMatrix r = m;
    for (std::size_t i = 0; i < m.size(); ++i) {
        r(i, i) += c;
    }
    return r;
}

std::vector<Complex> mat_vec(const ComplexMatrix& m, std::span<const Complex> x) {
    if (x.size() != m.size()) {
        throw DimensionError("mat_vec: dimension mismatch");
    }
    std::vector<Complex> y(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < m.size(); ++j) {
            s += m(i, j) * x[j];
        }
        y[i] = s;
    }
    return y;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) {
        throw DimensionError("inner: dimension mismatch");
    }
    Complex s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i] * std::conj(y[i]);
    }
    return s;
}

double norm_sq(std::span<const Complex> x) {
    double s = 0.0;
    for (const auto& z : x) {
        s += std::norm(z);
    }
    return s;
}

Complex quadratic_form(const ComplexMatrix& a, std::span<const Complex> h) {
    const auto ah = mat_vec(a, h);
    return inner(ah, h);
}

bool is_unitary(const ComplexMatrix& u, double tol) {
    const ComplexMatrix r = mat_sub(mat_mul(adjoint(u), u), ComplexMatrix::identity(u.size()));
    return hs_norm(r) <= tol;
}

Schur2 schur_2x2(const ComplexMatrix& m) {
    if (m.size() != 2) {
        throw DimensionError("schur_2x2: matrix must be 2x2");
    }
    const Complex a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    if (c == Complex(0.0)) {
        return {ComplexMatrix::identity(2), m};
    }

    // Roots of l^2 - tr l + det; take the one of larger modulus to avoid cancellation.
    const Complex half_tr = 0.5 * (a + d);
    const Complex disc = std::sqrt(half_tr * half_tr - (a * d - b * c));
    const Complex r1 = half_tr + disc;
    const Complex r2 = half_tr - disc;
    const Complex lambda = std::abs(r1) >= std::abs(r2) ? r1 : r2;

    // Null vector of (M - lambda I) from its better-conditioned row.
    const Complex p0 = a - lambda, q0 = b;
    const Complex p1 = c, q1 = d - lambda;
    Complex x0, x1;
    if (std::norm(p0) + std::norm(q0) >= std::norm(p1) + std::norm(q1)) {
        x0 = q0;
        x1 = -p0;
    } else {
        x0 = q1;
        x1 = -p1;
    }
    const double nx = std::sqrt(std::norm(x0) + std::norm(x1));
    if (!(nx > 0.0)) {
        return {ComplexMatrix::identity(2), m};
    }
    x0 /= nx;
    x1 /= nx;

    ComplexMatrix u{{x0, -std::conj(x1)}, {x1, std::conj(x0)}};
    ComplexMatrix t = mat_mul(mat_mul(adjoint(u), m), u);
    t(1, 0) = 0.0;
    return {std::move(u), std::move(t)};
}

TraceInvariants2 trace_invariants_2(const ComplexMatrix& a) {
    if (a.size() != 2) {
        throw DimensionError("trace_invariants_2: matrix must be 2x2");
    }
    return {trace(a), trace(mat_mul(a, a)), hs_norm_sq(a)};
}

TraceInvariants3 trace_invariants_3(const ComplexMatrix& a) {
    if (a.size() != 3) {
        throw DimensionError("trace_invariants_3: matrix must be 3x3");
    }
    const ComplexMatrix as = adjoint(a);
    const ComplexMatrix a2 = mat_mul(a, a);
    const ComplexMatrix as2 = mat_mul(as, as);
    const ComplexMatrix a2as2 = mat_mul(a2, as2);
    TraceInvariants3 inv;
    inv.tr_a = trace(a);
    inv.tr_a2 = trace(a2);
    inv.tr_aastar = hs_norm_sq(a);
    inv.tr_a3 = trace(mat_mul(a2, a));
    inv.tr_a2astar = trace(mat_mul(a2, as));
    inv.tr_a2astar2 = trace(a2as2).real();
    inv.tr_a2astar2aastar = trace(mat_mul(a2as2, mat_mul(a, as)));
    return inv;
}

namespace {

bool word_close(Complex x, Complex y, int degree, double scale, double tol) {
    return std::abs(x - y) <= tol * std::pow(scale, degree);
}

} // namespace

bool specht_equivalent_2x2(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    const auto ia = trace_invariants_2(a);
    const auto ib = trace_invariants_2(b);
    const double scale = 1.0 + std::max(hs_norm(a), hs_norm(b));
    return word_close(ia.tr_a, ib.tr_a, 1, scale, tol) && word_close(ia.tr_a2, ib.tr_a2, 2, scale, tol) &&
           word_close(ia.tr_aastar, ib.tr_aastar, 2, scale, tol);
}

bool specht_equivalent_3x3(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    const auto wa = trace_invariants_3(a).words();
    const auto wb = trace_invariants_3(b).words();
    const double scale = 1.0 + std::max(hs_norm(a), hs_norm(b));
    for (std::size_t k = 0; k < wa.size(); ++k) {
        if (!word_close(wa[k].first, wb[k].first, wa[k].second, scale, tol)) {
            return false;
        }
    }
    return true;
}

double principal_arg(Complex z) {
    if (z.real() == 0.0 && z.imag() == 0.0) {
        return 0.0;
    }
    const double t = std::atan2(z.imag(), z.real());
    return t <= -std::numbers::pi ? std::numbers::pi : t;
}

double wrap_pi(double angle) {
    constexpr double pi = std::numbers::pi;
    double r = std::fmod(angle, pi);
    if (r < 0.0) {
        r += pi;
    }
    if (r >= pi) {
        r -= pi;
    }
    return r + 0.0;  // no negative zero
}

} // namespace fieldscope
