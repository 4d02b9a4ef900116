#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fieldscope {

using Complex = std::complex<double>;

/// Default comparison tolerance, applied relative to 1 + ||A||_HS.
inline constexpr double kDefaultTol = 1e-10;

/**
 * Dense square complex matrix, row-major.
 *
 * Construction rejects non-square shapes and non-finite entries. Element
 * access through operator() is unchecked.
 */
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n);
    ComplexMatrix(std::size_t n, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n); }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * n_ + j]; }

    [[nodiscard]] std::span<const Complex> entries() const noexcept { return a_; }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Complex> a_;
};

/// A vector of Euclidean norm 1 (within 1e-12).
class UnitVector {
public:
    /// Throws PreconditionError if the norm is not within 1e-12 of 1.
    explicit UnitVector(std::vector<Complex> components);

    /// Scales `v` to unit norm; throws PreconditionError for the zero vector.
    static UnitVector normalized(std::vector<Complex> v);
    static UnitVector basis(std::size_t n, std::size_t k);

    [[nodiscard]] std::size_t size() const noexcept { return x_.size(); }
    [[nodiscard]] const std::vector<Complex>& components() const noexcept { return x_; }
    const Complex& operator[](std::size_t i) const noexcept { return x_[i]; }

private:
    std::vector<Complex> x_;
};

struct TraceInvariants2 {
    Complex tr_a;
    Complex tr_a2;
    double tr_aastar = 0.0;
};

/// The seven trace words whose agreement characterises 3x3 unitary equivalence.
struct TraceInvariants3 {
    Complex tr_a;                  // tr A
    Complex tr_a2;                 // tr A^2
    double tr_aastar = 0.0;        // tr AA*
    Complex tr_a3;                 // tr A^3
    Complex tr_a2astar;            // tr A^2 A*
    double tr_a2astar2 = 0.0;      // tr A^2 (A*)^2
    Complex tr_a2astar2aastar;     // tr A^2 (A*)^2 A A*

    /// Values in the order listed above, paired with their polynomial degree.
    [[nodiscard]] std::array<std::pair<Complex, int>, 7> words() const;
};

struct Schur2 {
    ComplexMatrix u; // unitary
    ComplexMatrix t; // upper triangular, eigenvalues on the diagonal
};

Complex trace(const ComplexMatrix& m);
Complex det(const ComplexMatrix& m);
double hs_norm_sq(const ComplexMatrix& m);
double hs_norm(const ComplexMatrix& m);

ComplexMatrix adjoint(const ComplexMatrix& m);
ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mat_scale(Complex c, const ComplexMatrix& m);
ComplexMatrix mat_add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix mat_sub(const ComplexMatrix& a, const ComplexMatrix& b);
/// m + c I
ComplexMatrix shift(const ComplexMatrix& m, Complex c);

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_mul(a, b); }
inline ComplexMatrix operator*(Complex c, const ComplexMatrix& m) { return mat_scale(c, m); }
inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_add(a, b); }
inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) { return mat_sub(a, b); }

std::vector<Complex> mat_vec(const ComplexMatrix& m, std::span<const Complex> x);
/// <x, y> = sum x_i conj(y_i), linear in the first argument.
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double norm_sq(std::span<const Complex> x);
/// <A h, h>
Complex quadratic_form(const ComplexMatrix& a, std::span<const Complex> h);

/// True iff ||U* U - I||_HS <= tol.
bool is_unitary(const ComplexMatrix& u, double tol);

/// Unitary triangularisation U* M U = T of a 2x2 matrix.
Schur2 schur_2x2(const ComplexMatrix& m);

TraceInvariants2 trace_invariants_2(const ComplexMatrix& a);
TraceInvariants3 trace_invariants_3(const ComplexMatrix& a);

/// Specht test for 2x2 matrices. A difference in a degree-d word is accepted
/// when it is at most tol * (1 + max ||.||_HS)^d.
bool specht_equivalent_2x2(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kDefaultTol);
bool specht_equivalent_3x3(const ComplexMatrix& a, const ComplexMatrix& b, double tol = kDefaultTol);

/// Principal argument in (-pi, pi], with arg(0) := 0.
double principal_arg(Complex z);

/// Maps an angle into [0, pi).
double wrap_pi(double angle);

} // namespace fieldscope
