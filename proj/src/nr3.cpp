#include "fieldscope/nr3.hpp"

#include "fieldscope/error.hpp"
#include "fieldscope/kernels.hpp"
#include "fieldscope/nr2.hpp"
#include "fieldscope/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace fieldscope {

namespace {

constexpr double kPi = std::numbers::pi;
using Vec3 = std::array<Complex, 3>;

void require_3x3(const ComplexMatrix& a, const char* op) {
    if (a.size() != 3) {
        throw DimensionError(std::string(op) + ": matrix must be 3x3");
    }
}

void require_zero_diagonal(const ComplexMatrix& a, double tol, const char* op) {
    const double band = tol * (1.0 + hs_norm(a));
    for (std::size_t i = 0; i < 3; ++i) {
        if (std::abs(a(i, i)) > band) {
            throw PreconditionError(std::string(op) + ": matrix must have a zero diagonal");
        }
    }
}

Vec3 apply(const ComplexMatrix& t, const Vec3& x) {
    Vec3 y{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            y[i] += t(i, j) * x[j];
        }
    }
    return y;
}

Complex dot(const Vec3& x, const Vec3& y) {  // <x, y>
    return x[0] * std::conj(y[0]) + x[1] * std::conj(y[1]) + x[2] * std::conj(y[2]);
}

Vec3 unit(std::size_t k) {
    Vec3 e{};
    e[k] = 1.0;
    return e;
}

// Compression of t onto span{f1, f2}: entries <t f_l, f_k>.
ComplexMatrix compress(const ComplexMatrix& t, const Vec3& f1, const Vec3& f2) {
    const Vec3 tf1 = apply(t, f1);
    const Vec3 tf2 = apply(t, f2);
    return ComplexMatrix{{dot(tf1, f1), dot(tf2, f1)}, {dot(tf1, f2), dot(tf2, f2)}};
}

// Unit x in C^2 with <B x, x> = target, preferring a basis vector when one already works.
std::array<Complex, 2> solve_2x2(const ComplexMatrix& b, Complex target, double band) {
    if (std::abs(b(0, 0) - target) <= band) {
        return {1.0, 0.0};
    }
    if (std::abs(b(1, 1) - target) <= band) {
        return {0.0, 1.0};
    }
    const UnitVector h = inverse_numerical_range(b, target, 1e-9);
    return {h[0], h[1]};
}

Vec3 combine(const std::array<Complex, 2>& x, const Vec3& f1, const Vec3& f2) {
    return {x[0] * f1[0] + x[1] * f2[0], x[0] * f1[1] + x[1] * f2[1], x[0] * f1[2] + x[1] * f2[2]};
}

// Unit v with <T v, v> = 0 for traceless T.
Vec3 isotropic_vector(const ComplexMatrix& t, double band, double tol, double scale) {
    const std::array<Complex, 3> alpha{t(0, 0), t(1, 1), t(2, 2)};

    std::size_t smallest = 0;
    for (std::size_t i = 1; i < 3; ++i) {
        if (std::abs(alpha[i]) < std::abs(alpha[smallest])) {
            smallest = i;
        }
    }
    if (std::abs(alpha[smallest]) <= band) {
        return unit(smallest);
    }

    // Barycentric coordinates of 0 in the triangle of diagonal entries.
    const Complex d2 = alpha[1] - alpha[0];
    const Complex d3 = alpha[2] - alpha[0];
    const double area2 = d2.real() * d3.imag() - d2.imag() * d3.real();
    if (std::abs(area2) <= tol * scale * scale) {
        // Collinear: 0 lies between the two extreme diagonal entries.
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = i + 1; j < 3; ++j) {
                if (std::abs(alpha[i] - alpha[j]) > std::abs(alpha[bi] - alpha[bj])) {
                    bi = i;
                    bj = j;
                }
            }
        }
        const Vec3 fi = unit(bi), fj = unit(bj);
        return combine(solve_2x2(compress(t, fi, fj), 0.0, band), fi, fj);
    }
    const double l2 = (-alpha[0].real() * d3.imag() + alpha[0].imag() * d3.real()) / area2;
    const double l3 = (-d2.real() * alpha[0].imag() + d2.imag() * alpha[0].real()) / area2;
    const double l1 = 1.0 - l2 - l3;

    // Ray from alpha1 through 0 meets edge [alpha2, alpha3] at m.
    const Complex m = (l2 * alpha[1] + l3 * alpha[2]) / (l2 + l3);
    const Vec3 e1 = unit(0), e2 = unit(1), e3 = unit(2);
    const Vec3 w = combine(solve_2x2(compress(t, e2, e3), m, 0.0), e2, e3);
    (void)l1;
    return combine(solve_2x2(compress(t, e1, w), 0.0, 0.0), e1, w);
}

// Columns [v, w1, w2] of a unitary, completing v by Gram-Schmidt on the
// standard basis (least aligned vectors first).
ComplexMatrix complete_basis(const Vec3& v) {
    std::array<std::size_t, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::abs(v[i]) < std::abs(v[j]) || (std::abs(v[i]) == std::abs(v[j]) && i < j);
    });
    std::array<Vec3, 3> cols{v, Vec3{}, Vec3{}};
    std::size_t filled = 1;
    for (std::size_t k : order) {
        if (filled == 3) {
            break;
        }
        Vec3 x = unit(k);
        for (std::size_t pass = 0; pass < 2; ++pass) {
            for (std::size_t c = 0; c < filled; ++c) {
                const Complex proj = dot(x, cols[c]);
                for (std::size_t i = 0; i < 3; ++i) {
                    x[i] -= proj * cols[c][i];
                }
            }
        }
        const double nrm = std::sqrt(std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]));
        if (nrm < 1e-6) {
            continue;
        }
        for (auto& xi : x) {
            xi /= nrm;
        }
        cols[filled++] = x;
    }
    ComplexMatrix q(3);
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < 3; ++i) {
            q(i, c) = cols[c][i];
        }
    }
    return q;
}

std::vector<double> closed_grid(std::size_t n, double hi) {
    std::vector<double> g(n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        g[j] = hi * static_cast<double>(j) / static_cast<double>(n - 1);
    }
    return g;
}

void require_grid(const Nr3Grid& grid) {
    if (grid.theta1 == 0 || grid.theta2 == 0 || grid.psi2 == 0 || grid.psi3 == 0) {
        throw PreconditionError("nr3_sample: every grid density must be at least 1");
    }
}

// Fills `out` (theta2 * psi2 * psi3 points) for one theta1 value.
class Nr3Sweep {
public:
    Nr3Sweep(const ComplexMatrix& a, const Nr3Grid& grid)
        : grid_(grid), theta1_(closed_grid(grid.theta1, 0.5 * kPi)), theta2_(closed_grid(grid.theta2, 0.5 * kPi)) {
        a12_ = a(0, 1);
        a21_ = a(1, 0);
        a13_ = a(0, 2);
        a31_ = a(2, 0);
        a23_ = a(1, 2);
        a32_ = a(2, 1);
        for (double psi : uniform_angles(grid.psi2)) {
            e2_.push_back(std::polar(1.0, psi));
        }
        for (double psi : uniform_angles(grid.psi3)) {
            e3_.push_back(std::polar(1.0, psi));
        }
    }

    [[nodiscard]] std::size_t slab_size() const noexcept { return grid_.theta2 * grid_.psi2 * grid_.psi3; }

    void fill(std::size_t i1, std::span<Complex> out) const {
        const double s1 = std::sin(theta1_[i1]);
        const double c1 = std::cos(theta1_[i1]);
        std::size_t offset = 0;
        for (double t2 : theta2_) {
            const double s2 = std::sin(t2);
            const double c2 = std::cos(t2);
            const double k1 = s1 * c1 * c2;
            const double k2 = s1 * c1 * s2;
            const double k3 = s1 * s1 * s2 * c2;
            for (const Complex& z2 : e2_) {
                // k1 J12(z2) + k2 J13(z3) + k3 J23(z3 / z2) as base + p z3 + q conj(z3).
                const Complex base = k1 * (a12_ * z2 + a21_ * std::conj(z2));
                const Complex p = k2 * a13_ + k3 * a23_ * std::conj(z2);
                const Complex q = k2 * a31_ + k3 * a32_ * z2;
                kernels::affine_conj_combine(e3_, base, p, q, out.subspan(offset, e3_.size()));
                offset += e3_.size();
            }
        }
    }

private:
    Nr3Grid grid_;
    std::vector<double> theta1_;
    std::vector<double> theta2_;
    std::vector<Complex> e2_;
    std::vector<Complex> e3_;
    Complex a12_, a21_, a13_, a31_, a23_, a32_;
};

} // namespace

ZeroDiagonalReduction zero_diagonal_reduce_3x3(const ComplexMatrix& a, double tol) {
    require_3x3(a, "zero_diagonal_reduce_3x3");
    const ComplexMatrix t = shift(a, -trace(a) / 3.0);
    const double scale = 1.0 + hs_norm(a);
    const double band = tol * scale;

    const ComplexMatrix q1 = complete_basis(isotropic_vector(t, band, tol, scale));
    const ComplexMatrix t1 = mat_mul(mat_mul(adjoint(q1), t), q1);

    // The trailing block is traceless up to rounding; zero its diagonal too.
    const ComplexMatrix tail{{t1(1, 1), t1(1, 2)}, {t1(2, 1), t1(2, 2)}};
    const auto x = solve_2x2(tail, 0.0, band);
    ComplexMatrix q2 = ComplexMatrix::identity(3);
    q2(1, 1) = x[0];
    q2(2, 1) = x[1];
    q2(1, 2) = -std::conj(x[1]);
    q2(2, 2) = std::conj(x[0]);

    ComplexMatrix q = mat_mul(q1, q2);
    ComplexMatrix b = mat_mul(mat_mul(adjoint(q), t), q);
    return {std::move(q), std::move(b)};
}

Complex nr3_point(const ComplexMatrix& a, double theta1, double theta2, double psi2, double psi3) {
    require_3x3(a, "nr3_point");
    require_zero_diagonal(a, 1e-9, "nr3_point");
    const double s1 = std::sin(theta1), c1 = std::cos(theta1);
    const double s2 = std::sin(theta2), c2 = std::cos(theta2);
    const Complex j12 = joukowsky_eval({a(0, 1), a(1, 0)}, psi2);
    const Complex j13 = joukowsky_eval({a(0, 2), a(2, 0)}, psi3);
    const Complex j23 = joukowsky_eval({a(1, 2), a(2, 1)}, psi3 - psi2);
    return s1 * c1 * (c2 * j12 + s2 * j13) + s1 * s1 * s2 * c2 * j23;
}

PointCloud nr3_sample(const ComplexMatrix& a, const Nr3Grid& grid) {
    require_3x3(a, "nr3_sample");
    require_zero_diagonal(a, 1e-9, "nr3_sample");
    require_grid(grid);
    const Nr3Sweep sweep(a, grid);
    PointCloud cloud(grid.total());
    const std::size_t slab = sweep.slab_size();
    parallel_for_chunks(grid.theta1, [&](std::size_t i1) {
        sweep.fill(i1, std::span<Complex>(cloud).subspan(i1 * slab, slab));
    });
    return cloud;
}

Polygon2D nr3_sample_hull(const ComplexMatrix& a, const Nr3Grid& grid) {
    require_3x3(a, "nr3_sample_hull");
    require_zero_diagonal(a, 1e-9, "nr3_sample_hull");
    require_grid(grid);
    const Nr3Sweep sweep(a, grid);
    std::vector<Polygon2D> partial(grid.theta1);
    parallel_for_chunks(grid.theta1, [&](std::size_t i1) {
        PointCloud slab(sweep.slab_size());
        sweep.fill(i1, slab);
        partial[i1] = convex_hull_2d(slab);
    });
    PointCloud merged;
    for (const auto& poly : partial) {
        merged.insert(merged.end(), poly.vertices.begin(), poly.vertices.end());
    }
    return convex_hull_2d(merged);
}

Nr3EllipseDetail nr3_ellipse_detail(const ComplexMatrix& a, double tol) {
    require_3x3(a, "nr3_ellipse_zero23");
    require_zero_diagonal(a, tol, "nr3_ellipse_zero23");
    const double band = tol * (1.0 + hs_norm(a));
    if (std::abs(a(1, 2)) + std::abs(a(2, 1)) > band) {
        throw PreconditionError("nr3_ellipse_zero23: entries a23 and a32 must vanish");
    }

    const Ellipse e1 = numerical_range_2x2(ComplexMatrix{{0.0, a(0, 1)}, {a(1, 0), 0.0}});
    const Ellipse e2 = numerical_range_2x2(ComplexMatrix{{0.0, a(0, 2)}, {a(2, 0), 0.0}});
    Nr3EllipseDetail d;
    d.block12 = {e1.axis_u, e1.axis_v, e1.rotation};
    d.block13 = {e2.axis_u, e2.axis_v, e2.rotation};

    const double A2 = e1.axis_u * e1.axis_u, B2 = e1.axis_v * e1.axis_v;
    const double C2 = e2.axis_u * e2.axis_u, D2 = e2.axis_v * e2.axis_v;
    const double alpha = e1.rotation, beta = e2.rotation;

    const double mean = 0.5 * (A2 + B2 + C2 + D2);
    const double radicand = (A2 - B2) * (A2 - B2) + (C2 - D2) * (C2 - D2) +
                            2.0 * (A2 - B2) * (C2 - D2) * std::cos(2.0 * (alpha - beta));
    const double half_gap = 0.5 * std::sqrt(std::max(0.0, radicand));
    d.principal.lambda1 = mean + half_gap;
    d.principal.lambda2 = std::max(0.0, mean - half_gap);

    const Complex tilt = (A2 - B2) * std::polar(1.0, 2.0 * alpha) + (C2 - D2) * std::polar(1.0, 2.0 * beta);
    d.principal.gamma = std::abs(tilt) <= band * band ? 0.0 : wrap_pi(0.5 * principal_arg(tilt));

    // A..D are semi-axes of the 2x2 block ranges, which are half the
    // Joukowsky ellipses of the union formula, so the 1/2 cancels.
    d.ellipse = Ellipse{Complex(0.0), std::sqrt(d.principal.lambda1), std::sqrt(d.principal.lambda2), d.principal.gamma};
    return d;
}

Ellipse nr3_ellipse_zero23(const ComplexMatrix& a, double tol) { return nr3_ellipse_detail(a, tol).ellipse; }

double nr3_support_from_blocks(const Nr3EllipseDetail& detail, double phi) {
    const auto block_support = [phi](const SubEllipseAxes& s) {
        return ellipse_support(Ellipse{Complex(0.0), s.major, s.minor, s.angle}, phi);
    };
    return std::hypot(block_support(detail.block12), block_support(detail.block13));
}

} // namespace fieldscope
