#pragma once

// Test-side oracles. They deliberately avoid the library's own helpers:
// own RNG, brute-force inner products, Eigen for decompositions.

#include "fieldscope/geometry.hpp"
#include "fieldscope/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace testing {

using fieldscope::Complex;
using fieldscope::ComplexMatrix;

inline constexpr double pi = std::numbers::pi;

class Rng {
public:
    explicit Rng(unsigned seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    Complex cnormal() { return {normal(), normal()}; }

    ComplexMatrix matrix(std::size_t n, double scale = 1.0) {
        std::vector<Complex> e(n * n);
        for (auto& x : e) {
            x = scale * cnormal();
        }
        return ComplexMatrix(n, e);
    }

    std::vector<Complex> unit(std::size_t n) {
        std::vector<Complex> v(n);
        double s = 0.0;
        for (auto& x : v) {
            x = cnormal();
            s += std::norm(x);
        }
        for (auto& x : v) {
            x /= std::sqrt(s);
        }
        return v;
    }

    ComplexMatrix unitary(std::size_t n) {
        Eigen::MatrixXcd g(n, n);
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            for (Eigen::Index j = 0; j < g.cols(); ++j) {
                g(i, j) = cnormal();
            }
        }
        const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
        ComplexMatrix u(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                u(i, j) = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        }
        return u;
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t n = a.size();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                s += a(i, k) * b(k, j);
            }
            c(i, j) = s;
        }
    }
    return c;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            c(i, j) = std::conj(a(j, i));
        }
    }
    return c;
}

// U* A U
inline ComplexMatrix conjugate_by(const ComplexMatrix& a, const ComplexMatrix& u) {
    return multiply(multiply(dagger(u), a), u);
}

// sum_ij a_ij h_j conj(h_i)
inline Complex form(const ComplexMatrix& a, const std::vector<Complex>& h) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t j = 0; j < h.size(); ++j) {
            s += a(i, j) * h[j] * std::conj(h[i]);
        }
    }
    return s;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            m = std::max(m, std::abs(a(i, j) - b(i, j)));
        }
    }
    return m;
}

inline double frob(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            s += std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

inline std::vector<Complex> eigenvalues(const ComplexMatrix& a) {
    Eigen::MatrixXcd m(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
        }
    }
    const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(m, false).eigenvalues();
    std::vector<Complex> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
        return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
    });
    return out;
}

// (x/u)^2 + (y/v)^2 in the ellipse frame; <= 1 inside. Nondegenerate ellipses only.
inline double ellipse_level(const fieldscope::Ellipse& e, Complex p) {
    const Complex w = (p - e.center) * std::polar(1.0, -e.rotation);
    return std::pow(w.real() / e.axis_u, 2) + std::pow(w.imag() / e.axis_v, 2);
}

inline double cloud_support(const std::vector<Complex>& cloud, double phi) {
    double best = -1e300;
    for (const Complex& z : cloud) {
        best = std::max(best, (z * std::polar(1.0, -phi)).real());
    }
    return best;
}

// max over unitaries U of Re(e^{-i phi} tr(C U* A U)): best of random starts,
// then random Cayley steps U <- U (I - eps K / 2)^{-1} (I + eps K / 2), K skew-Hermitian.
inline double orbit_support(const ComplexMatrix& a, const ComplexMatrix& c, double phi, Rng& rng,
                            int n_start = 2000, int n_polish = 3, int n_steps = 600) {
    const auto n = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXcd ea(n, n), ec(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            ea(i, j) = a(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            ec(i, j) = c(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    const Complex rot = std::polar(1.0, -phi);
    auto value = [&](const Eigen::MatrixXcd& u) { return (rot * (ec * u.adjoint() * ea * u).trace()).real(); };
    auto to_eigen = [&](const ComplexMatrix& m) {
        Eigen::MatrixXcd e(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) e(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
        return e;
    };

    std::vector<std::pair<double, Eigen::MatrixXcd>> starts;
    for (int k = 0; k < n_start; ++k) {
        Eigen::MatrixXcd u = to_eigen(rng.unitary(a.size()));
        starts.emplace_back(value(u), u);
    }
    std::partial_sort(starts.begin(), starts.begin() + std::min<long>(n_polish, n_start), starts.end(),
                      [](const auto& x, const auto& y) { return x.first > y.first; });

    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    double best = starts.front().first;
    for (int s = 0; s < std::min(n_polish, n_start); ++s) {
        auto [f, u] = starts[static_cast<std::size_t>(s)];
        double eps = 0.5;
        int misses = 0;
        for (int step = 0; step < n_steps && eps > 1e-9; ++step) {
            Eigen::MatrixXcd k(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                for (Eigen::Index j = 0; j < n; ++j) k(i, j) = rng.cnormal();
            }
            k = 0.5 * (k - Eigen::MatrixXcd(k.adjoint()));
            const Eigen::MatrixXcd cay = (id - 0.5 * eps * k).inverse() * (id + 0.5 * eps * k);
            const Eigen::MatrixXcd trial = u * cay;
            const double g = value(trial);
            if (g > f) {
                f = g;
                u = trial;
                misses = 0;
            } else if (++misses >= 12) {
                eps *= 0.5;
                misses = 0;
            }
        }
        best = std::max(best, f);
    }
    return best;
}

// Support of the closed ellipse from its parametrisation, by dense sampling.
inline double sampled_ellipse_support(const fieldscope::Ellipse& e, double phi, int k = 20000) {
    double best = -1e300;
    for (int j = 0; j < k; ++j) {
        const double t = 2.0 * pi * j / k;
        const Complex z =
            e.center + std::polar(1.0, e.rotation) * Complex(e.axis_u * std::cos(t), e.axis_v * std::sin(t));
        best = std::max(best, (z * std::polar(1.0, -phi)).real());
    }
    return best;
}

} // namespace testing
