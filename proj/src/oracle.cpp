#include "fieldscope/oracle.hpp"

#include "fieldscope/error.hpp"
#include "fieldscope/kernels.hpp"
#include "fieldscope/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace fieldscope {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::size_t chunk_count(std::size_t n) { return (n + kSampleChunk - 1) / kSampleChunk; }

std::size_t chunk_length(std::size_t n, std::size_t k) { return std::min(kSampleChunk, n - k * kSampleChunk); }

// Modified Gram-Schmidt with reorthogonalisation, in place. False on rank deficiency.
bool orthonormalize_columns(ComplexMatrix& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<Complex>> cols(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cols[j][i] = m(i, j);
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                const Complex proj = inner(cols[j], cols[k]);
                for (std::size_t i = 0; i < n; ++i) {
                    cols[j][i] -= proj * cols[k][i];
                }
            }
        }
        const double nrm = std::sqrt(norm_sq(cols[j]));
        if (!(nrm > 1e-12)) {
            return false;
        }
        for (auto& x : cols[j]) {
            x /= nrm;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = cols[j][i];
        }
    }
    return true;
}

// tr(C U* A U)
Complex orbit_value(const ComplexMatrix& a, const ComplexMatrix& c, const ComplexMatrix& u) {
    const ComplexMatrix x = mat_mul(mat_mul(adjoint(u), a), u);
    Complex t = 0.0;
    for (std::size_t r = 0; r < x.size(); ++r) {
        for (std::size_t s = 0; s < x.size(); ++s) {
            t += c(r, s) * x(s, r);
        }
    }
    return t;
}

constexpr std::size_t kPolishStarts = 3;
constexpr int kPolishSteps = 600;
constexpr int kPolishPatience = 12;
constexpr std::uint64_t kPolishStream = 1ULL << 40;

} // namespace

SeededSampler::SeededSampler(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double SeededSampler::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SeededSampler::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Complex SeededSampler::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

UnitVector SeededSampler::unit_vector(std::size_t n) {
    if (n == 0) {
        throw DimensionError("unit_vector: dimension must be at least 1");
    }
    std::vector<Complex> v(n);
    double nsq = 0.0;
    do {
        for (auto& x : v) {
            x = complex_normal();
        }
        nsq = norm_sq(v);
    } while (!(nsq > 1e-300));
    return UnitVector::normalized(std::move(v));
}

ComplexMatrix SeededSampler::unitary(std::size_t n) {
    if (n == 0) {
        throw DimensionError("unitary: dimension must be at least 1");
    }
    for (;;) {
        ComplexMatrix g(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                g(i, j) = complex_normal();
            }
        }
        if (orthonormalize_columns(g)) {
            return g;
        }
    }
}

SeededSampler SeededSampler::fork(std::uint64_t index) const {
    return SeededSampler(splitmix64(seed_ ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

std::vector<UnitVector> sample_unit_vectors(const SeededSampler& sampler, std::size_t dim, std::size_t n) {
    std::vector<std::vector<UnitVector>> chunks(chunk_count(n));
    parallel_for_chunks(chunks.size(), [&](std::size_t k) {
        SeededSampler local = sampler.fork(k);
        const std::size_t len = chunk_length(n, k);
        chunks[k].reserve(len);
        for (std::size_t j = 0; j < len; ++j) {
            chunks[k].push_back(local.unit_vector(dim));
        }
    });
    std::vector<UnitVector> out;
    out.reserve(n);
    for (auto& chunk : chunks) {
        std::move(chunk.begin(), chunk.end(), std::back_inserter(out));
    }
    return out;
}

PointCloud sample_numerical_range(const ComplexMatrix& a, const SeededSampler& sampler, std::size_t n) {
    const std::size_t dim = a.size();
    if (dim == 0) {
        throw DimensionError("sample_numerical_range: empty matrix");
    }
    PointCloud cloud(n);
    parallel_for_chunks(chunk_count(n), [&](std::size_t k) {
        SeededSampler local = sampler.fork(k);
        const std::size_t len = chunk_length(n, k);
        std::vector<double> re(dim * len), im(dim * len);
        for (std::size_t j = 0; j < len; ++j) {
            const UnitVector h = local.unit_vector(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                re[i * len + j] = h[i].real();
                im[i * len + j] = h[i].imag();
            }
        }
        std::vector<double> image(len);
        kernels::quadratic_forms(a, re, im, len, std::span<Complex>(cloud).subspan(k * kSampleChunk, len), image);
    });
    return cloud;
}

namespace {

void check_pair(const ComplexMatrix& a, const ComplexMatrix& c, const char* where) {
    if (a.size() != c.size() || a.size() == 0) {
        throw DimensionError(std::string(where) + ": A and C must be square of equal dimension");
    }
}

std::vector<ComplexMatrix> sample_unitaries(const SeededSampler& sampler, std::size_t dim, std::size_t n) {
    std::vector<ComplexMatrix> out(n);
    parallel_for_chunks(chunk_count(n), [&](std::size_t k) {
        SeededSampler local = sampler.fork(k);
        const std::size_t len = chunk_length(n, k);
        for (std::size_t j = 0; j < len; ++j) {
            out[k * kSampleChunk + j] = local.unitary(dim);
        }
    });
    return out;
}

} // namespace

PointCloud sample_c_numerical_range(const ComplexMatrix& a, const ComplexMatrix& c, const SeededSampler& sampler,
                                    std::size_t n) {
    check_pair(a, c, "sample_c_numerical_range");
    const std::size_t dim = a.size();
    PointCloud cloud(n);
    parallel_for_chunks(chunk_count(n), [&](std::size_t k) {
        SeededSampler local = sampler.fork(k);
        const std::size_t len = chunk_length(n, k);
        for (std::size_t j = 0; j < len; ++j) {
            cloud[k * kSampleChunk + j] = orbit_value(a, c, local.unitary(dim));
        }
    });
    return cloud;
}

SupportProfile orbit_support_profile(const ComplexMatrix& a, const ComplexMatrix& c, std::size_t n_angles,
                                     const SeededSampler& sampler, std::size_t n_samples) {
    check_pair(a, c, "orbit_support_profile");
    if (n_angles == 0 || n_samples == 0) {
        throw PreconditionError("orbit_support_profile: counts must be at least 1");
    }
    const std::size_t dim = a.size();
    const std::vector<ComplexMatrix> us = sample_unitaries(sampler, dim, n_samples);
    PointCloud values(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        values[i] = orbit_value(a, c, us[i]);
    }

    SupportProfile profile{uniform_angles(n_angles), std::vector<double>(n_angles)};
    parallel_for_chunks(n_angles, [&](std::size_t k) {
        const Complex rot = std::polar(1.0, -profile.angles[k]);
        auto score = [&](Complex z) { return (rot * z).real(); };

        std::vector<std::size_t> order(n_samples);
        for (std::size_t i = 0; i < n_samples; ++i) {
            order[i] = i;
        }
        const std::size_t n_starts = std::min(kPolishStarts, n_samples);
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_starts), order.end(),
                          [&](std::size_t x, std::size_t y) {
                              const double sx = score(values[x]), sy = score(values[y]);
                              return sx > sy || (sx == sy && x < y);
                          });

        SeededSampler steps = sampler.fork(kPolishStream + k);
        double best = score(values[order[0]]);
        for (std::size_t s = 0; s < n_starts; ++s) {
            ComplexMatrix u = us[order[s]];
            double f = score(values[order[s]]);
            double eps = 0.5;
            int misses = 0;
            for (int step = 0; step < kPolishSteps && eps > 1e-9; ++step) {
                // U (I + eps K) for skew-Hermitian K, pulled back onto the unitary group.
                ComplexMatrix g = ComplexMatrix::identity(dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    for (std::size_t j = 0; j <= i; ++j) {
                        const Complex w = steps.complex_normal();
                        if (i == j) {
                            g(i, i) += eps * Complex(0.0, w.imag());
                        } else {
                            g(i, j) += eps * w;
                            g(j, i) -= eps * std::conj(w);
                        }
                    }
                }
                ComplexMatrix trial = mat_mul(u, g);
                if (!orthonormalize_columns(trial)) {
                    eps *= 0.5;
                    continue;
                }
                const double v = score(orbit_value(a, c, trial));
                if (v > f) {
                    f = v;
                    u = std::move(trial);
                    misses = 0;
                } else if (++misses >= kPolishPatience) {
                    eps *= 0.5;
                    misses = 0;
                }
            }
            best = std::max(best, f);
        }
        profile.values[k] = best;
    });
    return profile;
}

ComparisonReport compare_region(const Ellipse& analytic, const PointCloud& cloud, std::size_t boundary_samples) {
    if (cloud.empty()) {
        throw PreconditionError("compare_region: cloud must be nonempty");
    }
    ComparisonReport report;
    report.n_points = cloud.size();
    for (const Complex& p : cloud) {
        report.max_outward_violation = std::max(report.max_outward_violation, ellipse_outside_distance(analytic, p));
    }
    report.hausdorff = hausdorff_distance(convex_hull_2d(cloud), ellipse_polygon(analytic, boundary_samples));
    return report;
}

PointCloud exact_grid_2x2(const ComplexMatrix& a, std::size_t n_theta, std::size_t n_psi) {
    if (a.size() != 2) {
        throw DimensionError("exact_grid_2x2: matrix must be 2x2");
    }
    if (n_theta == 0 || n_psi == 0) {
        throw PreconditionError("exact_grid_2x2: grid counts must be at least 1");
    }
    std::vector<Complex> z;
    z.reserve(n_psi);
    for (double psi : uniform_angles(n_psi)) {
        z.push_back(std::polar(1.0, psi));
    }
    PointCloud cloud(n_theta * n_psi);
    for (std::size_t i = 0; i < n_theta; ++i) {
        const double theta =
            n_theta == 1 ? 0.0 : 0.5 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_theta - 1);
        const double c = std::cos(theta), s = std::sin(theta);
        const Complex base = a(0, 0) * c * c + a(1, 1) * s * s;
        kernels::affine_conj_combine(z, base, s * c * a(0, 1), s * c * a(1, 0),
                                     std::span<Complex>(cloud).subspan(i * n_psi, n_psi));
    }
    return cloud;
}

} // namespace fieldscope
