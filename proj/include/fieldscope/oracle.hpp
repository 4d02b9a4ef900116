#pragma once

#include "fieldscope/geometry.hpp"
#include "fieldscope/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <random>

namespace fieldscope {

/**
 * Reproducible random source: std::mt19937_64 seeded with `seed`, uniforms
 * from the top 53 bits of each draw, Gaussians by Box-Muller. Child streams
 * from fork() mix (seed, index) with splitmix64, so chunked sampling gives
 * the same values regardless of thread count.
 */
class SeededSampler {
public:
    explicit SeededSampler(std::uint64_t seed);

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    double uniform();  // [0, 1)
    double normal();
    Complex complex_normal();  // E|z|^2 = 1

    /// Normalised complex-Gaussian vector.
    UnitVector unit_vector(std::size_t n);

    /// Gram-Schmidt on the columns of a complex-Gaussian matrix (R with positive diagonal).
    ComplexMatrix unitary(std::size_t n);

    [[nodiscard]] SeededSampler fork(std::uint64_t index) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Vectors per independently seeded chunk in the sampling routines.
inline constexpr std::size_t kSampleChunk = 2048;

/// n unit vectors in C^dim; chunk k is drawn from sampler.fork(k), so a
/// shorter run is a prefix of a longer one.
std::vector<UnitVector> sample_unit_vectors(const SeededSampler& sampler, std::size_t dim, std::size_t n);

/// n values <A h, h> for sampled unit h (same vectors as sample_unit_vectors).
PointCloud sample_numerical_range(const ComplexMatrix& a, const SeededSampler& sampler, std::size_t n);

/// n values tr(C U* A U) for sampled unitaries U.
PointCloud sample_c_numerical_range(const ComplexMatrix& a, const ComplexMatrix& c, const SeededSampler& sampler,
                                    std::size_t n);

/**
 * Support of the sampled orbit {tr(C U* A U)} at uniform angles. For each
 * angle the best few sampled unitaries are refined by random steps
 * U <- U (I + eps K), K skew-Hermitian, re-orthonormalised, accepting only
 * improvements. Every value is attained by some unitary, so the result never
 * exceeds the true support of W_C(A).
 */
SupportProfile orbit_support_profile(const ComplexMatrix& a, const ComplexMatrix& c, std::size_t n_angles,
                                     const SeededSampler& sampler, std::size_t n_samples);

struct ComparisonReport {
    double hausdorff = 0.0;
    double max_outward_violation = 0.0;
    std::size_t n_points = 0;
};

/// Hausdorff distance between hull(cloud) and a boundary_samples-gon of the
/// ellipse, and the largest distance of a cloud point outside the ellipse.
ComparisonReport compare_region(const Ellipse& analytic, const PointCloud& cloud, std::size_t boundary_samples = 4096);

/// <A h, h> over h = (cos theta, e^{i psi} sin theta), theta on [0, pi/2]
/// (n_theta points, inclusive), psi on [0, 2 pi) (n_psi points).
PointCloud exact_grid_2x2(const ComplexMatrix& a, std::size_t n_theta, std::size_t n_psi);

} // namespace fieldscope
