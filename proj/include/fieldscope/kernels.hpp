#pragma once

// Data-parallel inner loops shared by the sampling oracles and the region
// comparisons. Each kernel has a scalar reference and, on x86-64, an AVX2
// variant chosen at runtime. Both variants perform the same IEEE operations in
// the same order (no FMA contraction), so their results are bit-identical.

#include "fieldscope/linalg.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace fieldscope::kernels {

enum class SimdLevel { scalar, avx2 };

std::string_view level_name(SimdLevel level) noexcept;

/// Best level supported by both the build and the running CPU.
SimdLevel detected_level() noexcept;

/// Level used by the dispatching entry points. Defaults to detected_level(),
/// or to "scalar" when FIELDSCOPE_SIMD=scalar is set in the environment.
SimdLevel active_level() noexcept;

/// Overrides the active level (nullopt restores the default). Requests above
/// detected_level() are clamped.
void force_level(std::optional<SimdLevel> level) noexcept;

/// out[k] = base + p z[k] + q conj(z[k])
void affine_conj_combine(std::span<const Complex> z, Complex base, Complex p, Complex q, std::span<Complex> out);

/// max_k Re(points[k] * e^{-i phi}) with (c, s) = (cos phi, sin phi). Requires a nonempty input.
double max_projection(std::span<const Complex> points, double c, double s);

/**
 * Batched <A h, h> and ||A h||^2 for `count` vectors stored component-major:
 * component k of vector j is (h_re[k * count + j], h_im[k * count + j]).
 */
void quadratic_forms(const ComplexMatrix& a, std::span<const double> h_re, std::span<const double> h_im,
                     std::size_t count, std::span<Complex> forms, std::span<double> image_norm_sq);

// Backends, exposed for equivalence testing.
namespace scalar {
void affine_conj_combine(const Complex* z, std::size_t n, const double* coeff, Complex* out) noexcept;
double max_projection(const Complex* points, std::size_t n, double c, double s) noexcept;
void quadratic_forms(const double* a_re, const double* a_im, std::size_t dim, const double* h_re,
                     const double* h_im, std::size_t count, Complex* forms, double* image_norm_sq) noexcept;
} // namespace scalar

namespace avx2 {
bool available() noexcept;
void affine_conj_combine(const Complex* z, std::size_t n, const double* coeff, Complex* out) noexcept;
double max_projection(const Complex* points, std::size_t n, double c, double s) noexcept;
void quadratic_forms(const double* a_re, const double* a_im, std::size_t dim, const double* h_re,
                     const double* h_im, std::size_t count, Complex* forms, double* image_norm_sq) noexcept;
} // namespace avx2

/// Real coefficients (base_re, base_im, m00, m10, m01, m11) for affine_conj_combine:
/// out = base + [m00 m01; m10 m11] (Re z, Im z).
std::array<double, 6> affine_conj_coefficients(Complex base, Complex p, Complex q) noexcept;

} // namespace fieldscope::kernels
