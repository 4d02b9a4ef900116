#include "fieldscope/kernels.hpp"

#include "fieldscope/error.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <vector>

namespace fieldscope::kernels {

#ifndef FIELDSCOPE_HAVE_AVX2
namespace avx2 {
bool available() noexcept { return false; }
void affine_conj_combine(const Complex* z, std::size_t n, const double* coeff, Complex* out) noexcept {
    scalar::affine_conj_combine(z, n, coeff, out);
}
double max_projection(const Complex* points, std::size_t n, double c, double s) noexcept {
    return scalar::max_projection(points, n, c, s);
}
void quadratic_forms(const double* a_re, const double* a_im, std::size_t dim, const double* h_re,
                     const double* h_im, std::size_t count, Complex* forms, double* image_norm_sq) noexcept {
    scalar::quadratic_forms(a_re, a_im, dim, h_re, h_im, count, forms, image_norm_sq);
}
} // namespace avx2
#endif

namespace {

constexpr int kUnset = -1;
std::atomic<int> g_forced{kUnset};

SimdLevel default_level() noexcept {
    const char* env = std::getenv("FIELDSCOPE_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) {
        return SimdLevel::scalar;
    }
    return detected_level();
}

} // namespace

std::string_view level_name(SimdLevel level) noexcept {
    switch (level) {
    case SimdLevel::avx2:
        return "avx2";
    case SimdLevel::scalar:
        break;
    }
    return "scalar";
}

SimdLevel detected_level() noexcept {
#if defined(FIELDSCOPE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool cpu_has_avx2 = __builtin_cpu_supports("avx2");
    if (cpu_has_avx2) {
        return SimdLevel::avx2;
    }
#endif
    return SimdLevel::scalar;
}

SimdLevel active_level() noexcept {
    const int forced = g_forced.load(std::memory_order_relaxed);
    if (forced != kUnset) {
        return static_cast<SimdLevel>(forced);
    }
    static const SimdLevel level = default_level();
    return level;
}

void force_level(std::optional<SimdLevel> level) noexcept {
    if (!level) {
        g_forced.store(kUnset, std::memory_order_relaxed);
        return;
    }
    SimdLevel chosen = *level;
    if (chosen == SimdLevel::avx2 && detected_level() != SimdLevel::avx2) {
        chosen = SimdLevel::scalar;
    }
    g_forced.store(static_cast<int>(chosen), std::memory_order_relaxed);
}

std::array<double, 6> affine_conj_coefficients(Complex base, Complex p, Complex q) noexcept {
    // p z + q conj(z) as a real 2x2 map acting on (Re z, Im z).
    return {base.real(), base.imag(),
            p.real() + q.real(), p.imag() + q.imag(),
            q.imag() - p.imag(), p.real() - q.real()};
}

void affine_conj_combine(std::span<const Complex> z, Complex base, Complex p, Complex q, std::span<Complex> out) {
    if (out.size() < z.size()) {
        throw DimensionError("affine_conj_combine: output shorter than input");
    }
    const auto coeff = affine_conj_coefficients(base, p, q);
    if (active_level() == SimdLevel::avx2) {
        avx2::affine_conj_combine(z.data(), z.size(), coeff.data(), out.data());
    } else {
        scalar::affine_conj_combine(z.data(), z.size(), coeff.data(), out.data());
    }
}

double max_projection(std::span<const Complex> points, double c, double s) {
    if (points.empty()) {
        throw PreconditionError("max_projection: empty point set");
    }
    if (active_level() == SimdLevel::avx2) {
        return avx2::max_projection(points.data(), points.size(), c, s);
    }
    return scalar::max_projection(points.data(), points.size(), c, s);
}

void quadratic_forms(const ComplexMatrix& a, std::span<const double> h_re, std::span<const double> h_im,
                     std::size_t count, std::span<Complex> forms, std::span<double> image_norm_sq) {
    const std::size_t dim = a.size();
    if (h_re.size() < dim * count || h_im.size() < dim * count || forms.size() < count ||
        image_norm_sq.size() < count) {
        throw DimensionError("quadratic_forms: buffer sizes do not match dimension * count");
    }
    std::vector<double> a_re(dim * dim), a_im(dim * dim);
    for (std::size_t k = 0; k < dim * dim; ++k) {
        a_re[k] = a.entries()[k].real();
        a_im[k] = a.entries()[k].imag();
    }
    if (active_level() == SimdLevel::avx2) {
        avx2::quadratic_forms(a_re.data(), a_im.data(), dim, h_re.data(), h_im.data(), count, forms.data(),
                              image_norm_sq.data());
    } else {
        scalar::quadratic_forms(a_re.data(), a_im.data(), dim, h_re.data(), h_im.data(), count, forms.data(),
                                image_norm_sq.data());
    }
}

} // namespace fieldscope::kernels
