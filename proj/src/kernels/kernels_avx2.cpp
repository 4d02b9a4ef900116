#include "fieldscope/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <limits>

namespace fieldscope::kernels::avx2 {

bool available() noexcept { return true; }

void affine_conj_combine(const Complex* z, std::size_t n, const double* coeff, Complex* out) noexcept {
    const double* in = reinterpret_cast<const double*>(z);
    double* dst = reinterpret_cast<double*>(out);
    const __m256d base = _mm256_setr_pd(coeff[0], coeff[1], coeff[0], coeff[1]);
    const __m256d col0 = _mm256_setr_pd(coeff[2], coeff[3], coeff[2], coeff[3]);
    const __m256d col1 = _mm256_setr_pd(coeff[4], coeff[5], coeff[4], coeff[5]);

    std::size_t k = 0;
    for (; k + 2 <= n; k += 2) {
        const __m256d v = _mm256_loadu_pd(in + 2 * k);
        const __m256d re = _mm256_movedup_pd(v);
        const __m256d im = _mm256_permute_pd(v, 0xF);
        const __m256d r = _mm256_add_pd(_mm256_add_pd(base, _mm256_mul_pd(re, col0)), _mm256_mul_pd(im, col1));
        _mm256_storeu_pd(dst + 2 * k, r);
    }
    if (k < n) {
        scalar::affine_conj_combine(z + k, n - k, coeff, out + k);
    }
}

double max_projection(const Complex* points, std::size_t n, double c, double s) noexcept {
    const double* in = reinterpret_cast<const double*>(points);
    const __m256d dir = _mm256_setr_pd(c, s, c, s);
    __m256d best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());

    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(in + 2 * k), dir);
        const __m256d b = _mm256_mul_pd(_mm256_loadu_pd(in + 2 * k + 4), dir);
        best = _mm256_max_pd(best, _mm256_hadd_pd(a, b));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double result = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    if (k < n) {
        result = std::max(result, scalar::max_projection(points + k, n - k, c, s));
    }
    return result;
}

void quadratic_forms(const double* a_re, const double* a_im, std::size_t dim, const double* h_re,
                     const double* h_im, std::size_t count, Complex* forms, double* image_norm_sq) noexcept {
    std::size_t s = 0;
    for (; s + 4 <= count; s += 4) {
        __m256d qr = _mm256_setzero_pd();
        __m256d qi = _mm256_setzero_pd();
        __m256d nrm = _mm256_setzero_pd();
        for (std::size_t j = 0; j < dim; ++j) {
            __m256d acc_r = _mm256_setzero_pd();
            __m256d acc_i = _mm256_setzero_pd();
            for (std::size_t k = 0; k < dim; ++k) {
                const __m256d ar = _mm256_set1_pd(a_re[j * dim + k]);
                const __m256d ai = _mm256_set1_pd(a_im[j * dim + k]);
                const __m256d hr = _mm256_loadu_pd(h_re + k * count + s);
                const __m256d hi = _mm256_loadu_pd(h_im + k * count + s);
                acc_r = _mm256_add_pd(acc_r, _mm256_sub_pd(_mm256_mul_pd(ar, hr), _mm256_mul_pd(ai, hi)));
                acc_i = _mm256_add_pd(acc_i, _mm256_add_pd(_mm256_mul_pd(ar, hi), _mm256_mul_pd(ai, hr)));
            }
            const __m256d hr = _mm256_loadu_pd(h_re + j * count + s);
            const __m256d hi = _mm256_loadu_pd(h_im + j * count + s);
            qr = _mm256_add_pd(qr, _mm256_add_pd(_mm256_mul_pd(hr, acc_r), _mm256_mul_pd(hi, acc_i)));
            qi = _mm256_add_pd(qi, _mm256_sub_pd(_mm256_mul_pd(hr, acc_i), _mm256_mul_pd(hi, acc_r)));
            nrm = _mm256_add_pd(nrm, _mm256_add_pd(_mm256_mul_pd(acc_r, acc_r), _mm256_mul_pd(acc_i, acc_i)));
        }
        alignas(32) double re[4], im[4];
        _mm256_store_pd(re, qr);
        _mm256_store_pd(im, qi);
        _mm256_storeu_pd(image_norm_sq + s, nrm);
        for (int l = 0; l < 4; ++l) {
            forms[s + l] = Complex(re[l], im[l]);
        }
    }
    for (; s < count; ++s) {
        double qr = 0.0, qi = 0.0, nrm = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            double acc_r = 0.0, acc_i = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double ar = a_re[j * dim + k], ai = a_im[j * dim + k];
                const double hr = h_re[k * count + s], hi = h_im[k * count + s];
                acc_r = acc_r + (ar * hr - ai * hi);
                acc_i = acc_i + (ar * hi + ai * hr);
            }
            const double hr = h_re[j * count + s], hi = h_im[j * count + s];
            qr = qr + (hr * acc_r + hi * acc_i);
            qi = qi + (hr * acc_i - hi * acc_r);
            nrm = nrm + (acc_r * acc_r + acc_i * acc_i);
        }
        forms[s] = Complex(qr, qi);
        image_norm_sq[s] = nrm;
    }
}

} // namespace fieldscope::kernels::avx2
