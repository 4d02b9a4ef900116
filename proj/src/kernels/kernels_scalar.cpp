#include "fieldscope/kernels.hpp"

#include <algorithm>
#include <limits>

namespace fieldscope::kernels::scalar {

void affine_conj_combine(const Complex* z, std::size_t n, const double* coeff, Complex* out) noexcept {
    const double br = coeff[0], bi = coeff[1];
    const double m00 = coeff[2], m10 = coeff[3], m01 = coeff[4], m11 = coeff[5];
    for (std::size_t k = 0; k < n; ++k) {
        const double zr = z[k].real();
        const double zi = z[k].imag();
        const double re = (br + zr * m00) + zi * m01;
        const double im = (bi + zr * m10) + zi * m11;
        out[k] = Complex(re, im);
    }
}

double max_projection(const Complex* points, std::size_t n, double c, double s) noexcept {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const double v = points[k].real() * c + points[k].imag() * s;
        best = std::max(best, v);
    }
    return best;
}

void quadratic_forms(const double* a_re, const double* a_im, std::size_t dim, const double* h_re,
                     const double* h_im, std::size_t count, Complex* forms, double* image_norm_sq) noexcept {
    for (std::size_t s = 0; s < count; ++s) {
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

} // namespace fieldscope::kernels::scalar
