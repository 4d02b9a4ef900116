#include "fieldscope/kernels.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstring>

using namespace fieldscope;
using testing::Rng;

namespace {

bool bit_equal(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(Complex)) == 0;
}

struct LevelGuard {
    explicit LevelGuard(kernels::SimdLevel l) { kernels::force_level(l); }
    ~LevelGuard() { kernels::force_level(std::nullopt); }
};

std::vector<Complex> random_points(Rng& rng, std::size_t n) {
    std::vector<Complex> z(n);
    for (auto& x : z) {
        x = rng.cnormal();
    }
    return z;
}

} // namespace

TEST_CASE("level names and detection") {
    CHECK(kernels::level_name(kernels::SimdLevel::scalar) == "scalar");
    CHECK(kernels::level_name(kernels::SimdLevel::avx2) == "avx2");
    {
        LevelGuard g(kernels::SimdLevel::scalar);
        CHECK(kernels::active_level() == kernels::SimdLevel::scalar);
    }
    {
        LevelGuard g(kernels::SimdLevel::avx2);
        CHECK(kernels::active_level() == kernels::detected_level());
    }
    MESSAGE("detected SIMD level: " << kernels::level_name(kernels::detected_level()));
}

TEST_CASE("affine_conj_combine matches the formula") {
    Rng rng(1);
    const auto z = random_points(rng, 37);
    const Complex base = rng.cnormal(), p = rng.cnormal(), q = rng.cnormal();
    std::vector<Complex> out(z.size());
    kernels::affine_conj_combine(z, base, p, q, out);
    for (std::size_t k = 0; k < z.size(); ++k) {
        CHECK(std::abs(out[k] - (base + p * z[k] + q * std::conj(z[k]))) < 1e-14);
    }
}

TEST_CASE("max_projection matches the formula") {
    Rng rng(2);
    const auto z = random_points(rng, 101);
    const double phi = 0.7;
    CHECK(kernels::max_projection(z, std::cos(phi), std::sin(phi)) ==
          doctest::Approx(testing::cloud_support(z, phi)).epsilon(1e-15));
}

TEST_CASE("quadratic_forms matches brute force") {
    Rng rng(3);
    for (std::size_t dim : {1u, 2u, 3u, 5u}) {
        const ComplexMatrix a = rng.matrix(dim);
        const std::size_t count = 19;
        std::vector<std::vector<Complex>> hs;
        std::vector<double> re(dim * count), im(dim * count);
        for (std::size_t j = 0; j < count; ++j) {
            hs.push_back(rng.unit(dim));
            for (std::size_t i = 0; i < dim; ++i) {
                re[i * count + j] = hs.back()[i].real();
                im[i * count + j] = hs.back()[i].imag();
            }
        }
        std::vector<Complex> forms(count);
        std::vector<double> image(count);
        kernels::quadratic_forms(a, re, im, count, forms, image);
        for (std::size_t j = 0; j < count; ++j) {
            CHECK(std::abs(forms[j] - testing::form(a, hs[j])) < 1e-13);
            const auto ah = mat_vec(a, hs[j]);
            CHECK(image[j] == doctest::Approx(norm_sq(ah)).epsilon(1e-13));
        }
    }
}

TEST_CASE("scalar and AVX2 backends are bit-identical") {
    if (!kernels::avx2::available()) {
        MESSAGE("AVX2 backend not available on this machine; equivalence not exercised");
        return;
    }
    Rng rng(4);
    for (std::size_t n = 0; n <= 67; ++n) {
        const auto z = random_points(rng, n);
        const auto coeff = kernels::affine_conj_coefficients(rng.cnormal(), rng.cnormal(), rng.cnormal());
        std::vector<Complex> s(n), v(n);
        kernels::scalar::affine_conj_combine(z.data(), n, coeff.data(), s.data());
        kernels::avx2::affine_conj_combine(z.data(), n, coeff.data(), v.data());
        CHECK(bit_equal(s, v));

        if (n > 0) {
            const double c = std::cos(0.1 * n), sn = std::sin(0.1 * n);
            CHECK(kernels::scalar::max_projection(z.data(), n, c, sn) ==
                  kernels::avx2::max_projection(z.data(), n, c, sn));
        }

        for (std::size_t dim : {1u, 2u, 3u, 4u}) {
            std::vector<double> are(dim * dim), aim(dim * dim), hre(dim * n), him(dim * n);
            for (auto* vec : {&are, &aim, &hre, &him}) {
                for (auto& x : *vec) {
                    x = rng.normal();
                }
            }
            std::vector<Complex> fs(n), fv(n);
            std::vector<double> is(n), iv(n);
            kernels::scalar::quadratic_forms(are.data(), aim.data(), dim, hre.data(), him.data(), n, fs.data(),
                                             is.data());
            kernels::avx2::quadratic_forms(are.data(), aim.data(), dim, hre.data(), him.data(), n, fv.data(),
                                           iv.data());
            CHECK(bit_equal(fs, fv));
            CHECK(std::memcmp(is.data(), iv.data(), n * sizeof(double)) == 0);
        }
    }
}

TEST_CASE("dispatching entry points agree across levels") {
    Rng rng(5);
    const auto z = random_points(rng, 1000);
    const Complex base = rng.cnormal(), p = rng.cnormal(), q = rng.cnormal();
    std::vector<Complex> s(z.size()), v(z.size());
    double ms = 0.0, mv = 0.0;
    {
        LevelGuard g(kernels::SimdLevel::scalar);
        kernels::affine_conj_combine(z, base, p, q, s);
        ms = kernels::max_projection(z, 0.6, 0.8);
    }
    {
        LevelGuard g(kernels::SimdLevel::avx2);
        kernels::affine_conj_combine(z, base, p, q, v);
        mv = kernels::max_projection(z, 0.6, 0.8);
    }
    CHECK(bit_equal(s, v));
    CHECK(ms == mv);
}
