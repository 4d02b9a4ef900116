#include "fieldscope/cnr.hpp"

#include "fieldscope/error.hpp"
#include "fieldscope/nr2.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>

namespace fieldscope {

namespace {

void require_2x2(const ComplexMatrix& m, const char* op) {
    if (m.size() != 2) {
        throw DimensionError(std::string(op) + ": matrices must be 2x2");
    }
}

// Objective of the rank-1 support search, evaluated on an unnormalised vector.
class DiskSupport {
public:
    DiskSupport(const ComplexMatrix& a, const RankOneRowForm& form, double phi)
        : a_(a), weight_(form.c11 * std::polar(1.0, -phi)), tail_(form.tail_norm) {}

    double operator()(const std::vector<Complex>& h) const {
        const double nsq = norm_sq(h);
        const std::vector<Complex> ah = mat_vec(a_, h);
        const Complex f = inner(ah, h) / nsq;
        const double spread = norm_sq(ah) / nsq - std::norm(f);
        return (weight_ * f).real() + tail_ * std::sqrt(std::max(0.0, spread));
    }

    double from_moments(Complex f, double image_norm_sq) const {
        return (weight_ * f).real() + tail_ * std::sqrt(std::max(0.0, image_norm_sq - std::norm(f)));
    }

private:
    const ComplexMatrix& a_;
    Complex weight_;
    double tail_;
};

double polish(const DiskSupport& g, std::vector<Complex> h) {
    constexpr int kSweeps = 50;
    constexpr std::array<Complex, 4> kDirections{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    double best = g(h);
    double step = 0.25;
    for (int sweep = 0; sweep < kSweeps; ++sweep) {
        bool improved = false;
        for (std::size_t k = 0; k < h.size(); ++k) {
            for (const Complex& d : kDirections) {
                const Complex saved = h[k];
                h[k] += step * d;
                const double value = g(h);
                if (value > best) {
                    best = value;
                    improved = true;
                } else {
                    h[k] = saved;
                }
            }
        }
        const double nrm = std::sqrt(norm_sq(h));
        for (auto& x : h) {
            x /= nrm;
        }
        if (!improved) {
            step *= 0.5;
        }
    }
    return best;
}

struct Moments {
    std::vector<UnitVector> h;
    std::vector<Complex> forms;
    std::vector<double> image_norm_sq;
};

Moments sample_moments(const ComplexMatrix& a, const SeededSampler& sampler, std::size_t n) {
    Moments m{sample_unit_vectors(sampler, a.size(), n), {}, {}};
    m.forms.reserve(n);
    m.image_norm_sq.reserve(n);
    for (const auto& h : m.h) {
        const std::vector<Complex> ah = mat_vec(a, h.components());
        m.forms.push_back(inner(ah, h.components()));
        m.image_norm_sq.push_back(norm_sq(ah));
    }
    return m;
}

double support_from_moments(const ComplexMatrix& a, const RankOneRowForm& form, double phi, const Moments& m) {
    const DiskSupport g(a, form, phi);
    double running = -std::numeric_limits<double>::infinity();
    double best = running;
    for (std::size_t j = 0; j < m.h.size(); ++j) {
        const double raw = g.from_moments(m.forms[j], m.image_norm_sq[j]);
        if (raw > running) {
            running = raw;
            best = std::max({best, raw, polish(g, m.h[j].components())});
        }
    }
    return best;
}

void require_samples(std::size_t n, const char* op) {
    if (n == 0) {
        throw PreconditionError(std::string(op) + ": sample count must be at least 1");
    }
}

} // namespace

CnrEllipseParams cnr_2x2_params(const ComplexMatrix& a, const ComplexMatrix& c) {
    require_2x2(a, "cnr_2x2");
    require_2x2(c, "cnr_2x2");
    const HotForm2 ha = hot_form_of(a);
    const HotForm2 hc = hot_form_of(c);
    return {ha.b * hc.b + ha.c * hc.c, ha.b * hc.b - ha.c * hc.c, ha.theta, hc.theta, trace(a) * trace(c) / 2.0};
}

Ellipse cnr_2x2(const ComplexMatrix& a, const ComplexMatrix& c) {
    const CnrEllipseParams p = cnr_2x2_params(a, c);
    return Ellipse{p.center, p.k1, p.k2, wrap_pi(-(p.theta1 + p.theta2))};
}

std::pair<double, double> cnr_2x2_radical_squares(const ComplexMatrix& a, const ComplexMatrix& c) {
    require_2x2(a, "cnr_2x2_radical_squares");
    require_2x2(c, "cnr_2x2_radical_squares");
    const CenteredForm fa = center_and_rotate(a);
    const CenteredForm fc = center_and_rotate(c);
    const double na = hs_norm_sq(fa.a0), nc = hs_norm_sq(fc.a0);
    const double da = det(fa.a0).real(), dc = det(fc.a0).real();
    const double cross = std::sqrt(std::max(0.0, na * na - 4.0 * da * da)) *
                         std::sqrt(std::max(0.0, nc * nc - 4.0 * dc * dc));
    return {na * nc + cross + 4.0 * da * dc, na * nc + cross - 4.0 * da * dc};
}

RankOneRowForm rank1_row_form(const ComplexMatrix& c, double tol) {
    const std::size_t n = c.size();
    if (n == 0) {
        throw DimensionError("rank1_row_form: empty matrix");
    }
    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c(i, j);
        }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU);
    const auto& sigma = svd.singularValues();
    if (!(sigma(0) > 0.0) || (n > 1 && sigma(1) > tol * sigma(0))) {
        throw NotRankOneError("rank1_row_form: matrix is not numerically rank 1");
    }

    // Householder H = I - 2 w w* / (w* w) with H u = alpha e1.
    const Eigen::VectorXcd u = svd.matrixU().col(0);
    const double phase = std::abs(u(0)) > 0.0 ? std::arg(u(0)) : 0.0;
    Eigen::VectorXcd w = u;
    w(0) += std::polar(1.0, phase);
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    h -= (2.0 / w.squaredNorm()) * w * w.adjoint();
    const Eigen::MatrixXcd reduced = h * m * h.adjoint();

    RankOneRowForm form;
    form.n = n;
    form.row.resize(n);
    double tail_sq = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        form.row[j] = reduced(0, static_cast<Eigen::Index>(j));
        if (j > 0) {
            tail_sq += std::norm(form.row[j]);
        }
    }
    form.c11 = form.row[0];
    form.tail_norm = std::sqrt(tail_sq);
    return form;
}

RankOneRowForm q_form(std::size_t n, double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw PreconditionError("q_numerical_range: q must lie in [0, 1]");
    }
    if (n < 2 && q != 1.0) {
        throw DimensionError("q_numerical_range: dimension must be at least 2 unless q = 1");
    }
    RankOneRowForm form;
    form.n = n;
    form.row.assign(n, Complex(0.0));
    form.row[0] = q;
    form.c11 = q;
    form.tail_norm = std::sqrt(std::max(0.0, 1.0 - q * q));
    if (n > 1) {
        form.row[1] = form.tail_norm;
    }
    return form;
}

Disk cnr_rank1_disk(const ComplexMatrix& a, const RankOneRowForm& form, const UnitVector& h) {
    if (a.size() != form.n || h.size() != form.n) {
        throw DimensionError("cnr_rank1_disk: dimensions of A, C and h must agree");
    }
    const std::vector<Complex> ah = mat_vec(a, h.components());
    const Complex f = inner(ah, h.components());
    double radicand = norm_sq(ah) - std::norm(f);
    if (radicand < 0.0) {
        radicand = 0.0;
    }
    return {form.c11 * f, form.tail_norm * std::sqrt(radicand)};
}

double cnr_rank1_support(const ComplexMatrix& a, const RankOneRowForm& form, double phi,
                         const SeededSampler& sampler, std::size_t n_samples) {
    require_samples(n_samples, "cnr_rank1_support");
    if (a.size() != form.n) {
        throw DimensionError("cnr_rank1_support: dimensions of A and C must agree");
    }
    return support_from_moments(a, form, phi, sample_moments(a, sampler, n_samples));
}

SupportProfile cnr_rank1_support_profile(const ComplexMatrix& a, const RankOneRowForm& form, std::size_t n_angles,
                                         const SeededSampler& sampler, std::size_t n_samples) {
    require_samples(n_samples, "cnr_rank1_support_profile");
    if (a.size() != form.n) {
        throw DimensionError("cnr_rank1_support_profile: dimensions of A and C must agree");
    }
    const Moments m = sample_moments(a, sampler, n_samples);
    SupportProfile profile{uniform_angles(n_angles), {}};
    profile.values.reserve(n_angles);
    for (double phi : profile.angles) {
        profile.values.push_back(support_from_moments(a, form, phi, m));
    }
    return profile;
}

PointCloud cnr_rank1_sample(const ComplexMatrix& a, const RankOneRowForm& form, const SeededSampler& sampler,
                            std::size_t n_h, std::size_t n_circle) {
    require_samples(n_h, "cnr_rank1_sample");
    require_samples(n_circle, "cnr_rank1_sample");
    if (a.size() != form.n) {
        throw DimensionError("cnr_rank1_sample: dimensions of A and C must agree");
    }
    std::vector<Complex> ring;
    for (double t : uniform_angles(n_circle)) {
        ring.push_back(std::polar(1.0, t));
    }
    PointCloud cloud;
    cloud.reserve(n_h * n_circle);
    for (const auto& h : sample_unit_vectors(sampler, a.size(), n_h)) {
        const Disk d = cnr_rank1_disk(a, form, h);
        for (const Complex& z : ring) {
            cloud.push_back(d.center + d.radius * z);
        }
    }
    return cloud;
}

Disk q_numerical_range_disk(const ComplexMatrix& a, double q, const UnitVector& h) {
    return cnr_rank1_disk(a, q_form(a.size(), q), h);
}

double q_numerical_range_support(const ComplexMatrix& a, double q, double phi, const SeededSampler& sampler,
                                 std::size_t n_samples) {
    return cnr_rank1_support(a, q_form(a.size(), q), phi, sampler, n_samples);
}

SupportProfile q_numerical_range_profile(const ComplexMatrix& a, double q, std::size_t n_angles,
                                         const SeededSampler& sampler, std::size_t n_samples) {
    return cnr_rank1_support_profile(a, q_form(a.size(), q), n_angles, sampler, n_samples);
}

PointCloud q_numerical_range_sample(const ComplexMatrix& a, double q, const SeededSampler& sampler, std::size_t n_h,
                                    std::size_t n_circle) {
    return cnr_rank1_sample(a, q_form(a.size(), q), sampler, n_h, n_circle);
}

} // namespace fieldscope
