#include "gsttcm/golden.hpp"

#include <cmath>
#include <stdexcept>

namespace gsttcm {

const GoldenParams& golden_params() {
    static const GoldenParams p = [] {
        GoldenParams g{};
        const double s5 = std::sqrt(5.0);
        g.theta = (1.0 + s5) / 2.0;
        g.theta_bar = 1.0 - g.theta;
        g.alpha = Complex(1.0, 1.0 - g.theta);
        g.alpha_bar = Complex(1.0, 1.0 - g.theta_bar);
        g.scale = 1.0 / s5;
        return g;
    }();
    return p;
}

Mat2c golden_encode(GaussianInt a, GaussianInt b, GaussianInt c, GaussianInt d) {
    const auto& p = golden_params();
    const Complex ca = a.to_complex(), cb = b.to_complex(), cc = c.to_complex(), cd = d.to_complex();
    const Complex i(0.0, 1.0);
    Mat2c x;
    x(0, 0) = p.alpha * (ca + cb * p.theta);
    x(0, 1) = p.alpha * (cc + cd * p.theta);
    x(1, 0) = i * p.alpha_bar * (cc + cd * p.theta_bar);
    x(1, 1) = p.alpha_bar * (ca + cb * p.theta_bar);
    return p.scale * x;
}

const Mat8& rotation_matrix() {
    static const Mat8 r = [] {
        const auto& p = golden_params();
        const double t = p.theta, tb = p.theta_bar;
        Mat8 m;
        m << 1, -tb, t, 1, 0, 0, 0, 0,
             tb, 1, -1, t, 0, 0, 0, 0,
             0, 0, 0, 0, -t, -1, 1, -tb,
             0, 0, 0, 0, 1, -t, tb, 1,
             0, 0, 0, 0, 1, -tb, t, 1,
             0, 0, 0, 0, tb, 1, -1, t,
             1, -t, tb, 1, 0, 0, 0, 0,
             t, 1, -1, tb, 0, 0, 0, 0;
        return Mat8(p.scale * m);
    }();
    return r;
}

Vec8 vectorize(const Mat2c& x) {
    Vec8 v;
    v << x(0, 0).real(), x(0, 0).imag(), x(1, 0).real(), x(1, 0).imag(),
         x(0, 1).real(), x(0, 1).imag(), x(1, 1).real(), x(1, 1).imag();
    return v;
}

Mat2c devectorize(const Vec8& v) {
    Mat2c x;
    x(0, 0) = Complex(v(0), v(1));
    x(1, 0) = Complex(v(2), v(3));
    x(0, 1) = Complex(v(4), v(5));
    x(1, 1) = Complex(v(6), v(7));
    return x;
}

const Mat2c& golden_B() { return golden_B_pow(1); }

const Mat2c& golden_B_pow(int k) {
    static const std::array<Mat2c, 5> pows = [] {
        const auto& p = golden_params();
        const Complex i(0.0, 1.0);
        Mat2c b;
        b(0, 0) = i * (1.0 - p.theta);
        b(0, 1) = Complex(1.0 - p.theta, 0.0);
        b(1, 0) = i * p.theta;
        b(1, 1) = i * p.theta;
        std::array<Mat2c, 5> out;
        out[0] = Mat2c::Identity();
        for (int j = 1; j <= 4; ++j) out[j] = out[j - 1] * b;
        // Startup sanity: det(B) = 1+i, hence det(B^4) = (1+i)^4 = -4.
        if (std::abs(out[1].determinant() - Complex(1.0, 1.0)) > 1e-12 ||
            std::abs(out[4].determinant() - Complex(-4.0, 0.0)) > 1e-12)
            throw std::logic_error("golden B invariants violated");
        return out;
    }();
    if (k < 0 || k > 4) throw std::domain_error("B power must be in 0..4");
    return pows[static_cast<std::size_t>(k)];
}

Mat2c subcode_codeword(const Mat2c& x, int k) {
    if (k < 1 || k > 4) throw std::domain_error("subcode level must be in 1..4");
    return x * golden_B_pow(k);
}

double det_metric(const Mat2c& x) { return std::norm(x.determinant()); }

Mat2c golden_encode_vector(const LatticeVector& v) {
    return golden_encode({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]});
}

}  // namespace gsttcm
