#pragma once

#include <Eigen/Dense>
#include <complex>

#include "gsttcm/lattice.hpp"

namespace gsttcm {

using Complex = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

struct GaussianInt {
    long re = 0;
    long im = 0;

    friend GaussianInt operator+(GaussianInt a, GaussianInt b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussianInt operator-(GaussianInt a, GaussianInt b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussianInt operator*(GaussianInt a, GaussianInt b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(GaussianInt a, GaussianInt b) { return a.re == b.re && a.im == b.im; }
    Complex to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

/// Algebraic constants of the code: theta = (1+sqrt5)/2, theta_bar = 1-theta,
/// alpha = 1+i-i*theta, alpha_bar = 1+i(1-theta_bar), scale = 1/sqrt5.
struct GoldenParams {
    double theta;
    double theta_bar;
    Complex alpha;
    Complex alpha_bar;
    double scale;
};

const GoldenParams& golden_params();

/// 2x2 codeword from four Gaussian-integer information symbols, including
/// the 1/sqrt5 energy normalization.
Mat2c golden_encode(GaussianInt a, GaussianInt b, GaussianInt c, GaussianInt d);

/// Fixed 8x8 rotation with the 1/sqrt5 factor applied; maps the symbol
/// vector u = [Re a, Im a, Re b, ..., Im d] to the vectorized codeword.
const Mat8& rotation_matrix();

/// Ordering [Re x11, Im x11, Re x21, Im x21, Re x12, Im x12, Re x22, Im x22].
Vec8 vectorize(const Mat2c& x);
Mat2c devectorize(const Vec8& v);

/// Ideal generator B with det(B) = 1+i. Right multiplication by B maps the
/// code lattice into itself and doubles |det X|^2 per application; the
/// level-4 subcode is a rescaled copy of the full code.
const Mat2c& golden_B();
const Mat2c& golden_B_pow(int k);  // k in 0..4

/// X * B^k (unnormalized B powers), k in 1..4.
Mat2c subcode_codeword(const Mat2c& x, int k);

/// det(X X^dagger) = |det X|^2.
double det_metric(const Mat2c& x);

/// Codeword for an integer lattice vector in the unrotated frame:
/// a = v0 + i v1, b = v2 + i v3, c = v4 + i v5, d = v6 + i v7.
Mat2c golden_encode_vector(const LatticeVector& v);

}  // namespace gsttcm
