#include "gsttcm/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace gsttcm {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

FrameRng::FrameRng(std::uint64_t master_seed, std::uint64_t frame_index)
    : engine_(splitmix64(splitmix64(master_seed) ^ (frame_index * 0xd1342543de82ef95ULL + 1))) {}

double FrameRng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double FrameRng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::uint32_t FrameRng::bit() { return static_cast<std::uint32_t>(engine_() >> 63); }

std::uint32_t FrameRng::uniform_int(std::uint32_t n) {
    if (n == 0) throw std::domain_error("uniform_int: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do { x = engine_(); } while (x >= limit);
    return static_cast<std::uint32_t>(x % n);
}

double sigma2_from_snr_db(double snr_db, double eb) {
    return eb * std::pow(10.0, -snr_db / 10.0);  // (n_T E_b / 2) with n_T = 2
}

double snr_db_from_sigma2(double sigma2, double eb) {
    return -10.0 * std::log10(sigma2 / eb);
}

Mat2c draw_channel(FrameRng& rng) {
    Mat2c h;
    const double s = std::sqrt(0.5);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) h(r, c) = Complex(s * rng.gaussian(), s * rng.gaussian());
    return h;
}

Mat8 real_channel_matrix(const Mat2c& h) {
    Mat8 m = Mat8::Zero();
    for (int blk = 0; blk < 2; ++blk) {
        const int o = 4 * blk;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                const double re = h(r, c).real(), im = h(r, c).imag();
                m(o + 2 * r, o + 2 * c) = re;
                m(o + 2 * r, o + 2 * c + 1) = -im;
                m(o + 2 * r + 1, o + 2 * c) = im;
                m(o + 2 * r + 1, o + 2 * c + 1) = re;
            }
    }
    return m;
}

std::vector<Mat2c> transmit(const std::vector<Mat2c>& x_seq, const Mat2c& h,
                            const NoiseModel& noise, FrameRng& rng) {
    std::vector<Mat2c> y;
    y.reserve(x_seq.size());
    const double s = std::sqrt(noise.sigma2);
    for (const auto& x : x_seq) {
        Mat2c z;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) z(r, c) = Complex(s * rng.gaussian(), s * rng.gaussian());
        y.push_back(h * x + z);
    }
    return y;
}

}  // namespace gsttcm
