#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gsttcm/golden.hpp"

namespace gsttcm {

/// Per-frame random substream: the engine seed is derived from
/// (master seed, frame index) with a splitmix64 mix, so frame-parallel runs
/// are reproducible regardless of scheduling.
class FrameRng {
  public:
    FrameRng(std::uint64_t master_seed, std::uint64_t frame_index);

    double uniform();            // [0, 1)
    double gaussian();           // standard normal, Box-Muller
    std::uint32_t bit();         // fair bit
    std::uint32_t uniform_int(std::uint32_t n);  // [0, n)

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// sigma^2 per real dimension for SNR = n_T E_b / N_0 in dB, n_T = 2.
double sigma2_from_snr_db(double snr_db, double eb);
double snr_db_from_sigma2(double sigma2, double eb);

struct NoiseModel {
    double sigma2 = 0.0;  // per real dimension
    double n0() const { return 2.0 * sigma2; }
};

/// 2x2 slow-fading draw: i.i.d. circularly symmetric complex Gaussian,
/// unit variance per entry.
Mat2c draw_channel(FrameRng& rng);

/// 8x8 real matrix with vectorize(H X) = realmat * vectorize(X) for all X.
Mat8 real_channel_matrix(const Mat2c& h);

/// Y_t = H X_t + Z_t, Z entries complex Gaussian with variance N0.
std::vector<Mat2c> transmit(const std::vector<Mat2c>& x_seq, const Mat2c& h,
                            const NoiseModel& noise, FrameRng& rng);

}  // namespace gsttcm
