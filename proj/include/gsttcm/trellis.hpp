#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "gsttcm/constellation.hpp"
#include "gsttcm/golden.hpp"
#include "gsttcm/sphere.hpp"

namespace gsttcm {

/// Z4 generator polynomial, coefficient of D^d at index d.
using QuaternaryPoly = std::array<int, 4>;

/// Rate-1/l quaternary convolutional encoder. State numbering puts the most
/// recent input symbol in the low base-4 digit:
/// state = beta_{t-1} + 4 beta_{t-2} + 16 beta_{t-3}.
struct TrellisSpec {
    std::vector<QuaternaryPoly> polys;
    int ell = 0;     // outputs per step
    int nu = 0;      // memory
    int states = 1;  // 4^nu
    std::vector<std::array<int, 4>> next;    // [state][beta]
    std::vector<std::array<int, 4>> output;  // [state][beta] -> coset label index
};

TrellisSpec build_trellis(const std::vector<QuaternaryPoly>& polys);

/// Full GST-TCM configuration: partition, trellis, QAM and frame length.
struct GstTcmConfig {
    PartitionConfig partition;
    TrellisSpec trellis;
    int eta = 4;
    int frame_len = 130;
    std::shared_ptr<const ConstellationLabeling> labeling;
    std::vector<Bits8> hc1;

    int q1() const { return 2; }
    int q2() const { return labeling->q2(); }
    int q3() const { return labeling->q3(); }
    int bits_per_slot() const { return q1() + q2() + q3(); }
    int frame_bits() const { return frame_len * bits_per_slot(); }
};

GstTcmConfig make_gst_tcm_config(PartitionConfig partition, std::vector<QuaternaryPoly> polys,
                                 int eta, int frame_len);

/// Per-slot layout (b1: q1, b2: q2, b3: q3), slots concatenated.
using FrameBits = std::vector<std::uint8_t>;

struct GstTcmEncoded {
    std::vector<Mat2c> codewords;
    std::vector<LatticeVector> points;  // v = 2u + c1 xor c2 per slot
    int final_state = 0;
};

/// Trellis starts in state 0; X_t = devectorize(R (v_t - centering)).
GstTcmEncoded gst_tcm_encode(const FrameBits& bits, const GstTcmConfig& cfg);

struct ViterbiResult {
    FrameBits bits;
    double metric = 0.0;
    int end_state = 0;
    std::uint64_t decode_calls = 0;
    std::uint64_t nodes = 0;
    int out_of_region = 0;  // slots whose survivor u fell outside B
};

/// Add-compare-select over the frame with sphere-decoded branch metrics.
/// Start state 0 forced, best end state selected (frames are not
/// terminated). `y_seq` holds the vectorized received matrices.
ViterbiResult viterbi_decode(const std::vector<Vec8>& y_seq, const Mat8& h_real,
                             const GstTcmConfig& cfg);

struct ErrorEvent {
    int length = 0;
    std::vector<int> states;  // intermediate states, excludes the zero ends
    std::vector<int> labels;  // coset label index per branch
};

/// All simple error events (leave state 0 once, remerge once) up to
/// max_len branches.
std::vector<ErrorEvent> enumerate_simple_error_events(const TrellisSpec& trellis, int max_len);

}  // namespace gsttcm
