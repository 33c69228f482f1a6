#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gsttcm/constellation.hpp"
#include "gsttcm/lattice.hpp"

namespace gsttcm {

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecodeResult {
    std::array<int, 8> u{};
    double metric = 0.0;
    int coset_index = -1;
    std::uint64_t nodes = 0;
};

/// Closest-point search on the lattice { M u : u in Z^n }, n <= 8.
/// Schnorr-Euchner depth-first enumeration seeded with the rounded
/// least-squares point, shrink-on-improve radius, lexicographic tie-break
/// on u. Factorization happens once; instances are immutable and shareable.
class LatticeDecoder {
  public:
    explicit LatticeDecoder(const Eigen::MatrixXd& basis);

    int dim() const { return n_; }
    DecodeResult closest(const Eigen::VectorXd& y) const;

    /// Target already multiplied by Q^T (for shared-factorization callers).
    DecodeResult closest_rotated(const std::array<double, 8>& yp) const;
    std::array<double, 8> rotate(const Eigen::VectorXd& y) const;
    /// Upper-triangular factor, R(i,j) for j >= i.
    double rfactor(int i, int j) const { return r_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }

    static constexpr std::uint64_t kNodeLimit = 1000000;

  private:
    int n_;
    std::array<std::array<double, 8>, 8> r_{};   // upper triangular
    std::array<std::array<double, 8>, 8> qt_{};  // Q^T
};

struct SearchBasis {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd offset;
};

/// Globally minimizes ||y - M u - offset||^2 over u in Z^n.
DecodeResult closest_point(const Eigen::VectorXd& y, const SearchBasis& basis);

struct CosetDecodeResult {
    int best = -1;
    std::vector<double> metrics;          // d_j^2 per coset
    std::vector<DecodeResult> results;    // u-domain survivor per coset
    std::vector<LatticeVector> points;    // x = 2u + c^(j)
    std::uint64_t nodes = 0;
};

/// Finite-constellation decoding by coset decomposition: for each coset
/// leader c, shifts y by basis*(c - centering) and searches 2Z^8.
/// `channel_basis` is the 8x8 real matrix mapping lattice coordinates to
/// the received space (H R for the Golden code chain).
CosetDecodeResult coset_decode(const Vec8& y, const Mat8& channel_basis,
                               const std::vector<Bits8>& cosets,
                               const Vec8& centering = Vec8::Zero());

struct BranchMetric {
    double metric = 0.0;
    int b2_index = 0;
    std::array<int, 8> u{};
    LatticeVector v{};  // 2u + c1 xor c2
};

struct BranchMetricTable {
    std::vector<BranchMetric> entries;  // indexed by the trellis coset label
    std::uint64_t decode_calls = 0;
    std::uint64_t nodes = 0;
};

/// Precomputed per-frame state shared by all trellis sections: the 2Z^8
/// decoder for basis 2 H R plus the coset shift tables.
class BranchMetricComputer {
  public:
    BranchMetricComputer(const Mat8& channel_basis, PartitionConfig cfg,
                         const ConstellationLabeling& labeling);

    /// One metric per trellis coset. Index j encodes the output labels
    /// (alpha_1 ... alpha_l) base 4 with alpha_1 in the most significant
    /// digit; each alpha maps to a bit pair (hi, lo) multiplying
    /// (h^(k)_1, h^(k)_2) of H_c1.
    BranchMetricTable compute(const Vec8& y) const;

    int num_trellis_cosets() const { return cfg_.num_cosets(); }
    int num_sublattice_cosets() const { return static_cast<int>(leaders_.size()); }

  private:
    PartitionConfig cfg_;
    LatticeDecoder dec2_;            // basis 2 H R
    Mat8 hr_;
    Vec8 hr_center_;                 // H R * centering
    std::vector<Bits8> hc1_;
    std::vector<Bits8> leaders_;     // sublattice coset leaders (b2 order)
    std::vector<Bits8> cosets_;      // c1 xor c2, [j * n_sub + m]
    std::vector<std::array<double, 8>> shift_;  // Qt * H R * lift(c)
};

/// Bit-pair wire order for a Z4 label: (hi, lo) with hi multiplying h_1.
inline void alpha_to_bits(int alpha, std::uint8_t& hi, std::uint8_t& lo) {
    hi = static_cast<std::uint8_t>((alpha >> 1) & 1);
    lo = static_cast<std::uint8_t>(alpha & 1);
}

/// c1 for a trellis coset index (base-4 alpha digits, alpha_1 most
/// significant) against the stacked rows H(l0, l0+l).
Bits8 trellis_coset_leader(int index, const std::vector<Bits8>& hc1_rows);

}  // namespace gsttcm
