#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "gsttcm/golden.hpp"
#include "gsttcm/lattice.hpp"

namespace gsttcm {

enum class QamShape { Square, Rectangular, Cross };

/// Q-QAM carved from Z[i] in the positive quadrant, minimum distance 1.
/// The centering offset is subtracted at the channel interface only.
struct QamSpec {
    int eta = 2;
    QamShape shape = QamShape::Square;
    std::vector<std::pair<int, int>> points;  // (re, im), positive quadrant
    Complex centering;                        // centroid
    double energy = 0.0;                      // centered average energy E_s

    bool contains(int re, int im) const;
};

/// eta in 2..7. 8-QAM is 4-PAM x 2-PAM; 32/128 are standard crosses.
const QamSpec& carve_qam(int eta);

/// Bit labeling of the finite constellation Lambda_{l0+l} cap B, B = B_QAM^4.
/// b2 (q2 bits) selects the sublattice coset c = b2 * H_c2; b3 (q3 bits)
/// labels 2u. For square/rectangular QAM each component of u carries an
/// independent Gray code, components in vectorize order, first component's
/// bits first. For cross QAM, b3 is split into four (eta-2)-bit groups, one
/// per component pair, indexing the valid u pairs of that pair's coset class
/// in lexicographic order.
class ConstellationLabeling {
  public:
    ConstellationLabeling(PartitionConfig cfg, int eta);

    int q2() const { return q2_; }
    int q3() const { return q3_; }
    const std::vector<Bits8>& hc2() const { return hc2_; }
    const QamSpec& qam() const { return *qam_; }
    /// Per-component centering, (Re, Im) of the QAM centroid repeated.
    const Vec8& centering() const { return centering_; }

    /// bits = (b2, b3) of length q2 + q3.
    LatticeVector encode(const std::vector<std::uint8_t>& bits) const;

    /// Inverse of encode. Out-of-region points are clamped to the nearest
    /// valid u before bit recovery; *clamped is set when that happens.
    std::vector<std::uint8_t> decode(const LatticeVector& v, bool* clamped = nullptr) const;

    Bits8 sublattice_coset(const std::vector<std::uint8_t>& b2) const;

    /// b3 <-> u for square/rectangular QAM, where u does not depend on the
    /// coset (throws for cross shapes).
    std::array<int, 8> u_from_b3(const std::vector<std::uint8_t>& b3) const;
    std::vector<std::uint8_t> b3_from_u(const std::array<int, 8>& u, bool* clamped = nullptr) const;

    /// All 2^q2 sublattice coset leaders indexed by the packed b2 bits
    /// (bit 0 of the index = first b2 bit).
    const std::vector<Bits8>& coset_leaders() const { return leaders_; }

  private:
    PartitionConfig cfg_;
    int eta_;
    int q2_;
    int q3_;
    const QamSpec* qam_;
    std::vector<Bits8> hc2_;
    std::vector<Bits8> leaders_;
    Vec8 centering_;
    // Cross shapes: per coset class (ce, co) the valid (u_e, u_o) pairs.
    std::array<std::vector<std::pair<int, int>>, 4> pair_table_;
    std::array<std::map<std::pair<int, int>, int>, 4> pair_index_;
};

/// Mixed-QAM sizing for the uncoded reference schemes.
struct UncodedProfile {
    int bpcu = 0;
    std::array<int, 4> eta_per_symbol{};  // (a, b, c, d)
    double es = 0.0;                      // resulting average symbol energy
    double q() const { return bpcu / 2.0; }
};

/// bpcu in {5, 6, 7, 10, 12}.
UncodedProfile uncoded_profile(int bpcu);

/// Gray code helpers (reflected binary).
inline unsigned gray_encode(unsigned n) { return n ^ (n >> 1); }
inline unsigned gray_decode(unsigned g) {
    unsigned n = 0;
    for (; g; g >>= 1) n ^= g;
    return n;
}

}  // namespace gsttcm
