#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <vector>

namespace gsttcm {

/// One component per entry, values 0/1. Component 0 is the first coordinate
/// of the vectorized codeword (Re a).
using Bits8 = std::array<std::uint8_t, 8>;

/// Integer point in the unrotated Z^8 coordinate frame.
using LatticeVector = std::array<int, 8>;

inline Bits8 xor_bits(const Bits8& a, const Bits8& b) {
    Bits8 r{};
    for (int i = 0; i < 8; ++i) r[i] = static_cast<std::uint8_t>(a[i] ^ b[i]);
    return r;
}

/// Packs component i into bit i (LSB-first).
inline unsigned pack_bits(const Bits8& b) {
    unsigned w = 0;
    for (int i = 0; i < 8; ++i) w |= static_cast<unsigned>(b[i] & 1u) << i;
    return w;
}

inline Bits8 unpack_bits(unsigned w) {
    Bits8 b{};
    for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>((w >> i) & 1u);
    return b;
}

/// Linear binary code C_level of the partition chain
/// Z^8 > D4^2 > E8 > L8 > 2Z^8.
struct BinaryCode {
    int n = 8;
    int k = 0;
    int level = 0;
    std::vector<Bits8> generator;        // k rows
    std::vector<Bits8> codewords;        // all 2^k codewords
    std::bitset<256> membership;         // packed-word lookup

    bool contains(const Bits8& w) const { return membership.test(pack_bits(w)); }
};

/// C_0 = (8,8,1), C_1 = (8,6,2), C_2 = (8,4,4), C_3 = (8,2,4), C_4 = (8,0,inf).
const BinaryCode& code_at_level(int level);

/// Coset generating vectors h^(k)_1, h^(k)_2 of [C_k/C_{k+1}], k = 0..3.
const Bits8& coset_generator_row(int level, int which);

/// H(l0, l0+l): rows h^(l0)_1, h^(l0)_2, ..., h^(l0+l-1)_1, h^(l0+l-1)_2.
std::vector<Bits8> coset_generator_matrix(int ell0, int ell);

/// Product of a 2l-bit row with H(l0, l0+l) over GF(2). bits[0] multiplies
/// the first stacked row h^(l0)_1 (canonical wire order).
Bits8 coset_leader(const std::vector<std::uint8_t>& bits, int ell0, int ell);

/// True iff (v mod 2) is a codeword of C_level.
bool is_in_lattice(const LatticeVector& v, int level);

/// x_i = 2 u_i + c_i with c lifted to {0,1}. The caller guarantees c is a
/// codeword of the intended code.
LatticeVector construction_a(const std::array<int, 8>& u, const Bits8& c);

/// Partition pair Lambda_{l0} / Lambda_{l0+l} with the derived bit budgets.
struct PartitionConfig {
    int ell0 = 0;
    int ell = 1;

    int num_cosets() const { return 1 << (2 * ell); }          // 4^l
    int q1() const { return 2; }
    int q2() const { return 2 * (4 - ell - ell0); }
    int q3(int eta) const { return 4 * (eta - 2); }
};

/// Validates 0 <= l0, 1 <= l, l0 + l <= 4; throws std::domain_error otherwise.
PartitionConfig make_partition(int ell0, int ell);

}  // namespace gsttcm
