#include "gsttcm/lattice.hpp"

#include <stdexcept>

namespace gsttcm {

namespace {

// All binary words are in the information-symbol coordinate order
// (Re a, Im a, Re b, Im b, Re c, Im c, Re d, Im d). The rows below were
// validated against a brute-force determinant table: every codeword of the
// level-k code labels a residue class whose minimum codeword determinant is
// at least 2^k times the code minimum.
const Bits8 kH[4][2] = {
    {{0, 0, 0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, 0, 1, 0, 0}},  // [C0/C1]
    {{0, 0, 0, 0, 0, 0, 1, 1}, {0, 0, 1, 0, 0, 0, 0, 1}},  // [C1/C2]
    {{0, 1, 0, 0, 0, 1, 1, 1}, {0, 0, 1, 0, 1, 1, 0, 1}},  // [C2/C3]
    {{0, 0, 1, 1, 0, 0, 1, 1}, {1, 1, 1, 1, 1, 1, 1, 1}},  // [C3/C4]
};

std::vector<Bits8> generator_rows(int level) {
    switch (level) {
        case 0: {
            std::vector<Bits8> g(8, Bits8{});
            for (int i = 0; i < 8; ++i) g[i][i] = 1;
            return g;
        }
        case 1:
            return {{1, 0, 0, 0, 0, 1, 0, 0},
                    {0, 1, 0, 0, 0, 1, 0, 0},
                    {0, 0, 0, 0, 1, 1, 0, 0},
                    {0, 0, 0, 1, 0, 0, 0, 1},
                    {0, 0, 0, 0, 0, 0, 1, 1},
                    {0, 0, 1, 0, 0, 0, 0, 1}};
        case 2:
            return {{0, 1, 0, 0, 0, 1, 1, 1},
                    {0, 0, 1, 0, 1, 1, 0, 1},
                    {0, 0, 1, 1, 0, 0, 1, 1},
                    {1, 1, 1, 1, 1, 1, 1, 1}};
        case 3:
            return {{0, 0, 1, 1, 0, 0, 1, 1}, {1, 1, 1, 1, 1, 1, 1, 1}};
        case 4:
            return {};
        default:
            throw std::domain_error("partition level must be in 0..4");
    }
}

BinaryCode build_code(int level) {
    BinaryCode c;
    c.level = level;
    c.generator = generator_rows(level);
    c.k = static_cast<int>(c.generator.size());
    c.codewords.reserve(std::size_t{1} << c.k);
    for (unsigned m = 0; m < (1u << c.k); ++m) {
        Bits8 w{};
        for (int r = 0; r < c.k; ++r)
            if (m >> r & 1u) w = xor_bits(w, c.generator[r]);
        c.codewords.push_back(w);
        c.membership.set(pack_bits(w));
    }
    return c;
}

}  // namespace

const BinaryCode& code_at_level(int level) {
    if (level < 0 || level > 4) throw std::domain_error("partition level must be in 0..4");
    static const std::array<BinaryCode, 5> chain = {
        build_code(0), build_code(1), build_code(2), build_code(3), build_code(4)};
    return chain[static_cast<std::size_t>(level)];
}

const Bits8& coset_generator_row(int level, int which) {
    if (level < 0 || level > 3 || which < 0 || which > 1)
        throw std::domain_error("coset generator row out of range");
    return kH[level][which];
}

std::vector<Bits8> coset_generator_matrix(int ell0, int ell) {
    make_partition(ell0, ell);
    std::vector<Bits8> rows;
    rows.reserve(2 * static_cast<std::size_t>(ell));
    for (int k = ell0; k < ell0 + ell; ++k) {
        rows.push_back(kH[k][0]);
        rows.push_back(kH[k][1]);
    }
    return rows;
}

Bits8 coset_leader(const std::vector<std::uint8_t>& bits, int ell0, int ell) {
    const auto rows = coset_generator_matrix(ell0, ell);
    if (bits.size() != rows.size()) throw std::invalid_argument("coset_leader: bit tuple length must be 2l");
    Bits8 c{};
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (bits[i] & 1u) c = xor_bits(c, rows[i]);
    return c;
}

bool is_in_lattice(const LatticeVector& v, int level) {
    Bits8 w{};
    for (int i = 0; i < 8; ++i) w[i] = static_cast<std::uint8_t>(((v[i] % 2) + 2) % 2);
    return code_at_level(level).contains(w);
}

LatticeVector construction_a(const std::array<int, 8>& u, const Bits8& c) {
    LatticeVector x{};
    for (int i = 0; i < 8; ++i) x[i] = 2 * u[i] + static_cast<int>(c[i]);
    return x;
}

PartitionConfig make_partition(int ell0, int ell) {
    if (ell0 < 0 || ell < 1 || ell0 + ell > 4)
        throw std::domain_error("partition levels must satisfy 0 <= l0, 1 <= l, l0 + l <= 4");
    return PartitionConfig{ell0, ell};
}

}  // namespace gsttcm
