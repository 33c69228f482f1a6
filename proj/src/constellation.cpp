#include "gsttcm/constellation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gsttcm {

bool QamSpec::contains(int re, int im) const {
    for (const auto& p : points)
        if (p.first == re && p.second == im) return true;
    return false;
}

namespace {

QamSpec build_qam(int eta) {
    QamSpec q;
    q.eta = eta;
    auto add_rect = [&](int w, int h) {
        for (int x = 0; x < w; ++x)
            for (int y = 0; y < h; ++y) q.points.emplace_back(x, y);
    };
    switch (eta) {
        case 2: case 4: case 6: {
            q.shape = QamShape::Square;
            const int side = 1 << (eta / 2);
            add_rect(side, side);
            break;
        }
        case 3: {
            q.shape = QamShape::Rectangular;  // 4-PAM x 2-PAM
            add_rect(4, 2);
            break;
        }
        case 5: case 7: {
            q.shape = QamShape::Cross;
            const int side = (eta == 5) ? 6 : 12;
            const int cut = (eta == 5) ? 1 : 2;
            for (int x = 0; x < side; ++x)
                for (int y = 0; y < side; ++y) {
                    const bool corner = (x < cut || x >= side - cut) && (y < cut || y >= side - cut);
                    if (!corner) q.points.emplace_back(x, y);
                }
            break;
        }
        default:
            throw std::domain_error("carve_qam: eta must be in 2..7");
    }
    double sre = 0.0, sim = 0.0;
    for (const auto& p : q.points) { sre += p.first; sim += p.second; }
    const double n = static_cast<double>(q.points.size());
    q.centering = Complex(sre / n, sim / n);
    double e = 0.0;
    for (const auto& p : q.points) {
        const double dr = p.first - q.centering.real();
        const double di = p.second - q.centering.imag();
        e += dr * dr + di * di;
    }
    q.energy = e / n;
    return q;
}

// Bits carried by component j of u (vectorize order) for square/rect QAM.
int component_bits(int eta, int comp) {
    if (eta % 2 == 0) return eta / 2 - 1;
    return (comp % 2 == 0) ? (eta + 1) / 2 - 1 : eta / 2 - 1;
}

unsigned take_group(const std::vector<std::uint8_t>& bits, std::size_t& pos, int n) {
    unsigned g = 0;
    for (int i = 0; i < n; ++i) g |= static_cast<unsigned>(bits[pos++] & 1u) << i;
    return g;
}

void put_group(std::vector<std::uint8_t>& bits, unsigned g, int n) {
    for (int i = 0; i < n; ++i) bits.push_back(static_cast<std::uint8_t>((g >> i) & 1u));
}

}  // namespace

const QamSpec& carve_qam(int eta) {
    if (eta < 2 || eta > 7) throw std::domain_error("carve_qam: eta must be in 2..7");
    static const std::array<QamSpec, 6> specs = [] {
        std::array<QamSpec, 6> s;
        for (int e = 2; e <= 7; ++e) s[static_cast<std::size_t>(e - 2)] = build_qam(e);
        return s;
    }();
    return specs[static_cast<std::size_t>(eta - 2)];
}

ConstellationLabeling::ConstellationLabeling(PartitionConfig cfg, int eta)
    : cfg_(cfg), eta_(eta), q2_(cfg.q2()), q3_(cfg.q3(eta)), qam_(&carve_qam(eta)) {
    if (q3_ < 0) throw std::domain_error("labeling requires eta >= 2");
    for (int k = cfg_.ell0 + cfg_.ell; k <= 3; ++k) {
        hc2_.push_back(coset_generator_row(k, 0));
        hc2_.push_back(coset_generator_row(k, 1));
    }
    leaders_.resize(std::size_t{1} << q2_);
    for (unsigned m = 0; m < leaders_.size(); ++m) {
        Bits8 c{};
        for (int r = 0; r < q2_; ++r)
            if (m >> r & 1u) c = xor_bits(c, hc2_[static_cast<std::size_t>(r)]);
        leaders_[m] = c;
    }
    for (int i = 0; i < 4; ++i) {
        centering_(2 * i) = qam_->centering.real();
        centering_(2 * i + 1) = qam_->centering.imag();
    }
    if (qam_->shape == QamShape::Cross) {
        for (int cls = 0; cls < 4; ++cls) {
            const int ce = cls & 1, co = cls >> 1;
            auto& tab = pair_table_[static_cast<std::size_t>(cls)];
            for (int ue = 0; 2 * ue + ce < 16; ++ue)
                for (int uo = 0; 2 * uo + co < 16; ++uo)
                    if (qam_->contains(2 * ue + ce, 2 * uo + co)) tab.emplace_back(ue, uo);
            if (tab.size() != (std::size_t{1} << (eta_ - 2)))
                throw std::logic_error("cross coset class size mismatch");
            for (int i = 0; i < static_cast<int>(tab.size()); ++i)
                pair_index_[static_cast<std::size_t>(cls)][tab[static_cast<std::size_t>(i)]] = i;
        }
    }
}

Bits8 ConstellationLabeling::sublattice_coset(const std::vector<std::uint8_t>& b2) const {
    if (static_cast<int>(b2.size()) != q2_) throw std::invalid_argument("b2 length mismatch");
    unsigned m = 0;
    for (int i = 0; i < q2_; ++i) m |= static_cast<unsigned>(b2[static_cast<std::size_t>(i)] & 1u) << i;
    return leaders_[m];
}

LatticeVector ConstellationLabeling::encode(const std::vector<std::uint8_t>& bits) const {
    if (static_cast<int>(bits.size()) != q2_ + q3_)
        throw std::invalid_argument("label length must be q2 + q3");
    std::size_t pos = 0;
    const unsigned m = take_group(bits, pos, q2_);
    const Bits8 c = leaders_[m];
    std::array<int, 8> u{};
    if (qam_->shape == QamShape::Cross) {
        for (int p = 0; p < 4; ++p) {
            const int cls = c[2 * p] + 2 * c[2 * p + 1];
            const unsigned g = take_group(bits, pos, eta_ - 2);
            const auto& pr = pair_table_[static_cast<std::size_t>(cls)][g];
            u[static_cast<std::size_t>(2 * p)] = pr.first;
            u[static_cast<std::size_t>(2 * p + 1)] = pr.second;
        }
    } else {
        for (int j = 0; j < 8; ++j) {
            const int nb = component_bits(eta_, j);
            const unsigned g = take_group(bits, pos, nb);
            u[static_cast<std::size_t>(j)] = static_cast<int>(gray_decode(g));
        }
    }
    return construction_a(u, c);
}

std::vector<std::uint8_t> ConstellationLabeling::decode(const LatticeVector& v, bool* clamped) const {
    bool any_clamp = false;
    Bits8 c{};
    for (int i = 0; i < 8; ++i) c[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(((v[static_cast<std::size_t>(i)] % 2) + 2) % 2);
    const unsigned cw = pack_bits(c);
    int b2_index = -1;
    for (std::size_t m = 0; m < leaders_.size(); ++m)
        if (pack_bits(leaders_[m]) == cw) { b2_index = static_cast<int>(m); break; }
    if (b2_index < 0) throw std::invalid_argument("point is not in the labeled sublattice");
    std::vector<std::uint8_t> bits;
    bits.reserve(static_cast<std::size_t>(q2_ + q3_));
    put_group(bits, static_cast<unsigned>(b2_index), q2_);
    if (qam_->shape == QamShape::Cross) {
        for (int p = 0; p < 4; ++p) {
            const int cls = c[static_cast<std::size_t>(2 * p)] + 2 * c[static_cast<std::size_t>(2 * p + 1)];
            std::pair<int, int> pr{(v[static_cast<std::size_t>(2 * p)] - c[static_cast<std::size_t>(2 * p)]) / 2,
                                   (v[static_cast<std::size_t>(2 * p + 1)] - c[static_cast<std::size_t>(2 * p + 1)]) / 2};
            const auto& idx = pair_index_[static_cast<std::size_t>(cls)];
            auto it = idx.find(pr);
            int g;
            if (it != idx.end()) {
                g = it->second;
            } else {
                any_clamp = true;
                const auto& tab = pair_table_[static_cast<std::size_t>(cls)];
                double best = std::numeric_limits<double>::infinity();
                g = 0;
                for (int i = 0; i < static_cast<int>(tab.size()); ++i) {
                    const double de = tab[static_cast<std::size_t>(i)].first - pr.first;
                    const double do_ = tab[static_cast<std::size_t>(i)].second - pr.second;
                    const double d = de * de + do_ * do_;
                    if (d < best) { best = d; g = i; }
                }
            }
            put_group(bits, static_cast<unsigned>(g), eta_ - 2);
        }
    } else {
        for (int j = 0; j < 8; ++j) {
            const int nb = component_bits(eta_, j);
            int u = (v[static_cast<std::size_t>(j)] - c[static_cast<std::size_t>(j)]) / 2;
            const int hi = (1 << nb) - 1;
            if (u < 0) { u = 0; any_clamp = true; }
            if (u > hi) { u = hi; any_clamp = true; }
            put_group(bits, gray_encode(static_cast<unsigned>(u)), nb);
        }
    }
    if (clamped) *clamped = any_clamp;
    return bits;
}

std::array<int, 8> ConstellationLabeling::u_from_b3(const std::vector<std::uint8_t>& b3) const {
    if (qam_->shape == QamShape::Cross)
        throw std::logic_error("u_from_b3 is defined for square/rectangular QAM only");
    if (static_cast<int>(b3.size()) != q3_) throw std::invalid_argument("b3 length mismatch");
    std::array<int, 8> u{};
    std::size_t pos = 0;
    for (int j = 0; j < 8; ++j) {
        const int nb = component_bits(eta_, j);
        u[static_cast<std::size_t>(j)] = static_cast<int>(gray_decode(take_group(b3, pos, nb)));
    }
    return u;
}

std::vector<std::uint8_t> ConstellationLabeling::b3_from_u(const std::array<int, 8>& u, bool* clamped) const {
    if (qam_->shape == QamShape::Cross)
        throw std::logic_error("b3_from_u is defined for square/rectangular QAM only");
    bool any = false;
    std::vector<std::uint8_t> bits;
    bits.reserve(static_cast<std::size_t>(q3_));
    for (int j = 0; j < 8; ++j) {
        const int nb = component_bits(eta_, j);
        int uj = u[static_cast<std::size_t>(j)];
        const int hi = (1 << nb) - 1;
        if (uj < 0) { uj = 0; any = true; }
        if (uj > hi) { uj = hi; any = true; }
        put_group(bits, gray_encode(static_cast<unsigned>(uj)), nb);
    }
    if (clamped) *clamped = any;
    return bits;
}

UncodedProfile uncoded_profile(int bpcu) {
    UncodedProfile p;
    p.bpcu = bpcu;
    switch (bpcu) {
        case 5:  p.eta_per_symbol = {2, 3, 2, 3}; break;
        case 6:  p.eta_per_symbol = {3, 3, 3, 3}; break;
        case 7:  p.eta_per_symbol = {3, 4, 3, 4}; break;
        case 10: p.eta_per_symbol = {5, 5, 5, 5}; break;
        case 12: p.eta_per_symbol = {6, 6, 6, 6}; break;
        default: throw std::domain_error("uncoded_profile: bpcu must be in {5,6,7,10,12}");
    }
    double e = 0.0;
    for (int eta : p.eta_per_symbol) e += carve_qam(eta).energy;
    p.es = e / 4.0;
    return p;
}

}  // namespace gsttcm
