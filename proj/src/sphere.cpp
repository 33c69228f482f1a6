#include "gsttcm/sphere.hpp"

#include <cmath>
#include <limits>

namespace gsttcm {

LatticeDecoder::LatticeDecoder(const Eigen::MatrixXd& basis) {
    if (basis.rows() != basis.cols() || basis.rows() < 1 || basis.rows() > 8)
        throw std::invalid_argument("basis must be square, dimension 1..8");
    n_ = static_cast<int>(basis.rows());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis);
    if (svd.singularValues()(n_ - 1) < 1e-10)
        throw DecodeError("rank-deficient search basis");
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    Eigen::MatrixXd q = qr.householderQ();
    for (int i = 0; i < n_; ++i)
        if (r(i, i) < 0.0) {
            r.row(i) = -r.row(i);
            q.col(i) = -q.col(i);
        }
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            if (j >= i) r_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = r(i, j);
            qt_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = q(j, i);
        }
}

std::array<double, 8> LatticeDecoder::rotate(const Eigen::VectorXd& y) const {
    std::array<double, 8> yp{};
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += qt_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * y(j);
        yp[static_cast<std::size_t>(i)] = s;
    }
    return yp;
}

namespace {

struct Enumerator {
    const std::array<std::array<double, 8>, 8>& r;
    const std::array<double, 8>& yp;
    int n;
    std::array<int, 8> u{};
    std::array<int, 8> best_u{};
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    std::uint64_t nodes = 0;

    bool lex_less(const std::array<int, 8>& a, const std::array<int, 8>& b) const {
        for (int i = 0; i < n; ++i) {
            if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)])
                return a[static_cast<std::size_t>(i)] < b[static_cast<std::size_t>(i)];
        }
        return false;
    }

    void search(int k, double dist) {
        if (++nodes > LatticeDecoder::kNodeLimit)
            throw DecodeError("sphere decoder node limit exceeded");
        if (k < 0) {
            const double eps = 1e-9 * (1.0 + dist);
            if (!found || dist < best - eps) {
                best = dist;
                best_u = u;
                found = true;
            } else if (dist <= best + eps && lex_less(u, best_u)) {
                best_u = u;
            }
            return;
        }
        const auto ku = static_cast<std::size_t>(k);
        double t = yp[ku];
        for (int j = k + 1; j < n; ++j) t -= r[ku][static_cast<std::size_t>(j)] * u[static_cast<std::size_t>(j)];
        const double rkk = r[ku][ku];
        const double c = t / rkk;
        const int u0 = static_cast<int>(std::llround(c));
        const int dir = (c >= static_cast<double>(u0)) ? 1 : -1;
        for (int step = 0;; ++step) {
            // zig-zag: u0, u0+dir, u0-dir, u0+2dir, ...
            int cand;
            if (step == 0) cand = u0;
            else if (step % 2 == 1) cand = u0 + dir * ((step + 1) / 2);
            else cand = u0 - dir * (step / 2);
            const double d = t - rkk * cand;
            const double nd = dist + d * d;
            // zig-zag candidates are ordered by |c - cand|, so the first
            // excess closes the level.
            if (found && nd > best + 1e-9 * (1.0 + best)) return;
            u[ku] = cand;
            search(k - 1, nd);
        }
    }
};

}  // namespace

DecodeResult LatticeDecoder::closest_rotated(const std::array<double, 8>& yp) const {
    Enumerator e{r_, yp, n_};
    e.search(n_ - 1, 0.0);
    DecodeResult res;
    res.u = e.best_u;
    res.metric = e.best;
    res.nodes = e.nodes;
    return res;
}

DecodeResult LatticeDecoder::closest(const Eigen::VectorXd& y) const {
    return closest_rotated(rotate(y));
}

DecodeResult closest_point(const Eigen::VectorXd& y, const SearchBasis& basis) {
    LatticeDecoder dec(basis.matrix);
    return dec.closest(y - basis.offset);
}

Bits8 trellis_coset_leader(int index, const std::vector<Bits8>& hc1_rows) {
    const int ell = static_cast<int>(hc1_rows.size()) / 2;
    Bits8 c{};
    for (int i = 0; i < ell; ++i) {
        const int alpha = (index >> (2 * (ell - 1 - i))) & 3;
        std::uint8_t hi, lo;
        alpha_to_bits(alpha, hi, lo);
        if (hi) c = xor_bits(c, hc1_rows[static_cast<std::size_t>(2 * i)]);
        if (lo) c = xor_bits(c, hc1_rows[static_cast<std::size_t>(2 * i + 1)]);
    }
    return c;
}

CosetDecodeResult coset_decode(const Vec8& y, const Mat8& channel_basis,
                               const std::vector<Bits8>& cosets, const Vec8& centering) {
    if (cosets.empty()) throw std::invalid_argument("coset_decode: cosets must be nonempty");
    LatticeDecoder dec(2.0 * channel_basis);
    CosetDecodeResult out;
    out.metrics.reserve(cosets.size());
    out.results.reserve(cosets.size());
    out.points.reserve(cosets.size());
    for (const auto& c : cosets) {
        Vec8 shift = -channel_basis * centering;
        for (int i = 0; i < 8; ++i)
            if (c[static_cast<std::size_t>(i)]) shift += channel_basis.col(i);
        DecodeResult r = dec.closest(y - shift);
        out.nodes += r.nodes;
        LatticeVector x{};
        for (int i = 0; i < 8; ++i) x[static_cast<std::size_t>(i)] = 2 * r.u[static_cast<std::size_t>(i)] + c[static_cast<std::size_t>(i)];
        if (out.best < 0 || r.metric < out.metrics[static_cast<std::size_t>(out.best)] - 1e-12)
            out.best = static_cast<int>(out.metrics.size());
        out.metrics.push_back(r.metric);
        out.results.push_back(r);
        out.points.push_back(x);
    }
    return out;
}

BranchMetricComputer::BranchMetricComputer(const Mat8& channel_basis, PartitionConfig cfg,
                                           const ConstellationLabeling& labeling)
    : cfg_(cfg), dec2_(Eigen::MatrixXd(2.0 * channel_basis)), hr_(channel_basis) {
    hr_center_ = hr_ * labeling.centering();
    hc1_ = coset_generator_matrix(cfg.ell0, cfg.ell);
    leaders_ = labeling.coset_leaders();
    const int nc = cfg_.num_cosets();
    const int ns = static_cast<int>(leaders_.size());
    cosets_.resize(static_cast<std::size_t>(nc) * static_cast<std::size_t>(ns));
    shift_.resize(cosets_.size());
    // Qt * H R equals Rhat / 2 since the factorization basis is 2 H R.
    for (int j = 0; j < nc; ++j) {
        const Bits8 c1 = trellis_coset_leader(j, hc1_);
        for (int m = 0; m < ns; ++m) {
            const Bits8 c = xor_bits(c1, leaders_[static_cast<std::size_t>(m)]);
            const std::size_t idx = static_cast<std::size_t>(j * ns + m);
            cosets_[idx] = c;
            std::array<double, 8> s{};
            for (int i = 0; i < 8; ++i) {
                double acc = 0.0;
                for (int col = i; col < 8; ++col)
                    if (c[static_cast<std::size_t>(col)]) acc += 0.5 * dec2_.rfactor(i, col);
                s[static_cast<std::size_t>(i)] = acc;
            }
            shift_[idx] = s;
        }
    }
}

BranchMetricTable BranchMetricComputer::compute(const Vec8& y) const {
    const int nc = cfg_.num_cosets();
    const int ns = static_cast<int>(leaders_.size());
    BranchMetricTable table;
    table.entries.resize(static_cast<std::size_t>(nc));
    const std::array<double, 8> yp0 = dec2_.rotate(y + hr_center_);
    for (int j = 0; j < nc; ++j) {
        BranchMetric best;
        best.metric = std::numeric_limits<double>::infinity();
        for (int m = 0; m < ns; ++m) {
            const std::size_t idx = static_cast<std::size_t>(j * ns + m);
            std::array<double, 8> yp = yp0;
            for (int i = 0; i < 8; ++i) yp[static_cast<std::size_t>(i)] -= shift_[idx][static_cast<std::size_t>(i)];
            const DecodeResult r = dec2_.closest_rotated(yp);
            ++table.decode_calls;
            table.nodes += r.nodes;
            if (r.metric < best.metric) {
                best.metric = r.metric;
                best.b2_index = m;
                best.u = r.u;
                const Bits8& c = cosets_[idx];
                for (int i = 0; i < 8; ++i)
                    best.v[static_cast<std::size_t>(i)] = 2 * r.u[static_cast<std::size_t>(i)] + c[static_cast<std::size_t>(i)];
            }
        }
        table.entries[static_cast<std::size_t>(j)] = best;
    }
    return table;
}

}  // namespace gsttcm
