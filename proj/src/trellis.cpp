#include "gsttcm/trellis.hpp"

#include <limits>
#include <stdexcept>

namespace gsttcm {

TrellisSpec build_trellis(const std::vector<QuaternaryPoly>& polys) {
    if (polys.empty()) throw std::invalid_argument("build_trellis: empty polynomial list");
    TrellisSpec t;
    t.polys = polys;
    t.ell = static_cast<int>(polys.size());
    if (t.ell < 1 || t.ell > 3) throw std::invalid_argument("build_trellis: 1 <= l <= 3");
    for (const auto& g : polys)
        for (int d = 0; d < 4; ++d)
            if (g[static_cast<std::size_t>(d)] % 4 != 0 && d > t.nu) t.nu = d;
    t.states = 1 << (2 * t.nu);
    t.next.resize(static_cast<std::size_t>(t.states));
    t.output.resize(static_cast<std::size_t>(t.states));
    for (int s = 0; s < t.states; ++s) {
        // register digits, most recent first
        const int m1 = s & 3, m2 = (s >> 2) & 3, m3 = (s >> 4) & 3;
        for (int beta = 0; beta < 4; ++beta) {
            const int mem[4] = {beta, m1, m2, m3};
            int label = 0;
            for (int i = 0; i < t.ell; ++i) {
                int alpha = 0;
                for (int d = 0; d < 4; ++d) alpha += t.polys[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] * mem[d];
                label = (label << 2) | (alpha & 3);
            }
            t.output[static_cast<std::size_t>(s)][static_cast<std::size_t>(beta)] = label;
            t.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(beta)] = (beta | (s << 2)) & (t.states - 1);
        }
    }
    return t;
}

GstTcmConfig make_gst_tcm_config(PartitionConfig partition, std::vector<QuaternaryPoly> polys,
                                 int eta, int frame_len) {
    GstTcmConfig cfg;
    cfg.partition = partition;
    cfg.trellis = build_trellis(polys);
    if (cfg.trellis.ell != partition.ell)
        throw std::invalid_argument("trellis output count must match the relative partition level");
    cfg.eta = eta;
    cfg.frame_len = frame_len;
    cfg.labeling = std::make_shared<ConstellationLabeling>(partition, eta);
    cfg.hc1 = coset_generator_matrix(partition.ell0, partition.ell);
    return cfg;
}

namespace {

int beta_from_bits(std::uint8_t hi, std::uint8_t lo) { return 2 * (hi & 1) + (lo & 1); }

}  // namespace

GstTcmEncoded gst_tcm_encode(const FrameBits& bits, const GstTcmConfig& cfg) {
    if (static_cast<int>(bits.size()) != cfg.frame_bits())
        throw std::invalid_argument("frame payload length mismatch");
    const auto& lab = *cfg.labeling;
    const Mat8& rot = rotation_matrix();
    GstTcmEncoded out;
    out.codewords.reserve(static_cast<std::size_t>(cfg.frame_len));
    out.points.reserve(static_cast<std::size_t>(cfg.frame_len));
    int state = 0;
    std::size_t pos = 0;
    for (int t = 0; t < cfg.frame_len; ++t) {
        const int beta = beta_from_bits(bits[pos], bits[pos + 1]);
        pos += 2;
        std::vector<std::uint8_t> b2(bits.begin() + static_cast<long>(pos),
                                     bits.begin() + static_cast<long>(pos) + lab.q2());
        pos += static_cast<std::size_t>(lab.q2());
        std::vector<std::uint8_t> b3(bits.begin() + static_cast<long>(pos),
                                     bits.begin() + static_cast<long>(pos) + lab.q3());
        pos += static_cast<std::size_t>(lab.q3());

        const int label = cfg.trellis.output[static_cast<std::size_t>(state)][static_cast<std::size_t>(beta)];
        state = cfg.trellis.next[static_cast<std::size_t>(state)][static_cast<std::size_t>(beta)];
        const Bits8 c1 = trellis_coset_leader(label, cfg.hc1);
        const Bits8 c2 = lab.sublattice_coset(b2);
        const Bits8 c = xor_bits(c1, c2);
        const LatticeVector v = construction_a(lab.u_from_b3(b3), c);
        out.points.push_back(v);

        Vec8 xv;
        for (int i = 0; i < 8; ++i) xv(i) = static_cast<double>(v[static_cast<std::size_t>(i)]) - lab.centering()(i);
        out.codewords.push_back(devectorize(rot * xv));
    }
    out.final_state = state;
    return out;
}

ViterbiResult viterbi_decode(const std::vector<Vec8>& y_seq, const Mat8& h_real,
                             const GstTcmConfig& cfg) {
    const int L = static_cast<int>(y_seq.size());
    const int S = cfg.trellis.states;
    const auto& lab = *cfg.labeling;
    BranchMetricComputer bmc(Mat8(h_real * rotation_matrix()), cfg.partition, lab);

    std::vector<BranchMetricTable> tables;
    tables.reserve(static_cast<std::size_t>(L));
    ViterbiResult res;
    for (const auto& y : y_seq) {
        tables.push_back(bmc.compute(y));
        res.decode_calls += tables.back().decode_calls;
        res.nodes += tables.back().nodes;
    }

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> pm(static_cast<std::size_t>(S), inf);
    pm[0] = 0.0;
    // traceback: predecessor state and input per (t, state)
    std::vector<std::array<int, 2>> tb(static_cast<std::size_t>(L) * static_cast<std::size_t>(S), {-1, -1});
    std::vector<double> npm(static_cast<std::size_t>(S));
    for (int t = 0; t < L; ++t) {
        const auto& table = tables[static_cast<std::size_t>(t)].entries;
        std::fill(npm.begin(), npm.end(), inf);
        for (int s = 0; s < S; ++s) {
            if (pm[static_cast<std::size_t>(s)] == inf) continue;
            for (int beta = 0; beta < 4; ++beta) {
                const int ns = cfg.trellis.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(beta)];
                const int lbl = cfg.trellis.output[static_cast<std::size_t>(s)][static_cast<std::size_t>(beta)];
                const double cand = pm[static_cast<std::size_t>(s)] + table[static_cast<std::size_t>(lbl)].metric;
                // ascending s: strict < keeps the smallest predecessor on ties
                if (cand < npm[static_cast<std::size_t>(ns)]) {
                    npm[static_cast<std::size_t>(ns)] = cand;
                    tb[static_cast<std::size_t>(t) * static_cast<std::size_t>(S) + static_cast<std::size_t>(ns)] = {s, beta};
                }
            }
        }
        pm.swap(npm);
    }

    int end = 0;
    for (int s = 1; s < S; ++s)
        if (pm[static_cast<std::size_t>(s)] < pm[static_cast<std::size_t>(end)]) end = s;
    res.end_state = end;
    res.metric = pm[static_cast<std::size_t>(end)];

    std::vector<std::array<int, 2>> path(static_cast<std::size_t>(L));  // (state_before, beta)
    int cur = end;
    for (int t = L - 1; t >= 0; --t) {
        const auto& e = tb[static_cast<std::size_t>(t) * static_cast<std::size_t>(S) + static_cast<std::size_t>(cur)];
        path[static_cast<std::size_t>(t)] = e;
        cur = e[0];
    }

    res.bits.reserve(static_cast<std::size_t>(L * cfg.bits_per_slot()));
    int state = 0;
    for (int t = 0; t < L; ++t) {
        const int beta = path[static_cast<std::size_t>(t)][1];
        const int lbl = cfg.trellis.output[static_cast<std::size_t>(state)][static_cast<std::size_t>(beta)];
        state = cfg.trellis.next[static_cast<std::size_t>(state)][static_cast<std::size_t>(beta)];
        const auto& surv = tables[static_cast<std::size_t>(t)].entries[static_cast<std::size_t>(lbl)];
        res.bits.push_back(static_cast<std::uint8_t>((beta >> 1) & 1));
        res.bits.push_back(static_cast<std::uint8_t>(beta & 1));
        for (int i = 0; i < lab.q2(); ++i)
            res.bits.push_back(static_cast<std::uint8_t>((surv.b2_index >> i) & 1));
        bool clamped = false;
        const auto b3 = lab.b3_from_u(surv.u, &clamped);
        if (clamped) ++res.out_of_region;
        res.bits.insert(res.bits.end(), b3.begin(), b3.end());
    }
    return res;
}

std::vector<ErrorEvent> enumerate_simple_error_events(const TrellisSpec& trellis, int max_len) {
    if (max_len < trellis.nu + 1)
        throw std::invalid_argument("max_len must be at least nu + 1");
    std::vector<ErrorEvent> events;
    struct Frame { int state; std::vector<int> states; std::vector<int> labels; };
    // DFS over paths leaving state 0 once; intermediate states nonzero.
    std::vector<Frame> stack;
    for (int beta = 1; beta < 4; ++beta) {
        Frame f;
        f.state = trellis.next[0][static_cast<std::size_t>(beta)];
        f.labels = {trellis.output[0][static_cast<std::size_t>(beta)]};
        if (f.state == 0) continue;  // cannot remerge on the first branch
        stack.push_back(std::move(f));
    }
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        const int len = static_cast<int>(f.labels.size());
        if (len >= max_len) continue;
        for (int beta = 0; beta < 4; ++beta) {
            const int ns = trellis.next[static_cast<std::size_t>(f.state)][static_cast<std::size_t>(beta)];
            const int lbl = trellis.output[static_cast<std::size_t>(f.state)][static_cast<std::size_t>(beta)];
            if (ns == 0) {
                ErrorEvent e;
                e.length = len + 1;
                e.states = f.states;
                e.states.push_back(f.state);
                e.labels = f.labels;
                e.labels.push_back(lbl);
                events.push_back(std::move(e));
            } else {
                Frame g;
                g.state = ns;
                g.states = f.states;
                g.states.push_back(f.state);
                g.labels = f.labels;
                g.labels.push_back(lbl);
                if (static_cast<int>(g.labels.size()) < max_len) stack.push_back(std::move(g));
            }
        }
    }
    return events;
}

}  // namespace gsttcm
