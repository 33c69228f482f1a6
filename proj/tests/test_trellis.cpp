#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "gsttcm/channel.hpp"
#include "gsttcm/trellis.hpp"

using namespace gsttcm;

namespace {

const QuaternaryPoly g1{1, 0, 0, 0}, gD{0, 1, 0, 0}, gD2{0, 0, 1, 0};
const QuaternaryPoly g1D2{1, 0, 1, 0}, g1D3{1, 0, 0, 1};

std::vector<int> run_inputs(const TrellisSpec& t, const std::vector<int>& betas,
                            std::vector<int>* states = nullptr) {
    std::vector<int> labels;
    int s = 0;
    for (int b : betas) {
        labels.push_back(t.output[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)]);
        s = t.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)];
        if (states) states->push_back(s);
    }
    return labels;
}

FrameBits random_payload(const GstTcmConfig& cfg, FrameRng& rng) {
    FrameBits bits(static_cast<std::size_t>(cfg.frame_bits()));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    return bits;
}

GstTcmConfig example_config(int which, int states, int frame_len) {
    switch (which) {
        case 1: return make_gst_tcm_config(make_partition(2, 2), states == 4 ? std::vector{g1, gD} : std::vector{gD, g1D2}, 4, frame_len);
        case 2: return make_gst_tcm_config(make_partition(0, 2), states == 4 ? std::vector{g1, gD} : std::vector{gD, g1D2}, 4, frame_len);
        case 3: return make_gst_tcm_config(make_partition(0, 3), states == 16 ? std::vector{gD, gD2, g1D2} : std::vector{gD, gD2, g1D3}, 4, frame_len);
        case 4: return make_gst_tcm_config(make_partition(0, 3), states == 16 ? std::vector{gD, gD2, g1D2} : std::vector{gD, gD2, g1D3}, 6, frame_len);
        default: throw std::logic_error("bad example");
    }
}

}  // namespace

TEST_CASE("trellis construction reproduces the reference paths") {
    {
        const TrellisSpec t = build_trellis({g1, gD});
        CHECK(t.states == 4);
        std::vector<int> states;
        CHECK(run_inputs(t, {1, 0}, &states) == std::vector<int>{0b0100, 0b0001});
        CHECK(states == std::vector<int>{1, 0});
    }
    {
        const TrellisSpec t = build_trellis({gD, g1D2});
        CHECK(t.states == 16);
        std::vector<int> states;
        CHECK(run_inputs(t, {1, 0, 0}, &states) == std::vector<int>{0b0001, 0b0100, 0b0001});
        CHECK(states == std::vector<int>{1, 4, 0});
    }
    {
        const TrellisSpec t = build_trellis({gD, gD2, g1D3});
        CHECK(t.states == 64);
        std::vector<int> states;
        CHECK(run_inputs(t, {1, 0, 0, 0}, &states) ==
              std::vector<int>{0b000001, 0b010000, 0b000100, 0b000001});
        CHECK(states == std::vector<int>{1, 4, 16, 0});
    }
    CHECK_THROWS_AS(build_trellis({}), std::invalid_argument);
}

TEST_CASE("trellis branch structure") {
    for (const auto& polys : {std::vector{g1, gD}, std::vector{gD, g1D2}, std::vector{gD, gD2, g1D3}}) {
        const TrellisSpec t = build_trellis(polys);
        std::vector<int> indegree(static_cast<std::size_t>(t.states), 0);
        for (int s = 0; s < t.states; ++s)
            for (int b = 0; b < 4; ++b) ++indegree[static_cast<std::size_t>(t.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)])];
        for (int d : indegree) CHECK(d == 4);

        // labels leaving any state form a coset of the labels leaving state 0
        auto digits_sub = [&](int a, int b) {
            int r = 0;
            for (int i = 0; i < t.ell; ++i) {
                const int sh = 2 * i;
                r |= ((((a >> sh) & 3) - ((b >> sh) & 3) + 4) & 3) << sh;
            }
            return r;
        };
        for (int s = 0; s < t.states; ++s) {
            std::vector<int> rel;
            for (int b = 0; b < 4; ++b)
                rel.push_back(digits_sub(t.output[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)],
                                         t.output[static_cast<std::size_t>(s)][0]));
            std::vector<int> base;
            for (int b = 0; b < 4; ++b)
                base.push_back(digits_sub(t.output[0][static_cast<std::size_t>(b)], t.output[0][0]));
            std::sort(rel.begin(), rel.end());
            std::sort(base.begin(), base.end());
            CHECK(rel == base);
        }
    }
}

TEST_CASE("trellis output is linear over Z4") {
    const TrellisSpec t = build_trellis({gD, gD2, g1D3});
    FrameRng rng(8, 0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> a(8), b(8), sum(8);
        for (int i = 0; i < 8; ++i) {
            a[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(4));
            b[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(4));
            sum[static_cast<std::size_t>(i)] = (a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)]) % 4;
        }
        const auto la = run_inputs(t, a), lb = run_inputs(t, b), ls = run_inputs(t, sum);
        for (int k = 0; k < 8; ++k) {
            int want = 0;
            for (int i = 0; i < t.ell; ++i) {
                const int sh = 2 * i;
                want |= ((((la[static_cast<std::size_t>(k)] >> sh) & 3) + ((lb[static_cast<std::size_t>(k)] >> sh) & 3)) & 3) << sh;
            }
            CHECK(ls[static_cast<std::size_t>(k)] == want);
        }
    }
}

TEST_CASE("simple error events") {
    {
        const auto events = enumerate_simple_error_events(build_trellis({g1, gD}), 4);
        int shortest = 99;
        for (const auto& e : events) shortest = std::min(shortest, e.length);
        CHECK(shortest == 2);
        bool found = false;
        for (const auto& e : events)
            if (e.length == 2 && e.labels == std::vector<int>{0b0100, 0b0001}) found = true;
        CHECK(found);
    }
    {
        const auto events = enumerate_simple_error_events(build_trellis({gD, g1D2}), 5);
        int shortest = 99;
        for (const auto& e : events) shortest = std::min(shortest, e.length);
        CHECK(shortest == 3);
        bool found = false;
        for (const auto& e : events)
            if (e.labels == std::vector<int>{0b0001, 0b0100, 0b0001} && e.states == std::vector<int>{1, 4})
                found = true;
        CHECK(found);
    }
    {
        const auto events = enumerate_simple_error_events(build_trellis({gD, gD2, g1D2}), 5);
        bool found = false;
        for (const auto& e : events)
            if (e.labels == std::vector<int>{0b000001, 0b010000, 0b000101} && e.states == std::vector<int>{1, 4})
                found = true;
        CHECK(found);
    }
    {
        const auto events = enumerate_simple_error_events(build_trellis({gD, gD2, g1D3}), 5);
        int shortest = 99;
        for (const auto& e : events) shortest = std::min(shortest, e.length);
        CHECK(shortest == 4);
        bool found = false;
        for (const auto& e : events)
            if (e.labels == std::vector<int>{0b000001, 0b010000, 0b000100, 0b000001} &&
                e.states == std::vector<int>{1, 4, 16})
                found = true;
        CHECK(found);
    }
    CHECK_THROWS_AS(enumerate_simple_error_events(build_trellis({gD, g1D2}), 2), std::invalid_argument);
}

TEST_CASE("encoder emits points of the outer lattice") {
    const GstTcmConfig cfg = example_config(3, 16, 6);
    FrameRng rng(3, 0);
    const FrameBits bits = random_payload(cfg, rng);
    const GstTcmEncoded enc = gst_tcm_encode(bits, cfg);
    CHECK(enc.codewords.size() == 6);
    for (const auto& v : enc.points) CHECK(is_in_lattice(v, cfg.partition.ell0));

    FrameBits zeros(static_cast<std::size_t>(cfg.frame_bits()), 0);
    const GstTcmEncoded z = gst_tcm_encode(zeros, cfg);
    CHECK(z.final_state == 0);
    for (const auto& v : z.points) CHECK(v == LatticeVector{});
    CHECK_THROWS_AS(gst_tcm_encode(FrameBits(3), cfg), std::invalid_argument);
}

TEST_CASE("single-slot trellis branch label selects the documented coset") {
    // polynomials (1, D), beta = 1 at t = 0 gives alpha = (1, 0): the
    // second stacked row of the first partition level
    const GstTcmConfig cfg = example_config(1, 4, 1);
    FrameBits bits(static_cast<std::size_t>(cfg.frame_bits()), 0);
    bits[1] = 1;  // (b_hi, b_lo) = (0, 1) -> beta = 1
    const GstTcmEncoded enc = gst_tcm_encode(bits, cfg);
    Bits8 c{};
    for (int i = 0; i < 8; ++i)
        c[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(((enc.points[0][static_cast<std::size_t>(i)] % 2) + 2) % 2);
    CHECK(c == coset_generator_row(2, 1));
}

TEST_CASE("noiseless round trips for all example configurations") {
    int which = 0;
    for (const auto& [ex, states] : std::vector<std::pair<int, int>>{{1, 4}, {1, 16}, {2, 4}, {2, 16}, {3, 16}, {3, 64}, {4, 16}, {4, 64}}) {
        const GstTcmConfig cfg = example_config(ex, states, 8);
        for (int trial = 0; trial < 3; ++trial) {
            FrameRng rng(100 + static_cast<std::uint64_t>(which), static_cast<std::uint64_t>(trial));
            const FrameBits bits = random_payload(cfg, rng);
            const GstTcmEncoded enc = gst_tcm_encode(bits, cfg);
            const Mat2c h = draw_channel(rng);
            std::vector<Vec8> y;
            for (const auto& x : enc.codewords) y.push_back(vectorize(h * x));
            const ViterbiResult res = viterbi_decode(y, real_channel_matrix(h), cfg);
            CHECK(res.bits == bits);
            CHECK(res.metric == doctest::Approx(0.0).epsilon(1e-9));
        }
        ++which;
    }
}

TEST_CASE("path metric equals the sum of its branch metrics") {
    const GstTcmConfig cfg = example_config(1, 16, 10);
    FrameRng rng(9, 0);
    const FrameBits bits = random_payload(cfg, rng);
    const GstTcmEncoded enc = gst_tcm_encode(bits, cfg);
    const Mat2c h = draw_channel(rng);
    const auto ym = transmit(enc.codewords, h, NoiseModel{0.05}, rng);
    std::vector<Vec8> y;
    for (const auto& m : ym) y.push_back(vectorize(m));
    const Mat8 hreal = real_channel_matrix(h);
    const ViterbiResult res = viterbi_decode(y, hreal, cfg);

    // re-walk the decoded path and re-derive its branch metrics
    const GstTcmEncoded redo = gst_tcm_encode(res.bits, cfg);
    const Mat8 hr = hreal * rotation_matrix();
    double total = 0.0;
    for (int t = 0; t < cfg.frame_len; ++t) {
        Vec8 x;
        for (int i = 0; i < 8; ++i)
            x(i) = redo.points[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] - cfg.labeling->centering()(i);
        total += (y[static_cast<std::size_t>(t)] - hr * x).squaredNorm();
    }
    CHECK(res.metric == doctest::Approx(total).epsilon(1e-6));
}

TEST_CASE("single-slot decoding equals coset decoding over the full label set") {
    const GstTcmConfig cfg = example_config(1, 4, 1);
    const auto& lab = *cfg.labeling;
    FrameRng rng(41, 0);
    const Mat2c h = draw_channel(rng);
    const Mat8 hr = real_channel_matrix(h) * rotation_matrix();
    Vec8 y;
    for (int i = 0; i < 8; ++i) y(i) = 1.5 * rng.gaussian();

    const ViterbiResult res = viterbi_decode({y}, real_channel_matrix(h), cfg);
    // oracle: a one-slot frame can only use the four labels leaving state 0
    std::vector<Bits8> cosets;
    const auto hc1 = coset_generator_matrix(2, 2);
    for (int beta = 0; beta < 4; ++beta)
        cosets.push_back(trellis_coset_leader(cfg.trellis.output[0][static_cast<std::size_t>(beta)], hc1));
    const auto oracle = coset_decode(y, hr, cosets, lab.centering());
    CHECK(res.metric == doctest::Approx(oracle.metrics[static_cast<std::size_t>(oracle.best)]).epsilon(1e-9));
}

TEST_CASE("decoder survives very low SNR without crashing") {
    const GstTcmConfig cfg = example_config(2, 4, 5);
    const double sigma2 = sigma2_from_snr_db(-5.0, cfg.labeling->qam().energy / 3.5);
    for (int trial = 0; trial < 100; ++trial) {
        FrameRng rng(500, static_cast<std::uint64_t>(trial));
        const FrameBits bits = random_payload(cfg, rng);
        const GstTcmEncoded enc = gst_tcm_encode(bits, cfg);
        const Mat2c h = draw_channel(rng);
        const auto ym = transmit(enc.codewords, h, NoiseModel{sigma2}, rng);
        std::vector<Vec8> y;
        for (const auto& m : ym) y.push_back(vectorize(m));
        try {
            const ViterbiResult res = viterbi_decode(y, real_channel_matrix(h), cfg);
            CHECK(static_cast<int>(res.bits.size()) == cfg.frame_bits());
            CHECK(std::isfinite(res.metric));
        } catch (const DecodeError&) {
            // node-limit aborts are permitted, crashes are not
        }
    }
}
