// Acceptance gate: one pass/fail line per release criterion.
// Exit code 0 only if every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "gsttcm/analysis.hpp"
#include "gsttcm/simulate.hpp"

using namespace gsttcm;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, double seconds, const std::string& detail = "") {
    std::printf("[%s] %-34s (%7.1f s)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), seconds,
                detail.empty() ? "" : "  ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void timed(const std::string& name, double budget_s,
           const std::function<bool(std::string&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && dt > budget_s) {
        ok = false;
        detail += " [over " + std::to_string(static_cast<long>(budget_s)) + " s budget]";
    }
    report(name, ok, dt, detail);
}

const QuaternaryPoly g1{1, 0, 0, 0}, gD{0, 1, 0, 0}, gD2{0, 0, 1, 0};
const QuaternaryPoly g1D2{1, 0, 1, 0}, g1D3{1, 0, 0, 1};

bool has_event(const TrellisSpec& t, const std::vector<int>& labels) {
    for (const auto& e : enumerate_simple_error_events(t, static_cast<int>(labels.size())))
        if (e.labels == labels) return true;
    return false;
}

int shortest_event_len(const TrellisSpec& t) {
    int best = 1 << 20;
    for (const auto& e : enumerate_simple_error_events(t, 8)) best = std::min(best, e.length);
    return best;
}

struct OracleResult {
    int mismatches = 0;
    int total = 0;
};

// Exhaustive box search used as the ground truth for the sphere decoder.
// The target is a perturbed box-interior lattice point, so the enumeration
// box (one unit wider than the seed range) contains the global optimum.
OracleResult sphere_oracle(int dim, int radius, int instances, std::uint64_t seed,
                           double noise_sigma) {
    OracleResult res;
    // The noise cap and the singular-value floor bound the distance between
    // the seeded point and the true closest point: ||u* - u_seed|| is at most
    // 2||n|| / smin(G), so enumerating that box around the seed provably
    // contains the global optimum.
    const double noise_cap = noise_sigma * 3.0 * std::sqrt(static_cast<double>(dim)) / 2.0;
    const double smin_floor = 0.5;
    for (int inst = 0; inst < instances; ++inst) {
        FrameRng rng(seed, static_cast<std::uint64_t>(inst));
        Eigen::MatrixXd g;
        double smin = 0.0;
        do {
            g = Eigen::MatrixXd::NullaryExpr(dim, dim, [&](Eigen::Index, Eigen::Index) { return rng.gaussian(); });
            smin = g.jacobiSvd().singularValues().minCoeff();
        } while (smin < smin_floor);
        Eigen::VectorXd ut(dim);
        for (int i = 0; i < dim; ++i)
            ut(i) = static_cast<double>(static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(2 * radius - 1))) - (radius - 1));
        Eigen::VectorXd noise(dim);
        do {
            for (int i = 0; i < dim; ++i) noise(i) = noise_sigma * rng.gaussian();
        } while (noise.norm() > noise_cap);
        const Eigen::VectorXd y = g * ut + noise;

        const int r = static_cast<int>(std::ceil(2.0 * noise.norm() / smin));
        const int side = 2 * r + 1;
        long total_pts = 1;
        for (int i = 0; i < dim; ++i) total_pts *= side;
        double best_m = std::numeric_limits<double>::infinity();
        for (long idx = 0; idx < total_pts; ++idx) {
            long t = idx;
            Eigen::VectorXd ud(dim);
            for (int i = 0; i < dim; ++i) {
                ud(i) = ut(i) + static_cast<double>(static_cast<int>(t % side) - r);
                t /= side;
            }
            const double m = (y - g * ud).squaredNorm();
            best_m = std::min(best_m, m);
        }
        const LatticeDecoder dec(g);
        const DecodeResult got = dec.closest(y);
        Eigen::VectorXd gu(dim);
        for (int i = 0; i < dim; ++i) gu(i) = got.u[static_cast<std::size_t>(i)];
        ++res.total;
        if (std::abs((y - g * gu).squaredNorm() - best_m) > 1e-9) ++res.mismatches;
    }
    return res;
}

struct RoundTrip {
    int ok = 0;
    int total = 0;
};

RoundTrip round_trip(const GstTcmConfig& cfg, int frames, std::uint64_t seed) {
    RoundTrip rt;
    const NoiseModel quiet{0.0};
    for (int f = 0; f < frames; ++f) {
        FrameRng rng(seed, static_cast<std::uint64_t>(f));
        FrameBits bits(static_cast<std::size_t>(cfg.frame_bits()));
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
        const auto enc = gst_tcm_encode(bits, cfg);
        const Mat2c h = draw_channel(rng);
        const auto y = transmit(enc.codewords, h, quiet, rng);
        std::vector<Vec8> yv;
        yv.reserve(y.size());
        for (const auto& m : y) yv.push_back(vectorize(m));
        const auto out = viterbi_decode(yv, real_channel_matrix(h), cfg);
        ++rt.total;
        if (out.bits == bits) ++rt.ok;
    }
    return rt;
}

ExperimentConfig tuned(const std::string& preset, int threads) {
    ExperimentConfig cfg = preset_by_name(preset).config;
    cfg.threads = threads;
    return cfg;
}

double target_snr(const ExperimentConfig& cfg, bool use_cer) {
    return snr_at_target(run_fer_experiment(cfg), 1e-2, use_cer);
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--quick") quick = true;
    const int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    timed("subcode-min-determinants", 60.0, [](std::string& d) {
        bool ok = true;
        for (int k = 0; k <= 4; ++k)
            ok = ok && std::abs(min_det_subcode(k, 2) - std::ldexp(0.2, k)) < 1e-9;
        d = "levels 0..4 vs {0.2,0.4,0.8,1.6,3.2}";
        return ok;
    });

    timed("sublattice-generator-check", 120.0, [](std::string& d) {
        const auto chk = verify_e8_equivalence();
        d = "d2_min=" + std::to_string(chk.d2_min) + " |det|=" + std::to_string(chk.abs_det);
        return chk.d2_min == 4 && chk.abs_det == 16;
    });

    timed("asymptotic-gain-table", 10.0, [](std::string& d) {
        const auto rows = run_gain_report();
        const double gp[8] = {2.0, 2.0, 2.0, 2.0, 2.3, 2.3, 1.3, 1.3};
        const double gs[8] = {1.4, 2.5, 1.4, 2.5, 2.0, 3.0, 1.0, 2.0};
        bool ok = rows.size() == 8;
        for (std::size_t i = 0; ok && i < rows.size(); ++i)
            ok = std::abs(rows[i].gamma_p_db - gp[i]) < 0.05 && std::abs(rows[i].gamma_s_db - gs[i]) < 0.05;
        d = "8 design rows within 0.05 dB";
        return ok;
    });

    timed("trellis-shortest-events", 10.0, [](std::string& d) {
        const auto t4 = build_trellis({g1, gD});
        const auto t16 = build_trellis({gD, g1D2});
        const auto t16b = build_trellis({gD, gD2, g1D2});
        const auto t64 = build_trellis({gD, gD2, g1D3});
        const bool ok = shortest_event_len(t4) == 2 && has_event(t4, {0b0100, 0b0001}) &&
                        shortest_event_len(t16) == 3 && has_event(t16, {0b0001, 0b0100, 0b0001}) &&
                        shortest_event_len(t16b) == 3 && has_event(t16b, {0b000001, 0b010000, 0b000101}) &&
                        shortest_event_len(t64) == 4 &&
                        has_event(t64, {0b000001, 0b010000, 0b000100, 0b000001});
        d = "4/16/16(l=3)/64-state witnesses";
        return ok;
    });

    timed("sphere-decoder-oracle", 0.0, [](std::string& d) {
        const auto a = sphere_oracle(4, 3, 1000, 1001, 0.5);
        const auto b = sphere_oracle(8, 2, 100, 2002, 0.10);  // seeds stay in [-1,1]
        d = "mismatches " + std::to_string(a.mismatches) + "/" + std::to_string(a.total) + " and " +
            std::to_string(b.mismatches) + "/" + std::to_string(b.total);
        return a.mismatches == 0 && b.mismatches == 0;
    });

    timed("noiseless-round-trip", 0.0, [quick](std::string& d) {
        const int frames = quick ? 10 : 100;
        const struct { int ell0, ell, eta; std::vector<QuaternaryPoly> polys; } cfgs[4] = {
            {2, 2, 4, {g1, gD}},
            {0, 2, 4, {gD, g1D2}},
            {0, 3, 4, {gD, gD2, g1D2}},
            {0, 3, 6, {gD, gD2, g1D3}},
        };
        bool ok = true;
        int total_ok = 0, total = 0;
        for (int i = 0; i < 4; ++i) {
            const auto cfg = make_gst_tcm_config(make_partition(cfgs[i].ell0, cfgs[i].ell),
                                                 cfgs[i].polys, cfgs[i].eta, 130);
            const auto rt = round_trip(cfg, frames, 7000 + static_cast<std::uint64_t>(i));
            total_ok += rt.ok;
            total += rt.total;
            ok = ok && rt.ok == rt.total;
        }
        d = std::to_string(total_ok) + "/" + std::to_string(total) + " frames, 4 configs, L=130";
        return ok;
    });

    timed("polynomial-search-ranking", 600.0, [](std::string& d) {
        // The search folds tuples related by unit scaling, so membership in
        // the top class is judged by achieving its delta_s value.
        auto in_top_class = [](int states, int ell, const PartitionConfig& p,
                               const std::vector<QuaternaryPoly>& want) {
            const auto ranked = search_polynomials(states, ell, p);
            if (ranked.empty()) return false;
            const double ref = delta_s(build_trellis(want), p, 10).value / kDeltaMin;
            return ref >= ranked.front().delta_s_units - 1e-9;
        };
        const bool in16 = in_top_class(16, 2, make_partition(2, 2), {gD, g1D2});
        const bool in64 = in_top_class(64, 3, make_partition(0, 3), {gD, gD2, g1D3});
        d = "reference tuples reach the top class";
        return in16 && in64;
    });

    timed("fer-gain-desk-scale", 0.0, [quick, threads](std::string& d) {
        // The quasi-static error-rate curves are flat near the 1e-2 crossing,
        // so a stable crossing estimate needs large per-point samples; frame
        // counts are set per scheme according to its simulation cost.
        auto sized = [quick, threads](const std::string& preset, long frames, long errors) {
            ExperimentConfig cfg = tuned(preset, threads);
            cfg.frames_per_point = quick ? 500 : frames;
            cfg.max_frame_errors = quick ? 50 : errors;
            return cfg;
        };
        const double c1 = target_snr(sized("example1-4state", 20000, 600), false);
        const double u5 = target_snr(sized("uncoded-5bpcu", 20000, 600), false);
        const double c3 = target_snr(sized("example3-16state", 6000, 200), false);
        const double u6 = target_snr(sized("uncoded-6bpcu", 20000, 600), false);
        const double gain1 = u5 - c1, gain3 = u6 - c3;
        char buf[128];
        std::snprintf(buf, sizeof buf, "gain1=%.2f dB (need >=1.5), gain3=%.2f dB (need >=3.0)",
                      gain1, gain3);
        d = buf;
        return gain1 >= 1.5 && gain3 >= 3.0;
    });

    timed("sublattice-cer-parity-12bpcu", 0.0, [quick, threads](std::string& d) {
        auto shrink = [quick](ExperimentConfig cfg) {
            if (quick) cfg.frames_per_point = std::max<long>(2000, cfg.frames_per_point / 4);
            return cfg;
        };
        const double sc = target_snr(shrink(tuned("subcode-12bpcu", threads)), true);
        const double un = target_snr(shrink(tuned("uncoded-12bpcu", threads)), true);
        char buf[96];
        std::snprintf(buf, sizeof buf, "|%.2f - %.2f| = %.2f dB (need <=0.4)", sc, un,
                      std::abs(sc - un));
        d = buf;
        return std::abs(sc - un) <= 0.4;
    });

    timed("property-invariants", 300.0, [](std::string& d) {
        bool ok = true;
        std::string bad;
        auto stage = [&](const char* name, bool pass) {
            if (!pass) bad += std::string(bad.empty() ? "" : ",") + name;
            ok = ok && pass;
        };
        // nesting and duality of the binary chain
        {
            bool nest = true;
            for (int k = 0; k + 1 <= 4; ++k)
                for (const auto& w : code_at_level(k + 1).codewords) nest = nest && code_at_level(k).contains(w);
            stage("nesting", nest);
            bool dual = true;
            for (const auto& a : code_at_level(2).codewords)
                for (const auto& b : code_at_level(2).codewords) {
                    int dot = 0;
                    for (int i = 0; i < 8; ++i) dot ^= a[static_cast<std::size_t>(i)] & b[static_cast<std::size_t>(i)];
                    dual = dual && dot == 0;
                }
            stage("self-dual", dual);
        }
        // rotation orthogonality (scaled) and determinant-preserving B
        const Mat8& r = rotation_matrix();
        stage("rotation", (r.transpose() * r - Mat8::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        stage("detB", std::abs(std::abs(golden_B().determinant()) - std::sqrt(2.0)) < 1e-12);
        stage("detB4", std::abs(golden_B_pow(4).determinant() - Complex(-4.0, 0.0)) < 1e-12);
        // labeling bijectivity at the smallest coded constellation
        {
            const ConstellationLabeling lab(make_partition(2, 2), 4);
            std::set<LatticeVector> seen;
            for (unsigned m = 0; m < 256u; ++m) {
                std::vector<std::uint8_t> bits(8);
                for (int i = 0; i < 8; ++i) bits[static_cast<std::size_t>(i)] = (m >> i) & 1u;
                seen.insert(lab.encode(bits));
            }
            stage("labeling", seen.size() == 256u);
        }
        // real channel matrix reproduces complex multiplication
        FrameRng rng(404, 0);
        {
            bool chan = true;
            for (int t = 0; t < 50; ++t) {
                const Mat2c h = draw_channel(rng);
                Mat2c x;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j) x(i, j) = Complex(rng.gaussian(), rng.gaussian());
                chan = chan && (vectorize(h * x) - real_channel_matrix(h) * vectorize(x)).cwiseAbs().maxCoeff() < 1e-12;
            }
            stage("channel", chan);
        }
        // SNR round trip
        {
            bool snr = true;
            for (double s : {-2.0, 3.0, 11.0})
                snr = snr && std::abs(snr_db_from_sigma2(sigma2_from_snr_db(s, 0.7), 0.7) - s) < 1e-12;
            stage("snr", snr);
        }
        // determinant inequality spot check
        {
            bool det = true;
            for (int t = 0; t < 200; ++t) {
                Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
                double sum = 0.0;
                for (int s = 0; s < 3; ++s) {
                    LatticeVector v{};
                    for (auto& c : v) c = static_cast<int>(rng.uniform_int(5)) - 2;
                    const Mat2c x = golden_encode_vector(v);
                    acc += x * x.adjoint();
                    sum += det_metric(x);
                }
                det = det && acc.determinant().real() >= sum - 1e-9;
            }
            stage("det-ineq", det);
        }
        d = ok ? "chain/rotation/labeling/channel/energy invariants" : "failed: " + bad;
        return ok;
    });

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
