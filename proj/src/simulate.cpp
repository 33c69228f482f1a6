#include "gsttcm/simulate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "gsttcm/constellation.hpp"
#include "gsttcm/sphere.hpp"

namespace gsttcm {

double SchemeSpec::es() const {
    if (kind == SchemeKind::Uncoded) return uncoded_profile(bpcu).es;
    return carve_qam(eta).energy;
}

double SchemeSpec::rate() const {
    switch (kind) {
        case SchemeKind::Uncoded: return static_cast<double>(bpcu);
        case SchemeKind::Subcode: return static_cast<double>(4 * eta - 2 * level) / 2.0;
        case SchemeKind::GstTcm: {
            const PartitionConfig p = make_partition(ell0, ell);
            return static_cast<double>(p.q1() + p.q2() + p.q3(eta)) / 2.0;
        }
    }
    return 0.0;
}

SchemeSpec gst_tcm_scheme(const std::string& name, int ell0, int ell,
                          std::vector<QuaternaryPoly> polys, int eta) {
    SchemeSpec s;
    s.kind = SchemeKind::GstTcm;
    s.name = name;
    s.ell0 = ell0;
    s.ell = ell;
    s.polys = std::move(polys);
    s.eta = eta;
    return s;
}

SchemeSpec subcode_scheme(const std::string& name, int level, int eta) {
    SchemeSpec s;
    s.kind = SchemeKind::Subcode;
    s.name = name;
    s.level = level;
    s.eta = eta;
    return s;
}

SchemeSpec uncoded_scheme(const std::string& name, int bpcu) {
    SchemeSpec s;
    s.kind = SchemeKind::Uncoded;
    s.name = name;
    s.bpcu = bpcu;
    return s;
}

namespace {

struct FrameOutcome {
    bool frame_error = false;
    long codewords = 0;
    long codeword_errors = 0;
    long bits = 0;
    long bit_errors = 0;
    std::uint64_t nodes = 0;
    long out_of_region = 0;
    bool aborted = false;
};

// Prepared once per experiment; immutable during the sweep.
struct SchemeRuntime {
    SchemeSpec spec;
    int frame_len = 130;

    // gst_tcm
    std::unique_ptr<GstTcmConfig> code;

    // subcode
    std::unique_ptr<ConstellationLabeling> labeling;

    // uncoded: per-symbol constellations and centering
    std::array<const QamSpec*, 4> qam{};
    Vec8 center = Vec8::Zero();
};

SchemeRuntime make_runtime(const SchemeSpec& spec, int frame_len) {
    SchemeRuntime rt;
    rt.spec = spec;
    rt.frame_len = frame_len;
    switch (spec.kind) {
        case SchemeKind::GstTcm:
            rt.code = std::make_unique<GstTcmConfig>(
                make_gst_tcm_config(make_partition(spec.ell0, spec.ell), spec.polys, spec.eta, frame_len));
            break;
        case SchemeKind::Subcode:
            rt.labeling = std::make_unique<ConstellationLabeling>(make_partition(0, spec.level), spec.eta);
            break;
        case SchemeKind::Uncoded: {
            const auto prof = uncoded_profile(spec.bpcu);
            for (int j = 0; j < 4; ++j) {
                rt.qam[static_cast<std::size_t>(j)] = &carve_qam(prof.eta_per_symbol[static_cast<std::size_t>(j)]);
                rt.center(2 * j) = rt.qam[static_cast<std::size_t>(j)]->centering.real();
                rt.center(2 * j + 1) = rt.qam[static_cast<std::size_t>(j)]->centering.imag();
            }
            break;
        }
    }
    return rt;
}

FrameOutcome simulate_gst_tcm_frame(const SchemeRuntime& rt, const NoiseModel& noise, FrameRng& rng) {
    const GstTcmConfig& cfg = *rt.code;
    FrameOutcome out;
    FrameBits bits(static_cast<std::size_t>(cfg.frame_bits()));
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    const GstTcmEncoded enc = gst_tcm_encode(bits, cfg);
    const Mat2c h = draw_channel(rng);
    const auto y = transmit(enc.codewords, h, noise, rng);
    std::vector<Vec8> y_seq;
    y_seq.reserve(y.size());
    for (const auto& m : y) y_seq.push_back(vectorize(m));
    out.codewords = cfg.frame_len;
    out.bits = cfg.frame_bits();
    try {
        const ViterbiResult res = viterbi_decode(y_seq, real_channel_matrix(h), cfg);
        out.nodes = res.nodes;
        out.out_of_region = res.out_of_region;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i] != res.bits[i]) ++out.bit_errors;
        out.frame_error = out.bit_errors > 0;
        if (out.frame_error) {
            const GstTcmEncoded dec = gst_tcm_encode(res.bits, cfg);
            for (int t = 0; t < cfg.frame_len; ++t)
                if (dec.points[static_cast<std::size_t>(t)] != enc.points[static_cast<std::size_t>(t)])
                    ++out.codeword_errors;
        }
    } catch (const DecodeError&) {
        out.aborted = true;
        out.frame_error = true;
        out.codeword_errors = cfg.frame_len;
        out.bit_errors = cfg.frame_bits();
    }
    return out;
}

FrameOutcome simulate_subcode_frame(const SchemeRuntime& rt, const NoiseModel& noise, FrameRng& rng) {
    const ConstellationLabeling& lab = *rt.labeling;
    const int nbits = lab.q2() + lab.q3();
    const Mat8& rot = rotation_matrix();
    FrameOutcome out;
    std::vector<std::vector<std::uint8_t>> sent_bits;
    std::vector<Mat2c> x_seq;
    for (int t = 0; t < rt.frame_len; ++t) {
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(nbits));
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
        const LatticeVector v = lab.encode(bits);
        Vec8 xv;
        for (int i = 0; i < 8; ++i) xv(i) = static_cast<double>(v[static_cast<std::size_t>(i)]) - lab.centering()(i);
        x_seq.push_back(devectorize(rot * xv));
        sent_bits.push_back(std::move(bits));
    }
    const Mat2c h = draw_channel(rng);
    const auto y = transmit(x_seq, h, noise, rng);
    const Mat8 hr = real_channel_matrix(h) * rot;
    out.codewords = rt.frame_len;
    out.bits = static_cast<long>(rt.frame_len) * nbits;
    for (int t = 0; t < rt.frame_len; ++t) {
        try {
            const CosetDecodeResult res =
                coset_decode(vectorize(y[static_cast<std::size_t>(t)]), hr, lab.coset_leaders(), lab.centering());
            out.nodes += res.nodes;
            bool clamped = false;
            const auto dec = lab.decode(res.points[static_cast<std::size_t>(res.best)], &clamped);
            if (clamped) ++out.out_of_region;
            long errs = 0;
            for (int i = 0; i < nbits; ++i)
                if (dec[static_cast<std::size_t>(i)] != sent_bits[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)]) ++errs;
            out.bit_errors += errs;
            if (errs > 0) ++out.codeword_errors;
        } catch (const DecodeError&) {
            out.aborted = true;
            ++out.codeword_errors;
            out.bit_errors += nbits;
        }
    }
    out.frame_error = out.codeword_errors > 0;
    return out;
}

FrameOutcome simulate_uncoded_frame(const SchemeRuntime& rt, const NoiseModel& noise, FrameRng& rng) {
    const Mat8& rot = rotation_matrix();
    FrameOutcome out;
    std::vector<std::array<int, 4>> sent_idx;
    std::vector<Mat2c> x_seq;
    for (int t = 0; t < rt.frame_len; ++t) {
        std::array<int, 4> idx{};
        Vec8 xv;
        for (int j = 0; j < 4; ++j) {
            const auto& q = *rt.qam[static_cast<std::size_t>(j)];
            idx[static_cast<std::size_t>(j)] = static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(q.points.size())));
            const auto& p = q.points[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
            xv(2 * j) = p.first - rt.center(2 * j);
            xv(2 * j + 1) = p.second - rt.center(2 * j + 1);
        }
        x_seq.push_back(devectorize(rot * xv));
        sent_idx.push_back(idx);
    }
    const Mat2c h = draw_channel(rng);
    const auto y = transmit(x_seq, h, noise, rng);
    const Mat8 hr = real_channel_matrix(h) * rot;
    const Vec8 shift = hr * rt.center;
    out.codewords = rt.frame_len;
    for (int j = 0; j < 4; ++j)
        out.bits += static_cast<long>(rt.frame_len) * rt.qam[static_cast<std::size_t>(j)]->eta;
    try {
        const LatticeDecoder dec(hr);
        for (int t = 0; t < rt.frame_len; ++t) {
            const Eigen::VectorXd target = vectorize(y[static_cast<std::size_t>(t)]) + shift;
            const DecodeResult res = dec.closest(target);
            out.nodes += res.nodes;
            bool slot_error = false;
            for (int j = 0; j < 4; ++j) {
                const auto& q = *rt.qam[static_cast<std::size_t>(j)];
                std::pair<int, int> p{res.u[static_cast<std::size_t>(2 * j)], res.u[static_cast<std::size_t>(2 * j + 1)]};
                if (!q.contains(p.first, p.second)) {
                    ++out.out_of_region;
                    double best = std::numeric_limits<double>::infinity();
                    for (const auto& cand : q.points) {
                        const double dr = cand.first - p.first, di = cand.second - p.second;
                        const double d = dr * dr + di * di;
                        if (d < best) { best = d; p = cand; }
                    }
                }
                int dec_idx = 0;
                for (int i = 0; i < static_cast<int>(q.points.size()); ++i)
                    if (q.points[static_cast<std::size_t>(i)] == p) { dec_idx = i; break; }
                const int sent = sent_idx[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
                if (dec_idx != sent) {
                    out.bit_errors += std::popcount(static_cast<unsigned>(dec_idx ^ sent));
                    slot_error = true;
                }
            }
            if (slot_error) ++out.codeword_errors;
        }
    } catch (const DecodeError&) {
        out.aborted = true;
        out.codeword_errors = rt.frame_len;
        out.bit_errors = out.bits;
    }
    out.frame_error = out.codeword_errors > 0;
    return out;
}

FrameOutcome simulate_frame(const SchemeRuntime& rt, const NoiseModel& noise, FrameRng& rng) {
    switch (rt.spec.kind) {
        case SchemeKind::GstTcm: return simulate_gst_tcm_frame(rt, noise, rng);
        case SchemeKind::Subcode: return simulate_subcode_frame(rt, noise, rng);
        case SchemeKind::Uncoded: return simulate_uncoded_frame(rt, noise, rng);
    }
    throw std::logic_error("unreachable");
}

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t experiment_config_hash(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << cfg.scheme.name << '|' << static_cast<int>(cfg.scheme.kind) << '|' << cfg.scheme.ell0 << ','
       << cfg.scheme.ell << ',' << cfg.scheme.eta << ',' << cfg.scheme.level << ',' << cfg.scheme.bpcu << '|';
    for (const auto& g : cfg.scheme.polys)
        os << g[0] << g[1] << g[2] << g[3] << ';';
    os << '|' << cfg.frame_len << '|' << cfg.frames_per_point << '|' << cfg.max_frame_errors << '|'
       << cfg.seed << '|';
    for (double s : cfg.snr_grid) os << s << ',';
    return fnv1a(0xcbf29ce484222325ULL, os.str());
}

std::vector<SimRecord> run_fer_experiment(const ExperimentConfig& cfg) {
    if (cfg.frames_per_point < 1) throw std::invalid_argument("frames_per_point must be >= 1");
    for (std::size_t i = 1; i < cfg.snr_grid.size(); ++i)
        if (!(cfg.snr_grid[i] > cfg.snr_grid[i - 1]))
            throw std::invalid_argument("snr_grid must be strictly increasing");
    const SchemeRuntime rt = make_runtime(cfg.scheme, cfg.frame_len);
    const std::uint64_t chash = experiment_config_hash(cfg);
    const double eb = cfg.scheme.eb();
    const int nthreads = std::max(1, cfg.threads);

    std::vector<SimRecord> records;
    for (std::size_t si = 0; si < cfg.snr_grid.size(); ++si) {
        const auto t0 = std::chrono::steady_clock::now();
        const NoiseModel noise{sigma2_from_snr_db(cfg.snr_grid[si], eb)};
        SimRecord rec;
        rec.snr_db = cfg.snr_grid[si];
        rec.config_hash = chash;
        rec.seed = cfg.seed;

        long next_frame = 0;
        bool stopped = false;
        const long chunk = std::max<long>(nthreads * 8L, 32L);
        while (!stopped && next_frame < cfg.frames_per_point) {
            const long count = std::min(chunk, cfg.frames_per_point - next_frame);
            std::vector<FrameOutcome> outcomes(static_cast<std::size_t>(count));
            auto work = [&](long begin, long end) {
                for (long f = begin; f < end; ++f) {
                    const std::uint64_t stream = (static_cast<std::uint64_t>(si) << 32) |
                                                 static_cast<std::uint64_t>(next_frame + f);
                    FrameRng rng(cfg.seed, stream);
                    outcomes[static_cast<std::size_t>(f)] = simulate_frame(rt, noise, rng);
                }
            };
            if (nthreads == 1 || count == 1) {
                work(0, count);
            } else {
                std::vector<std::thread> pool;
                const long per = (count + nthreads - 1) / nthreads;
                for (int w = 0; w < nthreads; ++w) {
                    const long b = w * per, e = std::min(count, b + per);
                    if (b < e) pool.emplace_back(work, b, e);
                }
                for (auto& th : pool) th.join();
            }
            // ordered prefix reduction: the stop frame does not depend on
            // the thread count
            for (long f = 0; f < count && !stopped; ++f) {
                const auto& o = outcomes[static_cast<std::size_t>(f)];
                ++rec.frames_run;
                rec.frame_errors += o.frame_error ? 1 : 0;
                rec.codewords += o.codewords;
                rec.codeword_errors += o.codeword_errors;
                rec.bits += o.bits;
                rec.bit_errors += o.bit_errors;
                rec.decoder_node_visits += o.nodes;
                rec.out_of_region_rate += static_cast<double>(o.out_of_region);
                if (rec.frame_errors >= cfg.max_frame_errors) stopped = true;
            }
            next_frame += count;
        }
        rec.fer = static_cast<double>(rec.frame_errors) / static_cast<double>(rec.frames_run);
        rec.cer = rec.codewords > 0 ? static_cast<double>(rec.codeword_errors) / static_cast<double>(rec.codewords) : 0.0;
        rec.out_of_region_rate = rec.codewords > 0 ? rec.out_of_region_rate / static_cast<double>(rec.codewords) : 0.0;
        rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        records.push_back(rec);
    }
    return records;
}

double snr_at_target(const std::vector<SimRecord>& records, double target, bool use_cer) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    // A point with zero observed errors has an undefined log-rate; for
    // interpolation it is replaced by the continuity-corrected estimate
    // 0.5 / trials, an upper-bound surrogate for the true rate.
    auto rate = [&](const SimRecord& r) {
        const double raw = use_cer ? r.cer : r.fer;
        const double trials = static_cast<double>(use_cer ? r.codewords : r.frames_run);
        return raw > 0 ? raw : (trials > 0 ? 0.5 / trials : 0.0);
    };
    for (std::size_t i = 1; i < records.size(); ++i) {
        const double a = rate(records[i - 1]), b = rate(records[i]);
        if (a >= target && b <= target && a > 0 && b > 0 && a != b) {
            const double la = std::log10(a), lb = std::log10(b), lt = std::log10(target);
            const double w = (la - lt) / (la - lb);
            return records[i - 1].snr_db + w * (records[i].snr_db - records[i - 1].snr_db);
        }
    }
    return nan;
}

namespace {

std::string git_revision() {
    std::string rev = "unknown";
    if (FILE* p = popen("git rev-parse HEAD 2>/dev/null", "r")) {
        char buf[64] = {};
        if (fgets(buf, sizeof buf, p)) {
            rev.assign(buf);
            while (!rev.empty() && (rev.back() == '\n' || rev.back() == '\r')) rev.pop_back();
        }
        pclose(p);
        if (rev.empty()) rev = "unknown";
    }
    return rev;
}

nlohmann::json config_json(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["scheme"] = cfg.scheme.name;
    switch (cfg.scheme.kind) {
        case SchemeKind::GstTcm: j["kind"] = "gst_tcm"; break;
        case SchemeKind::Subcode: j["kind"] = "subcode"; break;
        case SchemeKind::Uncoded: j["kind"] = "uncoded"; break;
    }
    j["ell0"] = cfg.scheme.ell0;
    j["ell"] = cfg.scheme.ell;
    j["eta"] = cfg.scheme.eta;
    j["level"] = cfg.scheme.level;
    j["bpcu"] = cfg.scheme.bpcu;
    nlohmann::json polys = nlohmann::json::array();
    for (const auto& g : cfg.scheme.polys) polys.push_back({g[0], g[1], g[2], g[3]});
    j["polynomials"] = polys;
    j["snr_grid"] = cfg.snr_grid;
    j["frames_per_point"] = cfg.frames_per_point;
    j["max_frame_errors"] = cfg.max_frame_errors;
    j["frame_len"] = cfg.frame_len;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["config_hash"] = experiment_config_hash(cfg);
    j["es"] = cfg.scheme.es();
    j["rate_bpcu"] = cfg.scheme.rate();
    j["eb"] = cfg.scheme.eb();
    return j;
}

}  // namespace

void emit_plot_data(const std::vector<std::pair<ExperimentConfig, std::vector<SimRecord>>>& runs,
                    const std::string& out_base) {
    if (runs.empty()) throw std::invalid_argument("emit_plot_data: no runs");
    for (const auto& [cfg, records] : runs)
        if (records.empty()) throw std::invalid_argument("emit_plot_data: empty record list");

    std::vector<std::string> csv_files;
    for (const auto& [cfg, records] : runs) {
        const std::string path = out_base + "-" + cfg.scheme.name + ".csv";
        const bool fresh = !std::ifstream(path).good();
        std::ofstream os(path, std::ios::app);
        if (!os) throw std::runtime_error("cannot open " + path);
        if (fresh)
            os << "snr_db,ebn0_db,frames,frame_errors,fer,fer_halfwidth,codewords,codeword_errors,"
                  "cer,bits,bit_errors,wall_time_s,decoder_node_visits,out_of_region_rate,"
                  "config_hash,seed\n";
        for (const auto& r : records) {
            const double hw = 1.96 * std::sqrt(r.fer * (1.0 - r.fer) / static_cast<double>(r.frames_run));
            os << r.snr_db << ',' << r.snr_db - 10.0 * std::log10(2.0) << ',' << r.frames_run << ','
               << r.frame_errors << ',' << r.fer << ',' << hw << ',' << r.codewords << ','
               << r.codeword_errors << ',' << r.cer << ',' << r.bits << ',' << r.bit_errors << ','
               << r.wall_time_s << ',' << r.decoder_node_visits << ',' << r.out_of_region_rate << ','
               << r.config_hash << ',' << r.seed << '\n';
        }
        csv_files.push_back(path);
    }

    nlohmann::json manifest;
    manifest["git_revision"] = git_revision();
    manifest["files"] = csv_files;
    nlohmann::json cfgs = nlohmann::json::array();
    for (const auto& [cfg, records] : runs) cfgs.push_back(config_json(cfg));
    manifest["runs"] = cfgs;
    std::ofstream mos(out_base + ".manifest.json");
    if (!mos) throw std::runtime_error("cannot open manifest");
    mos << manifest.dump(2) << '\n';

    std::ofstream gp(out_base + ".gp");
    if (!gp) throw std::runtime_error("cannot open plot stub");
    gp << "set logscale y\nset xlabel 'SNR = n_T E_b/N_0 (dB)'\nset ylabel 'FER'\nset grid\nplot \\\n";
    for (std::size_t i = 0; i < runs.size(); ++i) {
        gp << "  '" << csv_files[i] << "' using 1:5 with linespoints title '"
           << runs[i].first.scheme.name << "'";
        gp << (i + 1 < runs.size() ? ", \\\n" : "\n");
    }
}

namespace {

std::string poly_string(const std::vector<QuaternaryPoly>& polys) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (i) os << ',';
        bool first = true;
        for (int d = 0; d < 4; ++d) {
            const int c = polys[i][static_cast<std::size_t>(d)];
            if (c == 0) continue;
            if (!first) os << '+';
            if (d == 0) {
                os << c;
            } else {
                if (c != 1) os << c;
                os << 'D';
                if (d > 1) os << '^' << d;
            }
            first = false;
        }
        if (first) os << '0';
    }
    os << ')';
    return os.str();
}

struct CodedDesign {
    int example;
    std::string partition;
    int ell0, ell, eta, bpcu, states;
    std::vector<QuaternaryPoly> polys;
};

const std::vector<CodedDesign>& coded_designs() {
    static const QuaternaryPoly g1{1, 0, 0, 0}, gD{0, 1, 0, 0}, gD2{0, 0, 1, 0};
    static const QuaternaryPoly g1D2{1, 0, 1, 0}, g1D3{1, 0, 0, 1};
    static const std::vector<CodedDesign> rows = {
        {1, "E8/2Z8", 2, 2, 4, 5, 4, {g1, gD}},
        {1, "E8/2Z8", 2, 2, 4, 5, 16, {gD, g1D2}},
        {2, "Z8/E8", 0, 2, 4, 7, 4, {g1, gD}},
        {2, "Z8/E8", 0, 2, 4, 7, 16, {gD, g1D2}},
        {3, "Z8/L8", 0, 3, 4, 6, 16, {gD, gD2, g1D2}},
        {3, "Z8/L8", 0, 3, 4, 6, 64, {gD, gD2, g1D3}},
        {4, "Z8/L8", 0, 3, 6, 10, 16, {gD, gD2, g1D2}},
        {4, "Z8/L8", 0, 3, 6, 10, 64, {gD, gD2, g1D3}},
    };
    return rows;
}

}  // namespace

std::vector<GainReportRow> run_gain_report() {
    std::vector<GainReportRow> rows;
    for (const auto& d : coded_designs()) {
        const PartitionConfig p = make_partition(d.ell0, d.ell);
        const TrellisSpec t = build_trellis(d.polys);
        const GainReport g = gain_report(t, p, carve_qam(d.eta).energy, uncoded_profile(d.bpcu).es);
        GainReportRow r;
        r.example = d.example;
        r.partition = d.partition;
        r.ell0 = d.ell0;
        r.ell = d.ell;
        r.q1 = p.q1();
        r.q2 = p.q2();
        r.q3 = p.q3(d.eta);
        r.bpcu = d.bpcu;
        r.qam = 1 << d.eta;
        r.states = d.states;
        r.polys = poly_string(d.polys);
        r.gamma_p_db = g.gamma_p_db;
        r.gamma_s_db = g.gamma_s_db;
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string gain_report_text(const std::vector<GainReportRow>& rows) {
    std::ostringstream os;
    os << "ex  partition  l0 l  q1 q2 q3  bpcu  QAM  states  polynomials      gain(par)  gain(seq)\n";
    for (const auto& r : rows) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-3d %-9s %-2d %-2d %-2d %-2d %-3d %-5d %-4d %-7d %-16s %8.1f %10.1f\n",
                      r.example, r.partition.c_str(), r.ell0, r.ell, r.q1, r.q2, r.q3, r.bpcu, r.qam,
                      r.states, r.polys.c_str(), r.gamma_p_db, r.gamma_s_db);
        os << buf;
    }
    return os.str();
}

std::string gain_report_csv(const std::vector<GainReportRow>& rows) {
    std::ostringstream os;
    os << "example,partition,l0,l,q1,q2,q3,bpcu,qam,states,polynomials,gamma_p_db,gamma_s_db\n";
    for (const auto& r : rows)
        os << r.example << ',' << r.partition << ',' << r.ell0 << ',' << r.ell << ',' << r.q1 << ','
           << r.q2 << ',' << r.q3 << ',' << r.bpcu << ',' << r.qam << ',' << r.states << ",\""
           << r.polys << "\"," << r.gamma_p_db << ',' << r.gamma_s_db << '\n';
    return os.str();
}

namespace {

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> g;
    for (double s = lo; s <= hi + 1e-9; s += step) g.push_back(s);
    return g;
}

std::vector<Preset> build_presets() {
    std::vector<Preset> out;
    auto add = [&](const std::string& name, const std::string& desc, SchemeSpec spec,
                   std::vector<double> snrs, long frames, int frame_len) {
        Preset p;
        p.name = name;
        p.description = desc;
        p.config.scheme = std::move(spec);
        p.config.snr_grid = std::move(snrs);
        p.config.frames_per_point = frames;
        p.config.frame_len = frame_len;
        out.push_back(std::move(p));
    };

    for (const auto& d : coded_designs()) {
        const std::string name = "example" + std::to_string(d.example) + "-" +
                                 std::to_string(d.states) + "state";
        const std::string desc = "trellis-coded " + std::to_string(1 << d.eta) + "-QAM, partition " +
                                 d.partition + ", " + std::to_string(d.states) + " states, " +
                                 std::to_string(d.bpcu) + " bpcu";
        // grids bracket the FER 1e-2 crossing measured in calibration runs
        const double lo = d.bpcu >= 10 ? 18.0 : (d.bpcu == 7 ? 16.0 : 15.0);
        add(name, desc, gst_tcm_scheme(name, d.ell0, d.ell, d.polys, d.eta), grid(lo, lo + 8.0, 1.0),
            2000, 130);
    }
    for (int bpcu : {5, 6, 7, 10, 12}) {
        const std::string name = "uncoded-" + std::to_string(bpcu) + "bpcu";
        const double lo = bpcu >= 10 ? 20.0 : (bpcu == 7 ? 18.0 : 17.0);
        add(name, "uncoded mixed-QAM reference at " + std::to_string(bpcu) + " bpcu",
            uncoded_scheme(name, bpcu), grid(lo, lo + 9.0, 1.0), 2000, 130);
    }
    add("subcode-6bpcu", "level-2 sublattice codewords carved from 16-QAM, 6 bpcu",
        subcode_scheme("subcode-6bpcu", 2, 4), grid(13.0, 22.0, 1.0), 20000, 1);
    add("subcode-12bpcu", "level-2 sublattice codewords carved from 128-QAM, 12 bpcu",
        subcode_scheme("subcode-12bpcu", 2, 7), grid(20.0, 29.0, 1.0), 20000, 1);
    return out;
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> p = build_presets();
    return p;
}

const Preset& preset_by_name(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace gsttcm
