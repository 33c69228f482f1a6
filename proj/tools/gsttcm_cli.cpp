// Command-line front end: Monte-Carlo sweeps, the design-gain table and a
// quick self check. Exit codes: 0 success, 1 failed check or runtime error,
// 2 usage or configuration error.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "gsttcm/simulate.hpp"

using namespace gsttcm;
using nlohmann::json;

namespace {

QuaternaryPoly poly_from_json(const json& j) {
    QuaternaryPoly p{};
    if (!j.is_array() || j.size() > 4) throw std::invalid_argument("polynomial must be <= 4 coefficients");
    for (std::size_t i = 0; i < j.size(); ++i) p[i] = j[i].get<int>();
    return p;
}

SchemeSpec scheme_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    const std::string name = j.value("name", kind);
    if (kind == "gst_tcm") {
        std::vector<QuaternaryPoly> polys;
        for (const auto& p : j.at("polys")) polys.push_back(poly_from_json(p));
        return gst_tcm_scheme(name, j.at("ell0").get<int>(), j.at("ell").get<int>(), polys,
                              j.value("eta", 4));
    }
    if (kind == "subcode") return subcode_scheme(name, j.at("level").get<int>(), j.value("eta", 4));
    if (kind == "uncoded") return uncoded_scheme(name, j.at("bpcu").get<int>());
    throw std::invalid_argument("unknown scheme kind: " + kind);
}

ExperimentConfig config_from_json(const json& j) {
    ExperimentConfig cfg;
    if (j.contains("preset"))
        cfg = preset_by_name(j["preset"].get<std::string>()).config;
    else
        cfg.scheme = scheme_from_json(j.at("scheme"));
    if (j.contains("snr_grid")) cfg.snr_grid = j["snr_grid"].get<std::vector<double>>();
    if (j.contains("frames")) cfg.frames_per_point = j["frames"].get<long>();
    if (j.contains("max_frame_errors")) cfg.max_frame_errors = j["max_frame_errors"].get<long>();
    if (j.contains("frame_len")) cfg.frame_len = j["frame_len"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    return cfg;
}

void print_records(const ExperimentConfig& cfg, const std::vector<SimRecord>& records) {
    std::printf("# %s  (Es=%.3f, %.1f bpcu, Eb=%.4f)\n", cfg.scheme.name.c_str(), cfg.scheme.es(),
                cfg.scheme.rate(), cfg.scheme.eb());
    std::printf("%8s %9s %8s %10s %10s %9s\n", "snr_db", "frames", "errors", "fer", "cer", "time_s");
    for (const auto& r : records)
        std::printf("%8.2f %9ld %8ld %10.3e %10.3e %9.2f\n", r.snr_db, r.frames_run,
                    r.frame_errors, r.fer, r.cer, r.wall_time_s);
}

int run_simulate(const std::string& config_path, const std::vector<double>& snr_override,
                 long frames_override, long seed_override, const std::string& out_override,
                 int threads_override) {
    json j;
    {
        std::ifstream is(config_path);
        if (!is) {
            std::cerr << "cannot open config: " << config_path << "\n";
            return 2;
        }
        try {
            is >> j;
        } catch (const std::exception& e) {
            std::cerr << "bad JSON in " << config_path << ": " << e.what() << "\n";
            return 2;
        }
    }
    ExperimentConfig cfg;
    try {
        cfg = config_from_json(j);
    } catch (const std::exception& e) {
        std::cerr << "bad config: " << e.what() << "\n";
        return 2;
    }
    if (!snr_override.empty()) cfg.snr_grid = snr_override;
    if (frames_override > 0) cfg.frames_per_point = frames_override;
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
    if (!out_override.empty()) cfg.out = out_override;
    if (threads_override > 0) cfg.threads = threads_override;
    if (cfg.snr_grid.empty()) {
        std::cerr << "empty SNR grid\n";
        return 2;
    }
    try {
        const auto records = run_fer_experiment(cfg);
        print_records(cfg, records);
        if (!cfg.out.empty()) {
            emit_plot_data({{cfg, records}}, cfg.out);
            std::printf("# wrote %s-%s.csv, %s.manifest.json, %s.gp\n", cfg.out.c_str(),
                        cfg.scheme.name.c_str(), cfg.out.c_str(), cfg.out.c_str());
        }
        const double op = snr_at_target(records, 1e-2);
        if (!std::isnan(op)) std::printf("# SNR @ FER 1e-2: %.2f dB\n", op);
    } catch (const std::exception& e) {
        std::cerr << "simulation failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

int run_gain_report_cmd(const std::string& out) {
    const auto rows = run_gain_report();
    std::cout << gain_report_text(rows);
    if (!out.empty()) {
        std::ofstream os(out);
        if (!os) {
            std::cerr << "cannot open " << out << "\n";
            return 2;
        }
        os << gain_report_csv(rows);
        std::cout << "# wrote " << out << "\n";
    }
    return 0;
}

int run_verify() {
    int bad = 0;
    auto check = [&bad](const char* what, bool ok) {
        std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what);
        if (!ok) ++bad;
    };
    bool dets = true;
    for (int k = 0; k <= 4; ++k) dets = dets && std::abs(min_det_subcode(k, 2) - std::ldexp(0.2, k)) < 1e-9;
    check("sublattice minimum determinants", dets);

    const auto rows = run_gain_report();
    bool gains = rows.size() == 8;
    const double gp[8] = {2.0, 2.0, 2.0, 2.0, 2.3, 2.3, 1.3, 1.3};
    const double gs[8] = {1.4, 2.5, 1.4, 2.5, 2.0, 3.0, 1.0, 2.0};
    for (std::size_t i = 0; gains && i < rows.size(); ++i)
        gains = std::abs(rows[i].gamma_p_db - gp[i]) < 0.05 && std::abs(rows[i].gamma_s_db - gs[i]) < 0.05;
    check("design gain table", gains);

    const auto chk = verify_e8_equivalence();
    check("sublattice generator (d2=4, |det|=16)", chk.d2_min == 4 && chk.abs_det == 16);

    bool rt = true;
    const auto cfg = make_gst_tcm_config(make_partition(2, 2), {{{1, 0, 0, 0}}, {{0, 1, 0, 0}}}, 4, 20);
    for (int f = 0; f < 5 && rt; ++f) {
        FrameRng rng(99, static_cast<std::uint64_t>(f));
        FrameBits bits(static_cast<std::size_t>(cfg.frame_bits()));
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
        const auto enc = gst_tcm_encode(bits, cfg);
        const Mat2c h = draw_channel(rng);
        const auto y = transmit(enc.codewords, h, NoiseModel{0.0}, rng);
        std::vector<Vec8> yv;
        for (const auto& m : y) yv.push_back(vectorize(m));
        rt = viterbi_decode(yv, real_channel_matrix(h), cfg).bits == bits;
    }
    check("noiseless encode/decode round trip", rt);
    std::printf("%s\n", bad == 0 ? "verify: all checks passed" : "verify: FAILED");
    return bad == 0 ? 0 : 1;
}

int run_presets() {
    std::printf("%-22s %-8s %6s %8s %8s  %s\n", "name", "kind", "bpcu", "frames", "snr", "description");
    for (const auto& p : presets()) {
        const char* kind = p.config.scheme.kind == SchemeKind::GstTcm ? "coded"
                           : p.config.scheme.kind == SchemeKind::Subcode ? "subcode"
                                                                         : "uncoded";
        char snr[32];
        std::snprintf(snr, sizeof snr, "%g..%g", p.config.snr_grid.front(), p.config.snr_grid.back());
        std::printf("%-22s %-8s %6.1f %8ld %8s  %s\n", p.name.c_str(), kind, p.config.scheme.rate(),
                    p.config.frames_per_point, snr, p.description.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Golden-code trellis modulation simulator"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    std::vector<double> snr;
    long frames = -1, seed = -1;
    int threads = -1;

    auto* sim = app.add_subcommand("simulate", "run a Monte-Carlo sweep from a JSON config");
    sim->add_option("config", config_path, "JSON config file")->required();
    sim->add_option("--snr", snr, "override the SNR grid (dB)")->delimiter(',');
    sim->add_option("--frames", frames, "override frames per SNR point");
    sim->add_option("--seed", seed, "override the master seed");
    sim->add_option("--out", out_path, "output base path for csv/manifest/gnuplot files");
    sim->add_option("--threads", threads, "worker thread count");

    auto* gr = app.add_subcommand("gain-report", "print the coded-design gain table");
    gr->add_option("--out", out_path, "also write the table as CSV");

    app.add_subcommand("verify", "run the built-in self checks");
    app.add_subcommand("presets", "list the compiled-in experiment profiles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (sim->parsed()) return run_simulate(config_path, snr, frames, seed, out_path, threads);
    if (gr->parsed()) return run_gain_report_cmd(out_path);
    if (app.get_subcommand("verify")->parsed()) return run_verify();
    return run_presets();
}
