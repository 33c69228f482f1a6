#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsttcm/analysis.hpp"
#include "gsttcm/channel.hpp"
#include "gsttcm/trellis.hpp"

namespace gsttcm {

enum class SchemeKind { Uncoded, Subcode, GstTcm };

/// One transmission scheme. Energy accounting: E_b = es / q with
/// q = bpcu / 2 bits per information symbol.
struct SchemeSpec {
    SchemeKind kind = SchemeKind::GstTcm;
    std::string name;

    // gst_tcm
    int ell0 = 2;
    int ell = 2;
    std::vector<QuaternaryPoly> polys;

    // subcode: chain level k of the transmitted sublattice
    int level = 2;

    // uncoded: mixed-QAM profile
    int bpcu = 5;

    int eta = 4;  // QAM size exponent (gst_tcm, subcode)

    double es() const;    // average energy per QAM symbol
    double rate() const;  // bits per channel use
    double eb() const { return es() / (rate() / 2.0); }
};

SchemeSpec gst_tcm_scheme(const std::string& name, int ell0, int ell,
                          std::vector<QuaternaryPoly> polys, int eta);
SchemeSpec subcode_scheme(const std::string& name, int level, int eta);
SchemeSpec uncoded_scheme(const std::string& name, int bpcu);

struct ExperimentConfig {
    SchemeSpec scheme;
    std::vector<double> snr_grid;  // dB, strictly increasing
    long frames_per_point = 2000;
    long max_frame_errors = 100;   // early stop
    int frame_len = 130;           // codewords per frame
    std::uint64_t seed = 1;
    std::string out;               // output base path (no extension)
    int threads = 1;
};

struct SimRecord {
    double snr_db = 0.0;
    long frames_run = 0;
    long frame_errors = 0;
    double fer = 0.0;
    long codewords = 0;
    long codeword_errors = 0;
    double cer = 0.0;
    long bit_errors = 0;
    long bits = 0;
    double wall_time_s = 0.0;
    std::uint64_t decoder_node_visits = 0;
    double out_of_region_rate = 0.0;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

/// Stable FNV-1a hash of the canonical config description.
std::uint64_t experiment_config_hash(const ExperimentConfig& cfg);

/// Monte-Carlo FER/CER sweep. Frames use independent RNG substreams keyed
/// by (seed, snr index, frame index); the early-stop rule is the prefix
/// rule (smallest frame count reaching max_frame_errors), so results do
/// not depend on the thread count. Decoder aborts count as frame errors.
std::vector<SimRecord> run_fer_experiment(const ExperimentConfig& cfg);

/// Log-linear interpolation of the SNR reaching `target` FER (or CER when
/// use_cer). Returns NaN if the target is not bracketed.
double snr_at_target(const std::vector<SimRecord>& records, double target, bool use_cer = false);

/// Writes <out>.csv (records), <out>.manifest.json (config echo, git
/// revision, seed) and <out>.gp (gnuplot stub). CSV is append-only.
void emit_plot_data(const std::vector<std::pair<ExperimentConfig, std::vector<SimRecord>>>& runs,
                    const std::string& out_base);

struct GainReportRow {
    int example = 0;
    std::string partition;  // e.g. "E8/2Z8"
    int ell0 = 0, ell = 0;
    int q1 = 0, q2 = 0, q3 = 0;
    int bpcu = 0;
    int qam = 0;
    int states = 0;
    std::string polys;
    double gamma_p_db = 0.0;
    double gamma_s_db = 0.0;
};

/// Recomputes the full coded-scheme parameter table from the analysis
/// routines (one row per trellis code).
std::vector<GainReportRow> run_gain_report();

std::string gain_report_text(const std::vector<GainReportRow>& rows);
std::string gain_report_csv(const std::vector<GainReportRow>& rows);

struct Preset {
    std::string name;
    std::string description;
    ExperimentConfig config;
};

/// Compiled-in experiment profiles: every coded design plus the uncoded
/// and sublattice baselines.
const std::vector<Preset>& presets();
const Preset& preset_by_name(const std::string& name);

}  // namespace gsttcm
