#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gsttcm/analysis.hpp"
#include "gsttcm/channel.hpp"
#include "gsttcm/golden.hpp"
#include "gsttcm/lattice.hpp"
#include "gsttcm/simulate.hpp"
#include "gsttcm/trellis.hpp"

namespace py = pybind11;
using namespace gsttcm;

namespace {

QuaternaryPoly poly_from_list(const std::vector<int>& coeffs) {
    if (coeffs.size() > 4) throw std::invalid_argument("polynomial degree must be < 4");
    QuaternaryPoly g{};
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] < 0 || coeffs[i] > 3) throw std::invalid_argument("coefficients must be in 0..3");
        g[i] = coeffs[i];
    }
    return g;
}

std::vector<QuaternaryPoly> polys_from_lists(const std::vector<std::vector<int>>& polys) {
    std::vector<QuaternaryPoly> out;
    out.reserve(polys.size());
    for (const auto& p : polys) out.push_back(poly_from_list(p));
    return out;
}

LatticeVector lattice_vector(const std::vector<int>& v) {
    if (v.size() != 8) throw std::invalid_argument("lattice vectors have 8 integer components");
    LatticeVector x{};
    for (int i = 0; i < 8; ++i) x[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)];
    return x;
}

py::dict record_dict(const SimRecord& r) {
    py::dict d;
    d["snr_db"] = r.snr_db;
    d["frames"] = r.frames_run;
    d["frame_errors"] = r.frame_errors;
    d["fer"] = r.fer;
    d["codewords"] = r.codewords;
    d["codeword_errors"] = r.codeword_errors;
    d["cer"] = r.cer;
    d["bits"] = r.bits;
    d["bit_errors"] = r.bit_errors;
    d["wall_time_s"] = r.wall_time_s;
    d["out_of_region_rate"] = r.out_of_region_rate;
    d["config_hash"] = r.config_hash;
    d["seed"] = r.seed;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Golden space-time trellis coded modulation: lattice partitions, "
              "trellis analysis, and Monte-Carlo simulation";

    m.def("golden_codeword",
          [](const std::vector<int>& v) { return Mat2c(golden_encode_vector(lattice_vector(v))); },
          py::arg("symbols"),
          "Map 8 integer symbol components (Re a, Im a, ..., Im d) to the 2x2 codeword matrix");
    m.def("det_metric", [](const Mat2c& x) { return det_metric(x); }, py::arg("codeword"),
          "Squared determinant modulus |det X|^2");
    m.def("min_det_subcode", &min_det_subcode, py::arg("level"), py::arg("radius") = 2,
          "Minimum nonzero |det X|^2 over the level-k subcode within a coefficient box");

    m.def("code_generator",
          [](int level) {
              std::vector<std::vector<int>> rows;
              for (const auto& g : code_at_level(level).generator)
                  rows.emplace_back(g.begin(), g.end());
              return rows;
          },
          py::arg("level"), "Generator rows of the binary code at the given partition level");

    m.def("delta_p",
          [](int ell0, int ell) { return delta_p(make_partition(ell0, ell)); },
          py::arg("ell0"), py::arg("ell"),
          "Minimum determinant over parallel transitions of the partition window");
    m.def("delta_s",
          [](const std::vector<std::vector<int>>& polys, int ell0, int ell, int max_event_len,
             bool brute) {
              const auto r = delta_s(build_trellis(polys_from_lists(polys)),
                                     make_partition(ell0, ell), max_event_len, brute);
              py::dict d;
              d["value"] = r.value;
              d["event_length"] = r.event_length;
              d["event_labels"] = r.event_labels;
              d["truncated"] = r.truncated;
              return d;
          },
          py::arg("polys"), py::arg("ell0"), py::arg("ell"), py::arg("max_event_len") = 8,
          py::arg("brute") = false, "Minimum sum of per-branch determinant bounds over error events");
    m.def("shortest_error_events",
          [](const std::vector<std::vector<int>>& polys, int max_len) {
              const auto t = build_trellis(polys_from_lists(polys));
              std::vector<std::pair<int, std::vector<int>>> out;
              for (const auto& e : enumerate_simple_error_events(t, max_len))
                  out.emplace_back(e.length, e.labels);
              return out;
          },
          py::arg("polys"), py::arg("max_len") = 8,
          "Simple error events (length, branch labels) of the quaternary trellis");

    m.def("gain_table",
          []() {
              py::list rows;
              for (const auto& r : run_gain_report()) {
                  py::dict d;
                  d["example"] = r.example;
                  d["partition"] = r.partition;
                  d["ell0"] = r.ell0;
                  d["ell"] = r.ell;
                  d["bpcu"] = r.bpcu;
                  d["qam"] = r.qam;
                  d["states"] = r.states;
                  d["polys"] = r.polys;
                  d["gamma_p_db"] = r.gamma_p_db;
                  d["gamma_s_db"] = r.gamma_s_db;
                  rows.append(d);
              }
              return rows;
          },
          "Asymptotic gain pairs for all reference designs");

    m.def("sublattice_check",
          []() {
              const auto c = verify_e8_equivalence();
              py::dict d;
              d["d2_min"] = c.d2_min;
              d["abs_det"] = c.abs_det;
              d["coeff_bound"] = c.coeff_bound;
              return d;
          },
          "Squared minimum distance and determinant of the level-2 sublattice generator");

    m.def("preset_names",
          []() {
              std::vector<std::string> names;
              for (const auto& p : presets()) names.push_back(p.name);
              return names;
          },
          "Names of the built-in experiment presets");

    m.def("run_preset",
          [](const std::string& name, py::object snr_grid, py::object frames,
             py::object max_frame_errors, py::object frame_len, std::uint64_t seed, int threads) {
              ExperimentConfig cfg = preset_by_name(name).config;
              if (!snr_grid.is_none()) cfg.snr_grid = snr_grid.cast<std::vector<double>>();
              if (!frames.is_none()) cfg.frames_per_point = frames.cast<long>();
              if (!max_frame_errors.is_none()) cfg.max_frame_errors = max_frame_errors.cast<long>();
              if (!frame_len.is_none()) cfg.frame_len = frame_len.cast<int>();
              cfg.seed = seed;
              cfg.threads = threads;
              py::list out;
              for (const auto& r : run_fer_experiment(cfg)) out.append(record_dict(r));
              return out;
          },
          py::arg("name"), py::arg("snr_grid") = py::none(), py::arg("frames") = py::none(),
          py::arg("max_frame_errors") = py::none(), py::arg("frame_len") = py::none(),
          py::arg("seed") = 1, py::arg("threads") = 1,
          "Run a preset Monte-Carlo experiment, optionally overriding grid and budgets");

    m.def("snr_at_target",
          [](const std::vector<std::pair<double, double>>& curve, double target) {
              std::vector<SimRecord> recs;
              for (const auto& [s, f] : curve) {
                  SimRecord r;
                  r.snr_db = s;
                  r.fer = f;
                  recs.push_back(r);
              }
              return snr_at_target(recs, target, false);
          },
          py::arg("curve"), py::arg("target") = 1e-2,
          "Log-linear interpolation of the SNR where an (snr_db, fer) curve crosses a target");

    m.def("roundtrip",
          [](int ell0, int ell, const std::vector<std::vector<int>>& polys, int eta, int frame_len,
             std::uint64_t seed) {
              const auto cfg = make_gst_tcm_config(make_partition(ell0, ell),
                                                   polys_from_lists(polys), eta, frame_len);
              FrameRng rng(seed, 0);
              FrameBits bits(static_cast<std::size_t>(cfg.frame_bits()));
              for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
              const auto enc = gst_tcm_encode(bits, cfg);
              const Mat2c h = draw_channel(rng);
              std::vector<Vec8> y;
              y.reserve(enc.codewords.size());
              for (const auto& x : enc.codewords) y.push_back(vectorize(Mat2c(h * x)));
              const auto dec = viterbi_decode(y, real_channel_matrix(h), cfg);
              return dec.bits == bits;
          },
          py::arg("ell0"), py::arg("ell"), py::arg("polys"), py::arg("eta") = 4,
          py::arg("frame_len") = 20, py::arg("seed") = 1,
          "Noiseless encode/decode round trip through a random channel; True when the payload survives");
}
