#include "gsttcm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <stdexcept>

#include "gsttcm/sphere.hpp"

namespace gsttcm {

double min_det_subcode(int k, int radius) {
    if (k < 0 || k > 4) throw std::domain_error("min_det_subcode: k in 0..4");
    if (radius < 1) throw std::domain_error("min_det_subcode: radius >= 1");
    double best = std::numeric_limits<double>::infinity();
    LatticeVector v{};
    const int span = 2 * radius + 1;
    long total = 1;
    for (int i = 0; i < 8; ++i) total *= span;
    for (long idx = 0; idx < total; ++idx) {
        long t = idx;
        bool zero = true;
        for (int i = 0; i < 8; ++i) {
            v[static_cast<std::size_t>(i)] = static_cast<int>(t % span) - radius;
            if (v[static_cast<std::size_t>(i)] != 0) zero = false;
            t /= span;
        }
        if (zero) continue;
        Mat2c x = golden_encode_vector(v);
        if (k > 0) x = subcode_codeword(x, k);
        best = std::min(best, det_metric(x));
    }
    return best;
}

double delta_p(const PartitionConfig& cfg) {
    return std::ldexp(kDeltaMin, cfg.ell0 + cfg.ell);
}

std::optional<int> partition_depth(const Bits8& word) {
    if (pack_bits(word) == 0) return std::nullopt;
    int depth = 0;
    for (int k = 1; k <= 3; ++k)
        if (code_at_level(k).contains(word)) depth = k;
    return depth;
}

double branch_min_det(int label, const std::vector<Bits8>& hc1_rows) {
    const Bits8 c = trellis_coset_leader(label, hc1_rows);
    const auto depth = partition_depth(c);
    if (!depth) return 0.0;  // same coset: the zero difference is available
    return std::ldexp(kDeltaMin, *depth);
}

double branch_min_det_brute(int label, const std::vector<Bits8>& hc1_rows, int radius) {
    const Bits8 c = trellis_coset_leader(label, hc1_rows);
    if (pack_bits(c) == 0) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    LatticeVector v{};
    const int span = 2 * radius + 1;
    long total = 1;
    for (int i = 0; i < 8; ++i) total *= span;
    for (long idx = 0; idx < total; ++idx) {
        long t = idx;
        for (int i = 0; i < 8; ++i) {
            v[static_cast<std::size_t>(i)] = 2 * (static_cast<int>(t % span) - radius) + c[static_cast<std::size_t>(i)];
            t /= span;
        }
        best = std::min(best, det_metric(golden_encode_vector(v)));
    }
    return best;
}

namespace {

// Weight of a trellis label from its base-4 digits alone: the first nonzero
// alpha_i pins the coset to depth l0 + i.
double label_weight(int label, const PartitionConfig& cfg) {
    if (label == 0) return 0.0;
    for (int i = 0; i < cfg.ell; ++i) {
        const int digit = (label >> (2 * (cfg.ell - 1 - i))) & 3;
        if (digit != 0) return std::ldexp(kDeltaMin, cfg.ell0 + i);
    }
    return 0.0;
}

// Exact minimum event weight over events of any length (Dijkstra on the
// nonzero-state graph).
double min_event_weight(const TrellisSpec& trellis, const std::vector<double>& w) {
    const int S = trellis.states;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(static_cast<std::size_t>(S), inf);
    using Node = std::pair<double, int>;
    std::priority_queue<Node, std::vector<Node>, std::greater<>> pq;
    for (int beta = 1; beta < 4; ++beta) {
        const int ns = trellis.next[0][static_cast<std::size_t>(beta)];
        if (ns == 0) continue;
        const double d = w[static_cast<std::size_t>(trellis.output[0][static_cast<std::size_t>(beta)])];
        if (d < dist[static_cast<std::size_t>(ns)]) {
            dist[static_cast<std::size_t>(ns)] = d;
            pq.emplace(d, ns);
        }
    }
    double best = inf;
    while (!pq.empty()) {
        const auto [d, s] = pq.top();
        pq.pop();
        if (d > dist[static_cast<std::size_t>(s)]) continue;
        for (int beta = 0; beta < 4; ++beta) {
            const int ns = trellis.next[static_cast<std::size_t>(s)][static_cast<std::size_t>(beta)];
            const double nd = d + w[static_cast<std::size_t>(trellis.output[static_cast<std::size_t>(s)][static_cast<std::size_t>(beta)])];
            if (ns == 0) {
                best = std::min(best, nd);
            } else if (nd < dist[static_cast<std::size_t>(ns)]) {
                dist[static_cast<std::size_t>(ns)] = nd;
                pq.emplace(nd, ns);
            }
        }
    }
    return best;
}

}  // namespace

DeltaSResult delta_s(const TrellisSpec& trellis, const PartitionConfig& cfg,
                     int max_event_len, bool brute_force) {
    if (trellis.ell != cfg.ell)
        throw std::invalid_argument("delta_s: trellis output count must match the partition");
    const auto hc1 = coset_generator_matrix(cfg.ell0, cfg.ell);
    std::vector<double> w(static_cast<std::size_t>(cfg.num_cosets()));
    for (int j = 0; j < cfg.num_cosets(); ++j)
        w[static_cast<std::size_t>(j)] =
            brute_force ? branch_min_det_brute(j, hc1) : branch_min_det(j, hc1);

    DeltaSResult res;
    res.value = std::numeric_limits<double>::infinity();
    for (const auto& ev : enumerate_simple_error_events(trellis, max_event_len)) {
        double sum = 0.0;
        for (int lbl : ev.labels) sum += w[static_cast<std::size_t>(lbl)];
        if (sum < res.value) {
            res.value = sum;
            res.event_length = ev.length;
            res.event_labels = ev.labels;
        }
    }
    const double exact = min_event_weight(trellis, w);
    if (exact < res.value - 1e-12) {
        res.value = exact;
        res.truncated = true;
    }
    return res;
}

double asymptotic_gain_db(double delta1, double es1, double delta2, double es2) {
    return 10.0 * std::log10((std::sqrt(delta1) / es1) / (std::sqrt(delta2) / es2));
}

GainReport gain_report(const TrellisSpec& trellis, const PartitionConfig& cfg,
                       double es_coded, double es_uncoded, int max_event_len) {
    GainReport r;
    r.delta_p = delta_p(cfg);
    r.delta_s = delta_s(trellis, cfg, max_event_len).value;
    r.delta_prime_min = std::min(r.delta_p, r.delta_s);
    r.gamma_p_db = asymptotic_gain_db(r.delta_p, es_coded, kDeltaMin, es_uncoded);
    r.gamma_s_db = asymptotic_gain_db(r.delta_s, es_coded, kDeltaMin, es_uncoded);
    r.gamma_prime_db = asymptotic_gain_db(r.delta_prime_min, es_coded, kDeltaMin, es_uncoded);
    return r;
}

bool design_criterion_satisfied(const std::vector<QuaternaryPoly>& polys, int nu) {
    const int ell = static_cast<int>(polys.size());
    for (int i = 0; i + 1 < ell; ++i) {
        if (polys[static_cast<std::size_t>(i)][0] % 4 != 0) return false;
        if (polys[static_cast<std::size_t>(i)][static_cast<std::size_t>(nu)] % 4 != 0) return false;
    }
    const auto& last = polys[static_cast<std::size_t>(ell - 1)];
    return last[0] % 2 == 1 && last[static_cast<std::size_t>(nu)] % 2 == 1;
}

namespace {

QuaternaryPoly scale_poly(const QuaternaryPoly& g, int u) {
    QuaternaryPoly r{};
    for (int d = 0; d < 4; ++d) r[static_cast<std::size_t>(d)] = (g[static_cast<std::size_t>(d)] * u) % 4;
    return r;
}

// Representative of {g, 3g} under Z4 unit scaling.
QuaternaryPoly canonical_poly(const QuaternaryPoly& g) {
    return std::min(g, scale_poly(g, 3));
}

}  // namespace

std::vector<RankedPolynomials> search_polynomials(int states, int ell, const PartitionConfig& cfg,
                                                  int max_per_class, int max_classes) {
    int nu = 0;
    while ((1 << (2 * nu)) < states) ++nu;
    if ((1 << (2 * nu)) != states || nu < 1 || nu > 3)
        throw std::domain_error("search_polynomials: states must be 4, 16 or 64");
    if (ell != cfg.ell) throw std::invalid_argument("search_polynomials: ell must match the partition");

    // Distinct degree-<=nu polynomials up to unit scaling.
    std::vector<QuaternaryPoly> cands;
    for (int code = 0; code < (1 << (2 * (nu + 1))); ++code) {
        QuaternaryPoly g{};
        for (int d = 0; d <= nu; ++d) g[static_cast<std::size_t>(d)] = (code >> (2 * d)) & 3;
        if (canonical_poly(g) == g) cands.push_back(g);
    }

    struct ClassBucket {
        std::vector<std::vector<QuaternaryPoly>> reps;
        bool criterion = false;
    };
    std::map<long, ClassBucket, std::greater<>> classes;

    std::vector<double> w(static_cast<std::size_t>(cfg.num_cosets()));
    for (int j = 0; j < cfg.num_cosets(); ++j) w[static_cast<std::size_t>(j)] = label_weight(j, cfg);

    std::vector<QuaternaryPoly> tuple(static_cast<std::size_t>(ell));
    std::vector<std::size_t> pick(static_cast<std::size_t>(ell), 0);
    const std::size_t ncand = cands.size();
    while (true) {
        for (int i = 0; i < ell; ++i) tuple[static_cast<std::size_t>(i)] = cands[pick[static_cast<std::size_t>(i)]];
        bool full_memory = false;
        for (const auto& g : tuple)
            if (g[static_cast<std::size_t>(nu)] != 0) full_memory = true;
        // Each output must reach all four cosets of its partition level, which
        // requires a unit (odd) coefficient; otherwise a level is never fully
        // used and the encoder does not address the whole constellation.
        bool surjective = true;
        for (const auto& g : tuple) {
            bool unit = false;
            for (int d = 0; d <= nu; ++d) unit = unit || (g[static_cast<std::size_t>(d)] & 1);
            surjective = surjective && unit;
        }
        if (full_memory && surjective) {
            const TrellisSpec t = build_trellis(tuple);
            const double ds = min_event_weight(t, w);
            const long units = std::lround(ds / kDeltaMin);
            auto& bucket = classes[units];
            if (static_cast<int>(bucket.reps.size()) < max_per_class) bucket.reps.push_back(tuple);
            bucket.criterion = bucket.criterion || design_criterion_satisfied(tuple, nu);
            while (static_cast<int>(classes.size()) > max_classes) classes.erase(std::prev(classes.end()));
        }
        int i = ell - 1;
        for (; i >= 0; --i) {
            if (++pick[static_cast<std::size_t>(i)] < ncand) break;
            pick[static_cast<std::size_t>(i)] = 0;
        }
        if (i < 0) break;
    }

    std::vector<RankedPolynomials> out;
    for (const auto& [units, bucket] : classes)
        for (const auto& reps : bucket.reps) {
            RankedPolynomials r;
            r.polys = reps;
            r.delta_s_units = static_cast<double>(units);
            r.criterion_satisfied = design_criterion_satisfied(reps, nu);
            out.push_back(std::move(r));
        }
    return out;
}

SubcodeLatticeCheck verify_e8_equivalence() {
    SubcodeLatticeCheck chk;
    const long rows[8][8] = {
        {-2, 1, 1, 0, 0, 0, -1, 0},
        {-1, -2, 0, 1, 0, 0, 0, -1},
        {1, 0, -1, 1, -1, 0, -1, 0},
        {0, 1, -1, -1, 0, -1, 0, -1},
        {0, -1, 0, 1, -1, 1, -1, 0},
        {1, 0, -1, 0, -1, -1, 0, -1},
        {0, 1, 0, 0, -1, 0, -2, 1},
        {-1, 0, 0, 0, 0, -1, -1, -2}};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) chk.m_tilde(i, j) = rows[i][j];

    Eigen::Matrix<double, 8, 8> m = chk.m_tilde.cast<double>();
    chk.abs_det = std::lround(std::abs(m.determinant()));

    // Certified enumeration radius: for any u with ||M u||^2 <= U,
    // |u_i| <= sqrt(U (G^-1)_ii) with G the Gram matrix.
    const Eigen::Matrix<double, 8, 8> gram = m.transpose() * m;
    const double upper = gram.diagonal().minCoeff();  // a unit vector achieves this
    const Eigen::Matrix<double, 8, 8> ginv = gram.inverse();
    double bound = 0.0;
    for (int i = 0; i < 8; ++i) bound = std::max(bound, std::sqrt(upper * ginv(i, i)));
    chk.coeff_bound = bound;
    const int radius = static_cast<int>(std::ceil(bound + 1e-9));

    const int span = 2 * radius + 1;
    long total = 1;
    for (int i = 0; i < 8; ++i) total *= span;
    long best = std::numeric_limits<long>::max();
    std::array<long, 8> u{};
    for (long idx = 0; idx < total; ++idx) {
        long t = idx;
        bool zero = true;
        for (int i = 0; i < 8; ++i) {
            u[static_cast<std::size_t>(i)] = t % span - radius;
            if (u[static_cast<std::size_t>(i)] != 0) zero = false;
            t /= span;
        }
        if (zero) continue;
        long norm = 0;
        for (int i = 0; i < 8; ++i) {
            long p = 0;
            for (int j = 0; j < 8; ++j) p += rows[i][j] * u[static_cast<std::size_t>(j)];
            norm += p * p;
        }
        best = std::min(best, norm);
    }
    chk.d2_min = best;
    return chk;
}

}  // namespace gsttcm
