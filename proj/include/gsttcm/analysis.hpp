#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "gsttcm/golden.hpp"
#include "gsttcm/lattice.hpp"
#include "gsttcm/trellis.hpp"

namespace gsttcm {

inline constexpr double kDeltaMin = 0.2;  // minimum determinant of the code

/// Brute-force min of det_metric(encode(a,b,c,d) B^k) over the symmetric box
/// |Re|,|Im| <= radius, excluding zero. A certified upper bound that matches
/// 2^k/5 for radius >= 2.
double min_det_subcode(int k, int radius);

/// Minimum determinant on parallel transitions: 2^(l0+l) * delta_min.
double delta_p(const PartitionConfig& cfg);

/// Deepest chain level whose code contains the word; nullopt for zero.
std::optional<int> partition_depth(const Bits8& word);

/// Per-branch minimum determinant of the coset (c + 2Z^8) for a trellis
/// label index against H(l0, l0+l). Formula route: 2^depth * delta_min.
double branch_min_det(int label, const std::vector<Bits8>& hc1_rows);

/// Brute-force route: min det_metric over nonzero points c + 2m,
/// m in [-radius, radius]^8.
double branch_min_det_brute(int label, const std::vector<Bits8>& hc1_rows, int radius = 2);

struct DeltaSResult {
    double value = 0.0;
    int event_length = 0;
    std::vector<int> event_labels;
    bool truncated = false;  // minimizing event touched max_event_len
};

/// Minimum over simple error events of the per-branch determinant sum.
/// brute_force switches the per-branch minima to the box search.
DeltaSResult delta_s(const TrellisSpec& trellis, const PartitionConfig& cfg,
                     int max_event_len, bool brute_force = false);

/// 10 log10( (delta1^(1/n_R)/Es1) / (delta2^(1/n_R)/Es2) ), n_R = 2.
double asymptotic_gain_db(double delta1, double es1, double delta2, double es2);

struct GainReport {
    double delta_p = 0.0;
    double delta_s = 0.0;
    double delta_prime_min = 0.0;
    double gamma_p_db = 0.0;
    double gamma_s_db = 0.0;
    double gamma_prime_db = 0.0;
};

GainReport gain_report(const TrellisSpec& trellis, const PartitionConfig& cfg,
                       double es_coded, double es_uncoded, int max_event_len = 10);

struct RankedPolynomials {
    std::vector<QuaternaryPoly> polys;
    double delta_s_units = 0.0;  // in multiples of delta_min
    bool criterion_satisfied = false;
};

/// Exhaustive search over quaternary polynomial tuples of degree < 4 with
/// memory log4(states). Tuples related by Z4 unit scaling are folded, and
/// every polynomial must carry a unit coefficient so each partition level is
/// fully addressed.
/// Returns the distinct delta_s classes in descending order (up to
/// max_classes), each with one representative per distinct folded tuple
/// capped at max_per_class.
std::vector<RankedPolynomials> search_polynomials(int states, int ell, const PartitionConfig& cfg,
                                                  int max_per_class = 8, int max_classes = 4);

/// Whether incoming and outgoing branches of every state stay within the
/// deepest possible partition subtree (only alpha_l varies on both sides).
bool design_criterion_satisfied(const std::vector<QuaternaryPoly>& polys, int nu);

struct SubcodeLatticeCheck {
    Eigen::Matrix<long, 8, 8> m_tilde;
    long d2_min = 0;
    long abs_det = 0;
    double coeff_bound = 0.0;  // certified enumeration radius from the Gram inverse
};

/// Shortest-vector and determinant check of the vectorized-subcode
/// generator (unnormalized), by certified brute-force enumeration.
SubcodeLatticeCheck verify_e8_equivalence();

}  // namespace gsttcm
