#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tcmnet/temporal.hpp"

namespace tcmnet {

// Persistence estimators. The snapshot versions read the observed graph
// sequence only; the latent_ versions further down need the engine's per-step
// trial counts.

// Fraction of initial edges still present one step later.
double z1(const std::vector<Graph>& snapshots);
double z1(const TemporalNetwork& tn);

// Mean one-step survival ratio over window starts 0, t0, 2*t0, ...; the
// number of windows is m = floor(T / t0) and the mean divides by m.
double zbar(const std::vector<Graph>& snapshots, int t0 = 1);
double zbar(const TemporalNetwork& tn, int t0 = 1);

// Fraction of initial edges present in both of the next two snapshots.
double v1(const std::vector<Graph>& snapshots);
double v1(const TemporalNetwork& tn);

// Mean two-step survival ratio over window starts; needs t0 >= 2 so both
// transitions of a window share one probability draw.
double vbar(const std::vector<Graph>& snapshots, int t0);
double vbar(const TemporalNetwork& tn, int t0);

// Latent counterparts computed from the trial bookkeeping in step_stats
// rather than from snapshot overlap. A dyad that breaks and happens to be
// rematched back together inflates the observable overlap by a few edges per
// step; these versions exclude such coincidences and are exactly unbiased,
// which matters at strong breakage on moderate networks.
double latent_z1(const TemporalNetwork& tn);
double latent_zbar(const TemporalNetwork& tn, int t0 = 1);
double latent_v1(const TemporalNetwork& tn);
double latent_vbar(const TemporalNetwork& tn, int t0);

// Beta parameters with given first and second moments. Throws
// InfeasibleMoments naming the violated inequality when no Beta law fits.
BetaParams beta_from_moments(double m1, double m2);

// First two moments of a Beta law (inverse of the above).
std::pair<double, double> beta_moments(const BetaParams& w);

// Node-level Beta law for product-persistence sequences: an observed pair
// (z, v) of one- and two-step survival means is matched to (sqrt(z), sqrt(v)).
BetaParams fit_model3_node_dist(double z_est, double v_est);

struct BiasStats {
    double abs_rel_bias = 0; // mean of |estimate - truth| / truth
    double sd = 0;           // sample sd of those ratios (0 when n == 1)
};

BiasStats bias_stats(const std::vector<std::pair<double, double>>& est_truth);

// One estimation run in flat record form. Absent fields serialize as empty
// CSV cells and are skipped by key_value().
struct EstimateReport {
    std::string model; // m0..m3
    std::size_t n = 0;
    std::size_t t = 0;
    int t0 = 1;
    std::size_t m_windows = 0; // floor(t / t0)
    std::optional<double> z1;
    std::optional<double> zbar;
    std::optional<double> v1;
    std::optional<double> vbar;
    std::optional<BetaParams> derived;

    static std::string csv_header();
    std::string csv_row() const;
    std::string key_value() const;
};

} // namespace tcmnet
