#pragma once

// Replication experiments shared by the `reproduce` subcommand and the
// acceptance suite: estimator bias grids, the survivor-drift trace, and the
// model comparison pipeline for observed network sequences.

#include <cstdint>
#include <string>
#include <vector>

#include <tcmnet/dataio.hpp>
#include <tcmnet/estimate.hpp>
#include <tcmnet/temporal.hpp>

namespace tcmnet {

// |mean of signed relative deviations| and the sd of those deviations.
// Averaging before taking the absolute value lets opposite-signed errors
// cancel, so this measures bias proper rather than mean absolute error.
struct DeviationSummary {
    double abs_rel_bias = 0.0;
    double sd = 0.0;
};

DeviationSummary summarize_deviations(const std::vector<double>& devs);

// Pooled variant for estimator pairs targeting two moments at once:
// (|sum of one-step devs| + |sum of two-step devs|) / total count, with the
// sd taken over the concatenated deviations.
DeviationSummary summarize_deviations(const std::vector<double>& one_step_devs,
                                      const std::vector<double>& two_step_devs);

// The three bias studies: constant persistence p=0.8, dyad-level draws from
// Beta(1,4) refreshed every window, and node-level draws whose product gives
// the dyad persistence. The latter two target first and second moments via
// the (zbar, vbar) and (z1, v1) estimator pairs.
enum class BiasExperiment { ConstantP = 1, DyadBeta = 2, NodeProductBeta = 3 };

struct BiasGridConfig {
    BiasExperiment experiment = BiasExperiment::ConstantP;
    std::vector<std::size_t> sizes{10, 100, 1000};
    std::vector<std::size_t> horizons{30, 100};
    int replications = 100;
    double degree_mean = 6.0;
    double p = 0.8;            // ConstantP
    BetaParams w{1.0, 4.0};    // DyadBeta / NodeProductBeta
    int window = 2;            // refresh period and estimator window
};

BiasGridConfig bias_config(BiasExperiment experiment);

// Cuts replications to 25 and drops the N=10 column.
void apply_quick_scale(BiasGridConfig& cfg);

// One (n, t) cell. For the two-moment experiments each summary pools the
// one- and two-step deviations of its estimator pair.
struct BiasCell {
    std::size_t n = 0;
    std::size_t t = 0;
    DeviationSummary zbar; // windowed estimators, all transitions
    DeviationSummary z1;   // first-window estimators only
};

// Runs the full grid. Replication r of cell c draws its seed as
// child_seed(child_seed(child_seed(master, experiment id), c), r), so any
// cell or replication can be recomputed in isolation.
std::vector<BiasCell> run_bias_grid(const BiasGridConfig& cfg,
                                    std::uint64_t master_seed);

std::string bias_grid_csv(const BiasGridConfig& cfg,
                          const std::vector<BiasCell>& cells,
                          std::uint64_t master_seed, const std::string& scale);

// Survivor drift: evolve one network under dyad draws held fixed forever and
// trace the five-number summary of the latent probabilities of the original
// edges still alive at each step.
struct DriftConfig {
    std::size_t n = 1000;
    std::size_t steps = 100;
    double degree_mean = 6.0;
    BetaParams w{4.0, 1.0};
};

std::vector<DriftSummary> run_drift_trace(const DriftConfig& cfg,
                                          std::uint64_t seed);

std::string drift_csv(const DriftConfig& cfg,
                      const std::vector<DriftSummary>& rows,
                      std::uint64_t seed);

// Model comparison for an observed snapshot sequence: fit every model kind
// on the early transitions, regenerate the later snapshots from the first
// one many times, and summarize the distances between predicted and observed
// degree distributions.
struct ModelComparisonRow {
    std::string model; // m0..m3
    std::string fit_desc;
    double tv_mean = 0, tv_sd = 0;
    double hellinger_mean = 0, hellinger_sd = 0;
};

struct ModelComparison {
    std::vector<FitResult> fits;
    std::vector<ModelComparisonRow> rows;
};

// Replication r of model k seeds from child_seed(child_seed(master, k), r).
ModelComparison run_model_comparison(const std::vector<Graph>& observed,
                                     int runs, std::uint64_t master_seed);

std::string model_comparison_csv(const ModelComparison& mc, int runs,
                                 std::uint64_t master_seed,
                                 const std::string& source_desc);

} // namespace tcmnet
