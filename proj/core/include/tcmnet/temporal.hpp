#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "tcmnet/config_model.hpp"
#include "tcmnet/graph.hpp"
#include "tcmnet/rng.hpp"

namespace tcmnet {

struct BetaParams {
    double alpha = 1.0;
    double beta = 1.0;

    double mean() const { return alpha / (alpha + beta); }
    double second_moment() const {
        return alpha * (alpha + 1.0) / ((alpha + beta) * (alpha + beta + 1.0));
    }
    double variance() const {
        double m = mean();
        return second_moment() - m * m;
    }
    double sample(Rng& rng) const;
};

// Persistence models. Window semantics for refreshing random probabilities:
// absent means one draw that lasts forever, t0 >= 1 means fresh draws every
// t0 steps, so the draw made at time k*t0 governs the transitions departing
// times k*t0 .. (k+1)*t0 - 1.
struct Model0 {}; // every edge rewires every step
struct Model1 {   // one shared persistence probability
    double p = 0.0;
};
struct Model2 { // per-edge probabilities drawn from a Beta law
    BetaParams w;
    std::optional<int> window;
};
struct Model3 { // per-node factors drawn from a Beta law, edge prob = product
    BetaParams w;
    std::optional<int> window;
};

using PersistenceModel = std::variant<Model0, Model1, Model2, Model3>;

void validate(const PersistenceModel& model);
std::string model_name(const PersistenceModel& model); // "m0".."m3"

struct StepStats {
    // Edges shared with the previous snapshot. This is what an observer of
    // the graph sequence sees; it includes dyads that broke and happened to
    // be rematched back together within the same step.
    std::size_t survived = 0;
    // Edges whose persistence trial succeeded this step, and of those, the
    // ones whose trial also succeeded the step before (0 on the first step).
    // Coincidental re-formations are excluded here.
    std::size_t persisted = 0;
    std::size_t persisted_pair = 0;
    std::size_t rewired = 0;  // edges of the new snapshot not in the previous
    std::size_t discards = 0; // stub pairs rejected while rematching
};

struct EvolveOptions {
    MatchOptions match;
    // Keep, per step, the probability each departing edge was tested against.
    bool record_probs = false;
};

struct TemporalNetwork {
    std::vector<Graph> snapshots;     // T+1 graphs
    std::vector<StepStats> step_stats; // one per transition
    PersistenceModel model;

    // Final latent state, for diagnostics only; estimators work from the
    // snapshots alone. For Model 2 without a window this holds every dyad
    // ever assigned a probability, otherwise just the current edges.
    std::unordered_map<std::uint64_t, double> edge_probs;
    std::vector<double> node_probs;

    // Filled when EvolveOptions::record_probs is set: probs_used[t] lists
    // (edge key, probability) for each edge of snapshots[t] as tested in the
    // transition to snapshots[t+1].
    std::vector<std::vector<std::pair<std::uint64_t, double>>> probs_used;

    std::size_t steps() const { return snapshots.empty() ? 0 : snapshots.size() - 1; }
};

// Steps a graph forward under a persistence model: each edge survives its
// Bernoulli trial or releases both stubs, and released stubs are rematched
// uniformly (rejected pairs are discarded, keeping the graph simple).
class TemporalProcess {
public:
    TemporalProcess(Graph initial, PersistenceModel model, Rng& rng,
                    EvolveOptions opts = {});

    const Graph& current() const { return graph_; }
    std::size_t time() const { return time_; }

    StepStats advance(Rng& rng);

    // Latent persistence probability of a current edge.
    double edge_probability(NodeId a, NodeId b) const;

    const std::unordered_map<std::uint64_t, double>& edge_probs() const {
        return edge_probs_;
    }
    const std::vector<double>& node_probs() const { return node_probs_; }

    // Probabilities used by the most recent advance(); empty unless
    // record_probs was set.
    const std::vector<std::pair<std::uint64_t, double>>& last_probs() const {
        return last_probs_;
    }

private:
    enum class Kind { M0, M1, M2, M3 };

    void draw_initial(Rng& rng);
    void refresh_all(Rng& rng);

    Graph graph_;
    PersistenceModel model_;
    EvolveOptions opts_;
    Kind kind_;
    double const_p_ = 0.0;  // m0/m1
    BetaParams w_;          // m2/m3
    std::optional<int> window_;
    std::size_t time_ = 0;
    std::unordered_map<std::uint64_t, double> edge_probs_;
    std::vector<double> node_probs_;
    std::vector<std::pair<std::uint64_t, double>> last_probs_;
    std::unordered_set<std::uint64_t> prev_kept_;
};

TemporalNetwork evolve(const Graph& initial, const PersistenceModel& model,
                       std::size_t steps, Rng& rng, EvolveOptions opts = {});

// Five-number summary of the latent probabilities of the initial edges that
// have survived every step up to `step`.
struct DriftSummary {
    std::size_t step = 0;
    std::size_t alive = 0;
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

// Survivor-bias report for fixed (window-less) Model 2 or Model 3 runs: rows
// for t = 0..T. With no survivors a row has alive == 0 and NaN quantiles.
std::vector<DriftSummary> persistence_drift_report(const TemporalNetwork& tn);

} // namespace tcmnet
