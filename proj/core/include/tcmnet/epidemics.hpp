#pragma once

#include <cstdint>
#include <vector>

#include "tcmnet/graph.hpp"
#include "tcmnet/rng.hpp"
#include "tcmnet/temporal.hpp"

namespace tcmnet {

struct EpidemicParams {
    double beta = 0.0;  // per step transmission probability on an I-S edge
    double gamma = 1.0; // per step recovery probability
    std::size_t initial_infected = 1;
    // Cumulative-infection cutoff, as a fraction of n, below which a case
    // still counts as early stage.
    double early_stage_fraction = 0.01;
};

struct StepCounts {
    std::size_t s = 0, i = 0, r = 0;
};

struct NodeOutcome {
    std::int64_t infected_at = -1;  // -1 = never infected
    std::int64_t recovered_at = -1; // -1 = never recovered
    std::int64_t infector = -1;     // -1 = seed or never infected
    std::int32_t generation = -1;   // 0 = seed
    std::int64_t order = 0;         // 1-based infection order, 0 = never
    std::uint32_t offspring = 0;    // infections this node caused
};

struct EpidemicTrace {
    std::vector<StepCounts> counts; // counts[0] is the seeded state
    std::vector<NodeOutcome> nodes;
    std::size_t steps = 0;
    std::size_t total_infected = 0;

    double r0_observed = 0;     // mean offspring of the seeds
    double r_star_observed = 0; // mean offspring of early-stage cases, NaN if none
    // Early-stage tallies for pooling across runs: generations 1, 2, ... stay
    // eligible while nonempty and wholly inside the infection-order cutoff.
    std::size_t early_offspring = 0;
    std::size_t early_cases = 0;
    std::size_t early_cutoff = 0;
};

struct SirOptions {
    std::size_t max_steps = 100000;
    // Stop once every infectious node is past the early-stage cutoff; the
    // early tallies are already final at that point (eligible generations
    // are complete and recovered), which is all a reproductive-number batch
    // needs. r0_observed may undercount when seeds outnumber the cutoff.
    bool stop_after_early_stage = false;
    MatchOptions match;
};

// Discrete SIR run co-generated with the evolving network. Each step tests
// every infectious-susceptible edge of the current snapshot independently
// (edges in sorted order, first success credits the infector), then recovers
// infectious nodes, then rewires the network one step.
EpidemicTrace simulate_sir(const Graph& initial, const PersistenceModel& model,
                           const EpidemicParams& params, Rng& rng,
                           SirOptions opts = {});

// Degree law for the analytic formulas, as a validated probability mass.
struct Pgf {
    DegreeDistribution pk;

    double operator()(double x) const; // sum_k p_k x^k
    double mean() const;               // g'(1)
    double second_factorial() const;   // g''(1)
};

Pgf pgf_from_distribution(DegreeDistribution pk);
// Poisson mass truncated where the tail drops below 1e-15.
Pgf poisson_pgf(double lambda);
// Unit mass at degree k.
Pgf degenerate_pgf(int k);

struct PgfDerivatives {
    double g1 = 0; // g'(1)
    double g2 = 0; // g''(1)
};
PgfDerivatives pgf_derivatives(const Pgf& pgf);

// Chance that an infectious node ever transmits over one edge, accounting
// for recovery and for the edge itself breaking: beta / (1 - p(1-beta)(1-gamma)).
// Undefined (throws) when p=1, beta=0, gamma=0 because the race never ends.
double transmission_probability(double beta, double gamma, double p);

// Generating function of the number of distinct contacts an early-stage case
// meets while infectious, beyond the one that infected it: partners at
// infection weighted by excess degree plus everyone gained through rewiring.
// Closed form; domain x in [0,1]. The truncated double-series evaluation is
// kept alongside as an independent cross-check.
double excess_contact_pgf(const Pgf& pgf, double gamma, double p, double x);
double excess_contact_pgf_series(const Pgf& pgf, double gamma, double p, double x,
                                 int max_l = 500, double tail = 1e-10);

// Mean of that contact count: (1-gamma)(1-p)/gamma + (1-p+gamma p) g''(1)/(gamma g'(1)).
double excess_contact_mean(const Pgf& pgf, double gamma, double p);

// Mean transmissions of a seed: tau * g'(1).
double analytic_r0(const Pgf& pgf, double beta, double gamma, double p);
// Mean transmissions of an early-stage case: tau * excess_contact_mean.
double analytic_r_star(const Pgf& pgf, double beta, double gamma, double p);

} // namespace tcmnet
