#include "tcmnet/epidemics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "tcmnet/errors.hpp"

namespace tcmnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum class State : std::uint8_t { S, I, R };

void check_epidemic_params(const EpidemicParams& p, std::size_t n) {
    if (!(p.beta >= 0.0 && p.beta <= 1.0))
        throw InvalidArgument("transmission probability must lie in [0,1]");
    if (!(p.gamma >= 0.0 && p.gamma <= 1.0))
        throw InvalidArgument("recovery probability must lie in [0,1]");
    if (p.initial_infected < 1 || p.initial_infected > n)
        throw InvalidArgument("initial infected count must lie in [1,n]");
    if (!(p.early_stage_fraction > 0.0 && p.early_stage_fraction <= 1.0))
        throw InvalidArgument("early stage fraction must lie in (0,1]");
}

// Generations 1,2,... count as early stage while nonempty and composed
// entirely of cases with infection order inside the cutoff; their members are
// recovered by the time the rule is evaluated, so the tallies are final.
void fill_early_stats(EpidemicTrace& trace, std::size_t cutoff) {
    struct GenAgg {
        std::int64_t max_order = 0;
        std::size_t cases = 0;
        std::size_t offspring = 0;
    };
    std::map<std::int32_t, GenAgg> gens;
    for (const NodeOutcome& node : trace.nodes) {
        if (node.generation < 1) continue;
        GenAgg& g = gens[node.generation];
        g.max_order = std::max(g.max_order, node.order);
        g.cases += 1;
        g.offspring += node.offspring;
    }
    trace.early_cutoff = cutoff;
    for (std::int32_t g = 1;; ++g) {
        auto it = gens.find(g);
        if (it == gens.end() ||
            it->second.max_order > static_cast<std::int64_t>(cutoff))
            break;
        trace.early_cases += it->second.cases;
        trace.early_offspring += it->second.offspring;
    }
    trace.r_star_observed =
        trace.early_cases
            ? static_cast<double>(trace.early_offspring) /
                  static_cast<double>(trace.early_cases)
            : kNaN;
}

} // namespace

EpidemicTrace simulate_sir(const Graph& initial, const PersistenceModel& model,
                           const EpidemicParams& params, Rng& rng,
                           SirOptions opts) {
    const std::size_t n = initial.node_count();
    if (n == 0) throw InvalidArgument("epidemic needs a nonempty node set");
    check_epidemic_params(params, n);

    EvolveOptions eopts;
    eopts.match = opts.match;
    TemporalProcess proc(initial, model, rng, eopts);

    EpidemicTrace trace;
    trace.nodes.assign(n, {});
    std::vector<State> state(n, State::S);

    std::vector<NodeId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<NodeId>(i);
    std::vector<NodeId> seeds;
    std::sample(ids.begin(), ids.end(), std::back_inserter(seeds),
                params.initial_infected, rng);
    std::int64_t order = 0;
    for (NodeId s : seeds) {
        state[s] = State::I;
        trace.nodes[s].infected_at = 0;
        trace.nodes[s].generation = 0;
        trace.nodes[s].order = ++order;
    }
    trace.total_infected = seeds.size();
    trace.counts.push_back({n - seeds.size(), seeds.size(), 0});

    const std::size_t cutoff = std::max<std::size_t>(
        1, static_cast<std::size_t>(params.early_stage_fraction *
                                    static_cast<double>(n)));

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t infectious = seeds.size();

    for (std::size_t t = 1; t <= opts.max_steps && infectious > 0; ++t) {
        const Graph& g = proc.current();
        const std::int64_t step = static_cast<std::int64_t>(t);

        // Exposures are the I-S edges as of the step start.
        std::vector<Edge> exposures;
        for (const Edge& e : g.edges()) {
            bool iu = state[e.u] == State::I;
            bool iv = state[e.v] == State::I;
            if (iu != iv) {
                NodeId src = iu ? e.u : e.v;
                NodeId dst = iu ? e.v : e.u;
                if (state[dst] == State::S) exposures.push_back({src, dst});
            }
        }
        std::sort(exposures.begin(), exposures.end(), [](const Edge& a, const Edge& b) {
            return a.u != b.u ? a.u < b.u : a.v < b.v;
        });
        for (const Edge& x : exposures) {
            bool hit = unit(rng) < params.beta;
            if (!hit || state[x.v] != State::S) continue;
            state[x.v] = State::I;
            trace.nodes[x.v].infected_at = step;
            trace.nodes[x.v].infector = x.u;
            trace.nodes[x.v].generation = trace.nodes[x.u].generation + 1;
            trace.nodes[x.v].order = ++order;
            trace.nodes[x.u].offspring += 1;
            ++trace.total_infected;
            ++infectious;
        }

        // Recovery applies to nodes infectious when the step began.
        for (std::size_t v = 0; v < n; ++v) {
            if (state[v] == State::I && trace.nodes[v].infected_at < step &&
                unit(rng) < params.gamma) {
                state[v] = State::R;
                trace.nodes[v].recovered_at = step;
                --infectious;
            }
        }

        std::size_t recovered = 0;
        for (std::size_t v = 0; v < n; ++v)
            if (state[v] == State::R) ++recovered;
        trace.counts.push_back({n - trace.total_infected, infectious, recovered});
        trace.steps = t;

        if (infectious == 0) break;
        if (opts.stop_after_early_stage) {
            bool all_past = true;
            for (std::size_t v = 0; v < n && all_past; ++v)
                if (state[v] == State::I &&
                    trace.nodes[v].order <= static_cast<std::int64_t>(cutoff))
                    all_past = false;
            if (all_past) break;
        }
        proc.advance(rng);
    }

    std::size_t seed_offspring = 0;
    for (NodeId s : seeds) seed_offspring += trace.nodes[s].offspring;
    trace.r0_observed =
        static_cast<double>(seed_offspring) / static_cast<double>(seeds.size());
    fill_early_stats(trace, cutoff);
    return trace;
}

double Pgf::operator()(double x) const {
    double sum = 0.0;
    double xk = 1.0;
    for (double p : pk.mass) {
        sum += p * xk;
        xk *= x;
    }
    return sum;
}

double Pgf::mean() const {
    double sum = 0.0;
    for (std::size_t k = 1; k < pk.mass.size(); ++k)
        sum += static_cast<double>(k) * pk.mass[k];
    return sum;
}

double Pgf::second_factorial() const {
    double sum = 0.0;
    for (std::size_t k = 2; k < pk.mass.size(); ++k)
        sum += static_cast<double>(k) * static_cast<double>(k - 1) * pk.mass[k];
    return sum;
}

Pgf pgf_from_distribution(DegreeDistribution pk) {
    if (pk.mass.empty()) throw InvalidArgument("degree law is empty");
    double sum = 0.0;
    for (double p : pk.mass) {
        if (!(p >= 0.0)) throw InvalidArgument("degree law has negative mass");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw InvalidArgument("degree law sums to " + std::to_string(sum) + ", not 1");
    return {std::move(pk)};
}

Pgf poisson_pgf(double lambda) {
    if (!(lambda > 0.0 && lambda <= 500.0))
        throw InvalidArgument("poisson mean must lie in (0,500]");
    DegreeDistribution d;
    double p = std::exp(-lambda);
    double cum = p;
    d.mass.push_back(p);
    // Cut the support once the remaining tail is below 1e-15; the dropped
    // mass is far under every tolerance the formulas are tested at.
    for (std::size_t k = 1; cum < 1.0 - 1e-15 && k < 4096; ++k) {
        p *= lambda / static_cast<double>(k);
        d.mass.push_back(p);
        cum += p;
    }
    return {std::move(d)};
}

Pgf degenerate_pgf(int k) {
    if (k < 0) throw InvalidArgument("degree must be nonnegative");
    DegreeDistribution d;
    d.mass.assign(static_cast<std::size_t>(k) + 1, 0.0);
    d.mass.back() = 1.0;
    return {std::move(d)};
}

PgfDerivatives pgf_derivatives(const Pgf& pgf) {
    return {pgf.mean(), pgf.second_factorial()};
}

double transmission_probability(double beta, double gamma, double p) {
    if (!(beta >= 0.0 && beta <= 1.0))
        throw InvalidArgument("transmission probability must lie in [0,1]");
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw InvalidArgument("recovery probability must lie in [0,1]");
    if (!(p >= 0.0 && p <= 1.0))
        throw InvalidArgument("persistence probability must lie in [0,1]");
    double denom = 1.0 - p * (1.0 - beta) * (1.0 - gamma);
    if (denom == 0.0)
        throw InvalidArgument(
            "transmission chance undefined: the edge never breaks, never "
            "transmits and never recovers (p=1, beta=0, gamma=0)");
    return beta / denom;
}

namespace {

void check_contact_params(const Pgf& pgf, double gamma, double p) {
    if (pgf.pk.mass.empty()) throw InvalidArgument("degree law is empty");
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw InvalidArgument("recovery probability must lie in (0,1]");
    if (!(p >= 0.0 && p <= 1.0))
        throw InvalidArgument("persistence probability must lie in [0,1]");
    if (!(pgf.mean() > 0.0))
        throw InvalidArgument("degree law has zero mean");
}

} // namespace

double excess_contact_pgf(const Pgf& pgf, double gamma, double p, double x) {
    check_contact_params(pgf, gamma, p);
    if (!(x >= 0.0 && x <= 1.0))
        throw InvalidArgument("evaluation point must lie in [0,1]");
    double gp = pgf.mean();
    double u = x * (1.0 - p) + p;
    double sum = gamma / (1.0 - (1.0 - gamma) * u);
    for (std::size_t k = 1; k < pgf.pk.mass.size(); ++k) {
        double qk = static_cast<double>(k) * pgf.pk.mass[k] / gp;
        if (qk == 0.0) continue;
        sum += gamma * qk * std::pow(x, static_cast<double>(k - 1)) /
               (1.0 - (1.0 - gamma) * std::pow(u, static_cast<double>(k - 1)));
    }
    return sum;
}

double excess_contact_pgf_series(const Pgf& pgf, double gamma, double p, double x,
                                 int max_l, double tail) {
    check_contact_params(pgf, gamma, p);
    if (!(x >= 0.0 && x <= 1.0))
        throw InvalidArgument("evaluation point must lie in [0,1]");
    double gp = pgf.mean();
    double u = x * (1.0 - p) + p;
    double sum = 0.0;
    double weight = gamma; // gamma (1-gamma)^l
    double ul = 1.0;       // u^l
    for (int l = 0; l <= max_l; ++l) {
        double inner = ul; // the slot that excludes the infecting contact
        double xf = x * ul;
        for (std::size_t k = 1; k < pgf.pk.mass.size(); ++k) {
            double qk = static_cast<double>(k) * pgf.pk.mass[k] / gp;
            if (qk > 0.0)
                inner += qk * std::pow(xf, static_cast<double>(k - 1));
        }
        sum += weight * inner;
        weight *= 1.0 - gamma;
        ul *= u;
        if (weight < tail * gamma) break;
    }
    return sum;
}

double excess_contact_mean(const Pgf& pgf, double gamma, double p) {
    check_contact_params(pgf, gamma, p);
    PgfDerivatives d = pgf_derivatives(pgf);
    return (1.0 - gamma) * (1.0 - p) / gamma +
           (1.0 - p + gamma * p) * d.g2 / (gamma * d.g1);
}

double analytic_r0(const Pgf& pgf, double beta, double gamma, double p) {
    return transmission_probability(beta, gamma, p) * pgf.mean();
}

double analytic_r_star(const Pgf& pgf, double beta, double gamma, double p) {
    return transmission_probability(beta, gamma, p) *
           excess_contact_mean(pgf, gamma, p);
}

} // namespace tcmnet
