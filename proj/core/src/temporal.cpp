#include "tcmnet/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tcmnet/errors.hpp"

namespace tcmnet {

double BetaParams::sample(Rng& rng) const {
    std::gamma_distribution<double> ga(alpha, 1.0);
    std::gamma_distribution<double> gb(beta, 1.0);
    double x = ga(rng);
    double y = gb(rng);
    double s = x + y;
    if (s == 0.0) return mean(); // both gammas underflowed
    return x / s;
}

namespace {

void check_beta(const BetaParams& w) {
    if (!(w.alpha > 0.0) || !(w.beta > 0.0))
        throw InvalidArgument("beta shape parameters must be positive");
}

void check_window(const std::optional<int>& window) {
    if (window && *window < 1)
        throw InvalidArgument("refresh window must be >= 1");
}

} // namespace

void validate(const PersistenceModel& model) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Model1>) {
                if (!(m.p >= 0.0 && m.p <= 1.0))
                    throw InvalidArgument("persistence probability must lie in [0,1]");
            } else if constexpr (std::is_same_v<T, Model2> ||
                                 std::is_same_v<T, Model3>) {
                check_beta(m.w);
                check_window(m.window);
            }
        },
        model);
}

std::string model_name(const PersistenceModel& model) {
    switch (model.index()) {
        case 0: return "m0";
        case 1: return "m1";
        case 2: return "m2";
        default: return "m3";
    }
}

TemporalProcess::TemporalProcess(Graph initial, PersistenceModel model, Rng& rng,
                                 EvolveOptions opts)
    : graph_(std::move(initial)), model_(std::move(model)), opts_(opts) {
    validate(model_);
    switch (model_.index()) {
        case 0:
            kind_ = Kind::M0;
            const_p_ = 0.0;
            break;
        case 1:
            kind_ = Kind::M1;
            const_p_ = std::get<Model1>(model_).p;
            break;
        case 2:
            kind_ = Kind::M2;
            w_ = std::get<Model2>(model_).w;
            window_ = std::get<Model2>(model_).window;
            break;
        default:
            kind_ = Kind::M3;
            w_ = std::get<Model3>(model_).w;
            window_ = std::get<Model3>(model_).window;
            break;
    }
    draw_initial(rng);
}

void TemporalProcess::draw_initial(Rng& rng) {
    if (kind_ == Kind::M2) {
        for (const Edge& e : graph_.edges())
            edge_probs_.emplace(edge_key(e.u, e.v), w_.sample(rng));
    } else if (kind_ == Kind::M3) {
        node_probs_.resize(graph_.node_count());
        for (double& p : node_probs_) p = w_.sample(rng);
    }
}

void TemporalProcess::refresh_all(Rng& rng) {
    if (kind_ == Kind::M2) {
        for (const Edge& e : graph_.edges())
            edge_probs_[edge_key(e.u, e.v)] = w_.sample(rng);
    } else if (kind_ == Kind::M3) {
        for (double& p : node_probs_) p = w_.sample(rng);
    }
}

double TemporalProcess::edge_probability(NodeId a, NodeId b) const {
    switch (kind_) {
        case Kind::M0: return 0.0;
        case Kind::M1: return const_p_;
        case Kind::M2: return edge_probs_.at(edge_key(a, b));
        default: return node_probs_.at(a) * node_probs_.at(b);
    }
}

StepStats TemporalProcess::advance(Rng& rng) {
    // The draw made at a window boundary governs the transitions departing
    // from it, so refresh before testing the edges of time_ itself.
    if (window_ && time_ > 0 && time_ % static_cast<std::size_t>(*window_) == 0)
        refresh_all(rng);

    last_probs_.clear();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Graph next(graph_.node_count());
    StubPool broken;
    std::unordered_set<std::uint64_t> kept_keys;
    std::size_t kept_pairs = 0;
    for (const Edge& e : graph_.edges()) {
        double pr = edge_probability(e.u, e.v);
        if (opts_.record_probs) last_probs_.emplace_back(edge_key(e.u, e.v), pr);
        if (unit(rng) < pr) {
            next.add_edge(e.u, e.v);
            kept_keys.insert(edge_key(e.u, e.v));
            if (prev_kept_.count(edge_key(e.u, e.v))) ++kept_pairs;
        } else {
            broken.stubs.push_back(e.u);
            broken.stubs.push_back(e.v);
        }
    }
    std::size_t kept = kept_keys.size();

    MatchResult matched = rematch_stubs(std::move(next), broken, rng, opts_.match);

    StepStats stats;
    stats.discards = matched.discarded_pairs;
    stats.persisted = kept;
    stats.persisted_pair = kept_pairs;
    // A broken edge can re-form inside the same rematch; observationally it
    // survived, so count it with the survivors.
    std::size_t reformed = 0;
    const auto& edges = matched.graph.edges();
    for (std::size_t i = kept; i < edges.size(); ++i)
        if (graph_.has_edge(edges[i].u, edges[i].v)) ++reformed;
    stats.survived = kept + reformed;
    stats.rewired = edges.size() - stats.survived;
    prev_kept_ = std::move(kept_keys);

    if (kind_ == Kind::M2) {
        if (!window_) {
            // Dyad probabilities last forever; only first-time dyads draw.
            for (const Edge& e : edges)
                if (!edge_probs_.count(edge_key(e.u, e.v)))
                    edge_probs_.emplace(edge_key(e.u, e.v), w_.sample(rng));
        } else {
            // Surviving edges keep their draw until the next boundary; edges
            // born now draw fresh, and broken ones drop out.
            std::unordered_map<std::uint64_t, double> probs;
            probs.reserve(edges.size());
            for (const Edge& e : edges) {
                std::uint64_t key = edge_key(e.u, e.v);
                auto it = edge_probs_.find(key);
                probs.emplace(key, it != edge_probs_.end() ? it->second
                                                           : w_.sample(rng));
            }
            edge_probs_ = std::move(probs);
        }
    }

    graph_ = std::move(matched.graph);
    ++time_;
    return stats;
}

TemporalNetwork evolve(const Graph& initial, const PersistenceModel& model,
                       std::size_t steps, Rng& rng, EvolveOptions opts) {
    TemporalNetwork out;
    out.model = model;
    out.snapshots.reserve(steps + 1);
    out.snapshots.push_back(initial);
    TemporalProcess proc(initial, model, rng, opts);
    for (std::size_t t = 0; t < steps; ++t) {
        out.step_stats.push_back(proc.advance(rng));
        if (opts.record_probs) out.probs_used.push_back(proc.last_probs());
        out.snapshots.push_back(proc.current());
    }
    out.edge_probs = proc.edge_probs();
    out.node_probs = proc.node_probs();
    return out;
}

namespace {

double quantile_sorted(const std::vector<double>& x, double q) {
    if (x.empty()) return std::numeric_limits<double>::quiet_NaN();
    double pos = q * static_cast<double>(x.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= x.size()) return x.back();
    return x[lo] + (x[lo + 1] - x[lo]) * frac;
}

DriftSummary summarize(std::size_t step, std::vector<double> probs) {
    DriftSummary row;
    row.step = step;
    row.alive = probs.size();
    std::sort(probs.begin(), probs.end());
    row.min = quantile_sorted(probs, 0.0);
    row.q1 = quantile_sorted(probs, 0.25);
    row.median = quantile_sorted(probs, 0.5);
    row.q3 = quantile_sorted(probs, 0.75);
    row.max = quantile_sorted(probs, 1.0);
    return row;
}

} // namespace

std::vector<DriftSummary> persistence_drift_report(const TemporalNetwork& tn) {
    if (tn.snapshots.empty())
        throw InvalidArgument("drift report needs at least the initial snapshot");

    const bool m2 = std::holds_alternative<Model2>(tn.model);
    const bool m3 = std::holds_alternative<Model3>(tn.model);
    if (m2 && std::get<Model2>(tn.model).window)
        throw InvalidArgument("drift report needs probabilities fixed for the whole run");
    if (m3 && std::get<Model3>(tn.model).window)
        throw InvalidArgument("drift report needs probabilities fixed for the whole run");
    if (!m2 && !m3)
        throw InvalidArgument("drift report is defined for random-probability models only");

    auto prob_of = [&](const Edge& e) {
        if (m2) return tn.edge_probs.at(edge_key(e.u, e.v));
        return tn.node_probs.at(e.u) * tn.node_probs.at(e.v);
    };

    std::vector<Edge> alive = tn.snapshots[0].edges();
    std::vector<DriftSummary> report;
    report.reserve(tn.snapshots.size());
    for (std::size_t t = 0; t < tn.snapshots.size(); ++t) {
        if (t > 0) {
            std::vector<Edge> still;
            still.reserve(alive.size());
            for (const Edge& e : alive)
                if (tn.snapshots[t].has_edge(e.u, e.v)) still.push_back(e);
            alive = std::move(still);
        }
        std::vector<double> probs;
        probs.reserve(alive.size());
        for (const Edge& e : alive) probs.push_back(prob_of(e));
        report.push_back(summarize(t, std::move(probs)));
    }
    return report;
}

} // namespace tcmnet
