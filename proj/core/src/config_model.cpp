#include "tcmnet/config_model.hpp"

#include <algorithm>
#include <string>

#include "tcmnet/errors.hpp"

namespace tcmnet {

DegreeSequence make_degree_sequence(std::vector<int> degrees, Rng& rng) {
    if (degrees.empty())
        throw InvalidArgument("degree sequence must have at least one node");
    long long sum = 0;
    for (int d : degrees) {
        if (d < 0) throw InvalidArgument("negative degree");
        sum += d;
    }
    DegreeSequence seq{std::move(degrees), false};
    if (sum % 2 != 0) {
        std::uniform_int_distribution<std::size_t> pick(0, seq.degrees.size() - 1);
        ++seq.degrees[pick(rng)];
        seq.parity_repaired = true;
    }
    return seq;
}

DegreeSequence sample_poisson_degrees(std::size_t n, double mean, Rng& rng) {
    if (n == 0) throw InvalidArgument("need at least one node");
    if (!(mean > 0.0)) throw InvalidArgument("poisson mean must be positive");
    std::poisson_distribution<int> draw(mean);
    std::vector<int> deg(n);
    for (std::size_t i = 0; i < n; ++i) deg[i] = draw(rng);
    return make_degree_sequence(std::move(deg), rng);
}

DegreeSequence constant_degrees(std::size_t n, int k, Rng& rng) {
    if (n == 0) throw InvalidArgument("need at least one node");
    if (k < 0 || static_cast<std::size_t>(k) >= n)
        throw InvalidArgument("constant degree must satisfy 0 <= k < n, got k=" +
                              std::to_string(k) + " n=" + std::to_string(n));
    return make_degree_sequence(std::vector<int>(n, k), rng);
}

namespace {

// Shuffle-and-pair passes. Stubs of rejected pairs go back into the pot for
// the next round; whatever is left after the last round counts as discarded.
MatchResult match_into(Graph graph, std::vector<NodeId> stubs, Rng& rng,
                       const MatchOptions& opts) {
    if (stubs.size() % 2 != 0)
        throw InvalidArgument("stub count must be even");
    for (NodeId s : stubs)
        if (s >= graph.node_count())
            throw InvalidArgument("stub node out of range");
    if (opts.retry_rounds < 0)
        throw InvalidArgument("retry_rounds must be >= 0");

    for (int round = 0; round <= opts.retry_rounds && !stubs.empty(); ++round) {
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::vector<NodeId> rejected;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            NodeId a = stubs[i], b = stubs[i + 1];
            if (a == b || !graph.add_edge(a, b)) {
                rejected.push_back(a);
                rejected.push_back(b);
            }
        }
        stubs = std::move(rejected);
    }
    return {std::move(graph), stubs.size() / 2};
}

} // namespace

MatchResult configuration_model(const DegreeSequence& degrees, Rng& rng,
                                MatchOptions opts) {
    if (degrees.sum() % 2 != 0)
        throw InvalidArgument("degree sum must be even");
    std::vector<NodeId> stubs;
    stubs.reserve(static_cast<std::size_t>(degrees.sum()));
    for (std::size_t i = 0; i < degrees.degrees.size(); ++i)
        for (int s = 0; s < degrees.degrees[i]; ++s)
            stubs.push_back(static_cast<NodeId>(i));
    return match_into(Graph(degrees.degrees.size()), std::move(stubs), rng, opts);
}

MatchResult rematch_stubs(Graph graph, const StubPool& pool, Rng& rng,
                          MatchOptions opts) {
    return match_into(std::move(graph), pool.stubs, rng, opts);
}

} // namespace tcmnet
