#pragma once

#include "tcmnet/graph.hpp"
#include "tcmnet/rng.hpp"

namespace tcmnet {

// Wraps raw degrees into a DegreeSequence. An odd total is repaired by adding
// one stub to a uniformly chosen node, flagged in the result.
DegreeSequence make_degree_sequence(std::vector<int> degrees, Rng& rng);

DegreeSequence sample_poisson_degrees(std::size_t n, double mean, Rng& rng);

// All nodes get degree k (0 <= k < n); an odd n*k is repaired like above.
DegreeSequence constant_degrees(std::size_t n, int k, Rng& rng);

struct MatchOptions {
    // Extra matching passes over stubs whose pair was rejected. 0 discards
    // rejected pairs outright, which is the default behaviour everywhere.
    int retry_rounds = 0;
};

struct MatchResult {
    Graph graph;
    std::size_t discarded_pairs = 0;
};

// Uniform stub matching: shuffle all stubs, pair them off in order. A pair
// that would form a self loop or duplicate an existing edge is discarded and
// both stubs are consumed, so the result is always a simple graph.
MatchResult configuration_model(const DegreeSequence& degrees, Rng& rng,
                                MatchOptions opts = {});

// Matches the stubs in `pool` uniformly and adds surviving pairs to `graph`.
// The same discard rule applies, counting edges already in `graph`.
MatchResult rematch_stubs(Graph graph, const StubPool& pool, Rng& rng,
                          MatchOptions opts = {});

} // namespace tcmnet
