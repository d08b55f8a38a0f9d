#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_set>
#include <vector>

namespace tcmnet {

using NodeId = std::uint32_t;

// Undirected edge stored with u < v.
struct Edge {
    NodeId u;
    NodeId v;
    friend bool operator==(const Edge&, const Edge&) = default;
};

inline std::uint64_t edge_key(NodeId a, NodeId b) {
    NodeId lo = a < b ? a : b;
    NodeId hi = a < b ? b : a;
    return (std::uint64_t(lo) << 32) | hi;
}

// Simple undirected graph on nodes 0..n-1: no self loops, no multi edges.
// Edges keep insertion order, so iterating a seeded construction is
// deterministic; membership checks go through a hash index.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t node_count) : n_(node_count) {}

    std::size_t node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(NodeId a, NodeId b) const {
        return index_.count(edge_key(a, b)) != 0;
    }

    // Returns false if the edge is already present. Self loops and endpoints
    // outside 0..n-1 throw.
    bool add_edge(NodeId a, NodeId b);

    std::vector<int> degrees() const;

    // Number of this graph's edges also present in `other`.
    std::size_t overlap(const Graph& other) const;

    // Node count plus edge set; insertion order is not compared.
    friend bool operator==(const Graph& lhs, const Graph& rhs);

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> index_;
};

// Even-sum degree sequence ready for stub matching.
struct DegreeSequence {
    std::vector<int> degrees;
    bool parity_repaired = false;

    long long sum() const {
        long long s = 0;
        for (int d : degrees) s += d;
        return s;
    }
};

// Half-edges waiting to be matched, one entry per stub.
struct StubPool {
    std::vector<NodeId> stubs;
};

// Probability mass over degrees 0..max_degree; mass[k] is the fraction of
// nodes with degree k, so degree-0 nodes count.
struct DegreeDistribution {
    std::vector<double> mass;

    std::size_t max_degree() const { return mass.empty() ? 0 : mass.size() - 1; }
};

DegreeDistribution degree_distribution(const Graph& g);

} // namespace tcmnet
