#include "tcmnet/graph.hpp"

#include <algorithm>
#include <string>

#include "tcmnet/errors.hpp"

namespace tcmnet {

bool Graph::add_edge(NodeId a, NodeId b) {
    if (a == b)
        throw InvalidArgument("self loop at node " + std::to_string(a));
    if (a >= n_ || b >= n_)
        throw InvalidArgument("edge endpoint out of range: (" + std::to_string(a) +
                              "," + std::to_string(b) + ") with " + std::to_string(n_) +
                              " nodes");
    auto [it, inserted] = index_.insert(edge_key(a, b));
    if (!inserted) return false;
    edges_.push_back({std::min(a, b), std::max(a, b)});
    return true;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n_, 0);
    for (const Edge& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

std::size_t Graph::overlap(const Graph& other) const {
    std::size_t shared = 0;
    for (const Edge& e : edges_)
        if (other.has_edge(e.u, e.v)) ++shared;
    return shared;
}

bool operator==(const Graph& lhs, const Graph& rhs) {
    return lhs.n_ == rhs.n_ && lhs.index_ == rhs.index_;
}

DegreeDistribution degree_distribution(const Graph& g) {
    if (g.node_count() == 0)
        throw InvalidArgument("degree distribution of an empty graph");
    std::vector<int> deg = g.degrees();
    int max_deg = *std::max_element(deg.begin(), deg.end());
    DegreeDistribution dist;
    dist.mass.assign(static_cast<std::size_t>(max_deg) + 1, 0.0);
    for (int d : deg) dist.mass[static_cast<std::size_t>(d)] += 1.0;
    for (double& m : dist.mass) m /= static_cast<double>(g.node_count());
    return dist;
}

} // namespace tcmnet
