#pragma once

#include <vector>

#include "tcmnet/graph.hpp"

namespace tcmnet {

enum class DistanceMetric { TotalVariation, Hellinger };

// Distances between degree distributions. Supports of different length are
// aligned by zero padding the shorter one.
double total_variation(const DegreeDistribution& p, const DegreeDistribution& q);
double hellinger(const DegreeDistribution& p, const DegreeDistribution& q);
double distance(const DegreeDistribution& p, const DegreeDistribution& q,
                DistanceMetric metric);

// Mean distance between the degree distributions of paired graphs.
double mean_distance(const std::vector<Graph>& predicted,
                     const std::vector<Graph>& empirical, DistanceMetric metric);

} // namespace tcmnet
