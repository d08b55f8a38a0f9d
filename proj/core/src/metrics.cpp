#include "tcmnet/metrics.hpp"

#include <cmath>
#include <string>

#include "tcmnet/errors.hpp"

namespace tcmnet {

namespace {

void check_mass(const DegreeDistribution& d, const char* side) {
    if (d.mass.empty())
        throw InvalidArgument(std::string(side) + " distribution is empty");
    double sum = 0.0;
    for (double m : d.mass) {
        if (!(m >= 0.0))
            throw InvalidArgument(std::string(side) + " distribution has negative mass");
        sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw InvalidArgument(std::string(side) + " distribution sums to " +
                              std::to_string(sum) + ", not 1");
}

double padded(const DegreeDistribution& d, std::size_t k) {
    return k < d.mass.size() ? d.mass[k] : 0.0;
}

} // namespace

double total_variation(const DegreeDistribution& p, const DegreeDistribution& q) {
    check_mass(p, "left");
    check_mass(q, "right");
    std::size_t len = std::max(p.mass.size(), q.mass.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < len; ++k)
        sum += std::abs(padded(p, k) - padded(q, k));
    return 0.5 * sum;
}

double hellinger(const DegreeDistribution& p, const DegreeDistribution& q) {
    check_mass(p, "left");
    check_mass(q, "right");
    std::size_t len = std::max(p.mass.size(), q.mass.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        double d = std::sqrt(padded(p, k)) - std::sqrt(padded(q, k));
        sum += d * d;
    }
    return std::sqrt(0.5 * sum);
}

double distance(const DegreeDistribution& p, const DegreeDistribution& q,
                DistanceMetric metric) {
    return metric == DistanceMetric::TotalVariation ? total_variation(p, q)
                                                    : hellinger(p, q);
}

double mean_distance(const std::vector<Graph>& predicted,
                     const std::vector<Graph>& empirical, DistanceMetric metric) {
    if (predicted.empty() || predicted.size() != empirical.size())
        throw InvalidArgument("mean_distance needs matching nonempty sequences");
    double sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        sum += distance(degree_distribution(predicted[i]),
                        degree_distribution(empirical[i]), metric);
    return sum / static_cast<double>(predicted.size());
}

} // namespace tcmnet
