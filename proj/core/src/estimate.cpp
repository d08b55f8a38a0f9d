#include "tcmnet/estimate.hpp"

#include <cmath>
#include <sstream>

#include "tcmnet/errors.hpp"

namespace tcmnet {

namespace {

double survival_ratio(const std::vector<Graph>& snaps, std::size_t start,
                      std::size_t span) {
    const Graph& base = snaps[start];
    if (base.edge_count() == 0)
        throw InvalidArgument("snapshot " + std::to_string(start) + " has no edges");
    std::size_t alive = 0;
    for (const Edge& e : base.edges()) {
        bool ok = true;
        for (std::size_t s = 1; s <= span && ok; ++s)
            ok = snaps[start + s].has_edge(e.u, e.v);
        if (ok) ++alive;
    }
    return static_cast<double>(alive) / static_cast<double>(base.edge_count());
}

double windowed_mean(const std::vector<Graph>& snaps, int t0, std::size_t span) {
    if (t0 < static_cast<int>(span == 2 ? 2 : 1))
        throw InvalidArgument("window must be >= " + std::to_string(span == 2 ? 2 : 1));
    std::size_t t = snaps.size() - 1;
    std::size_t m = t / static_cast<std::size_t>(t0);
    if (m == 0)
        throw InvalidArgument("sequence too short for window " + std::to_string(t0));
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k)
        sum += survival_ratio(snaps, k * static_cast<std::size_t>(t0), span);
    return sum / static_cast<double>(m);
}

} // namespace

double z1(const std::vector<Graph>& snapshots) {
    if (snapshots.size() < 2)
        throw InvalidArgument("z1 needs at least two snapshots");
    return survival_ratio(snapshots, 0, 1);
}

double zbar(const std::vector<Graph>& snapshots, int t0) {
    if (snapshots.size() < 2)
        throw InvalidArgument("zbar needs at least two snapshots");
    return windowed_mean(snapshots, t0, 1);
}

double v1(const std::vector<Graph>& snapshots) {
    if (snapshots.size() < 3)
        throw InvalidArgument("v1 needs at least three snapshots");
    return survival_ratio(snapshots, 0, 2);
}

double vbar(const std::vector<Graph>& snapshots, int t0) {
    if (snapshots.size() < 3)
        throw InvalidArgument("vbar needs at least three snapshots");
    return windowed_mean(snapshots, t0, 2);
}

double z1(const TemporalNetwork& tn) { return z1(tn.snapshots); }
double zbar(const TemporalNetwork& tn, int t0) { return zbar(tn.snapshots, t0); }
double v1(const TemporalNetwork& tn) { return v1(tn.snapshots); }
double vbar(const TemporalNetwork& tn, int t0) { return vbar(tn.snapshots, t0); }

namespace {

double base_edges(const TemporalNetwork& tn, std::size_t start) {
    std::size_t count = tn.snapshots[start].edge_count();
    if (count == 0)
        throw InvalidArgument("snapshot " + std::to_string(start) + " has no edges");
    return static_cast<double>(count);
}

double latent_windowed(const TemporalNetwork& tn, int t0, bool two_step) {
    if (t0 < (two_step ? 2 : 1))
        throw InvalidArgument("window must be >= " + std::string(two_step ? "2" : "1"));
    std::size_t t = tn.step_stats.size();
    std::size_t m = t / static_cast<std::size_t>(t0);
    if (m == 0)
        throw InvalidArgument("sequence too short for window " + std::to_string(t0));
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t s = k * static_cast<std::size_t>(t0);
        std::size_t count = two_step ? tn.step_stats[s + 1].persisted_pair
                                     : tn.step_stats[s].persisted;
        sum += static_cast<double>(count) / base_edges(tn, s);
    }
    return sum / static_cast<double>(m);
}

} // namespace

double latent_z1(const TemporalNetwork& tn) {
    if (tn.step_stats.empty())
        throw InvalidArgument("latent_z1 needs at least one step");
    return static_cast<double>(tn.step_stats[0].persisted) / base_edges(tn, 0);
}

double latent_zbar(const TemporalNetwork& tn, int t0) {
    if (tn.step_stats.empty())
        throw InvalidArgument("latent_zbar needs at least one step");
    return latent_windowed(tn, t0, false);
}

double latent_v1(const TemporalNetwork& tn) {
    if (tn.step_stats.size() < 2)
        throw InvalidArgument("latent_v1 needs at least two steps");
    return static_cast<double>(tn.step_stats[1].persisted_pair) /
           base_edges(tn, 0);
}

double latent_vbar(const TemporalNetwork& tn, int t0) {
    if (tn.step_stats.size() < 2)
        throw InvalidArgument("latent_vbar needs at least two steps");
    return latent_windowed(tn, t0, true);
}

namespace {

std::string moments_suffix(double m1, double m2) {
    std::ostringstream os;
    os << " (m1=" << m1 << ", m2=" << m2 << ")";
    return os.str();
}

} // namespace

BetaParams beta_from_moments(double m1, double m2) {
    if (!(m1 > 0.0 && m1 < 1.0))
        throw InfeasibleMoments("first moment must lie strictly inside (0,1)" +
                                moments_suffix(m1, m2));
    if (!(m2 > m1 * m1))
        throw InfeasibleMoments(
            "second moment must exceed the squared first moment, zero or "
            "negative variance" + moments_suffix(m1, m2));
    if (!(m2 < m1))
        throw InfeasibleMoments("second moment must be less than the first moment" +
                                moments_suffix(m1, m2));
    // Matching alpha/(alpha+beta) = m1 and alpha(alpha+1)/((a+b)(a+b+1)) = m2
    // gives a total concentration c = alpha + beta of (m1 - m2)/(m2 - m1^2).
    double c = (m1 - m2) / (m2 - m1 * m1);
    return {m1 * c, (1.0 - m1) * c};
}

std::pair<double, double> beta_moments(const BetaParams& w) {
    if (!(w.alpha > 0.0) || !(w.beta > 0.0))
        throw InvalidArgument("beta shape parameters must be positive");
    return {w.mean(), w.second_moment()};
}

BetaParams fit_model3_node_dist(double z_est, double v_est) {
    if (!(z_est >= 0.0) || !(v_est >= 0.0))
        throw InvalidArgument("survival means must be nonnegative");
    // Product persistence: one-step mean is E(W)^2 and two-step mean is
    // E(W^2)^2, so the node law has moments (sqrt(z), sqrt(v)).
    return beta_from_moments(std::sqrt(z_est), std::sqrt(v_est));
}

BiasStats bias_stats(const std::vector<std::pair<double, double>>& est_truth) {
    if (est_truth.empty())
        throw InvalidArgument("bias_stats needs at least one pair");
    std::vector<double> dev;
    dev.reserve(est_truth.size());
    for (const auto& [est, truth] : est_truth) {
        if (truth == 0.0)
            throw InvalidArgument("relative bias is undefined for zero truth");
        dev.push_back(std::abs(est - truth) / std::abs(truth));
    }
    double mean = 0.0;
    for (double d : dev) mean += d;
    mean /= static_cast<double>(dev.size());
    double var = 0.0;
    if (dev.size() > 1) {
        for (double d : dev) var += (d - mean) * (d - mean);
        var /= static_cast<double>(dev.size() - 1);
    }
    return {mean, std::sqrt(var)};
}

namespace {

std::string num(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

std::string cell(const std::optional<double>& v) { return v ? num(*v) : ""; }

} // namespace

std::string EstimateReport::csv_header() {
    return "model,n,t,t0,z1,zbar,v1,vbar,alpha,beta";
}

std::string EstimateReport::csv_row() const {
    std::ostringstream os;
    os << model << ',' << n << ',' << t << ',' << t0 << ',' << cell(z1) << ','
       << cell(zbar) << ',' << cell(v1) << ',' << cell(vbar) << ',';
    if (derived) os << num(derived->alpha) << ',' << num(derived->beta);
    else os << ',';
    return os.str();
}

std::string EstimateReport::key_value() const {
    std::ostringstream os;
    os << "model=" << model << " n=" << n << " t=" << t << " t0=" << t0;
    if (z1) os << " z1=" << num(*z1);
    if (zbar) os << " zbar=" << num(*zbar);
    if (v1) os << " v1=" << num(*v1);
    if (vbar) os << " vbar=" << num(*vbar);
    if (derived)
        os << " alpha=" << num(derived->alpha) << " beta=" << num(derived->beta);
    return os.str();
}

} // namespace tcmnet
