#include "tcmnet/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

#include "tcmnet/errors.hpp"
#include "tcmnet/estimate.hpp"

namespace tcmnet {

namespace {

std::string where(const std::filesystem::path& path, std::size_t line) {
    return path.string() + ":" + std::to_string(line);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string strip(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
        s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

template <typename T>
bool parse_int(const std::string& s, T& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && first != last;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stod(s, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == s.size();
}

bool is_negative_int(const std::string& s) {
    std::int64_t v;
    return parse_int(s, v) && v < 0;
}

} // namespace

PingLoadResult load_pings(const std::filesystem::path& path, int rssi_threshold) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open ping file " + path.string());

    PingLoadResult result;
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(line);
        if (line.empty()) continue;
        std::vector<std::string> fields = split(line, ',');
        for (std::string& f : fields) f = strip(f);

        PingRecord rec;
        bool ok = fields.size() == 4 && parse_int(fields[0], rec.timestamp) &&
                  !fields[1].empty() && !fields[2].empty() &&
                  parse_int(fields[3], rec.rssi);
        if (!ok) {
            // A single leading header row is expected, anything else counts
            // as malformed.
            if (!first) ++result.malformed_lines;
            first = false;
            continue;
        }
        first = false;
        if (is_negative_int(fields[1]) || is_negative_int(fields[2])) {
            ++result.dropped_sentinel;
            continue;
        }
        if (rec.rssi < rssi_threshold) {
            ++result.dropped_rssi;
            continue;
        }
        rec.user_a = fields[1];
        rec.user_b = fields[2];
        result.records.push_back(std::move(rec));
    }
    if (lineno == 0) throw DataError("ping file " + path.string() + " is empty");
    return result;
}

NetworkSequence build_period_networks(std::vector<PingRecord> records,
                                      std::int64_t period_seconds,
                                      std::size_t n_periods) {
    if (period_seconds <= 0) throw InvalidArgument("period length must be positive");
    if (records.empty()) throw DataError("no ping records to bucket");

    std::sort(records.begin(), records.end(),
              [](const PingRecord& a, const PingRecord& b) {
                  return std::tie(a.timestamp, a.user_a, a.user_b, a.rssi) <
                         std::tie(b.timestamp, b.user_a, b.user_b, b.rssi);
              });

    const std::int64_t origin = records.front().timestamp;
    std::size_t periods = n_periods;
    if (periods == 0) {
        std::int64_t span = records.back().timestamp - origin;
        periods = static_cast<std::size_t>(span / period_seconds) + 1;
    }

    NetworkSequence seq;
    auto node_index = [&seq](const std::string& id) {
        auto it = seq.node_map.find(id);
        if (it != seq.node_map.end()) return it->second;
        NodeId idx = static_cast<NodeId>(seq.node_ids.size());
        seq.node_map.emplace(id, idx);
        seq.node_ids.push_back(id);
        return idx;
    };
    // The node roster spans the whole recording, so every snapshot shares one
    // node set and degree-0 participants stay visible.
    for (const PingRecord& rec : records) {
        node_index(rec.user_a);
        node_index(rec.user_b);
    }

    seq.graphs.assign(periods, Graph(seq.node_ids.size()));
    seq.period_labels.resize(periods);
    for (std::size_t i = 0; i < periods; ++i)
        seq.period_labels[i] = origin + static_cast<std::int64_t>(i) * period_seconds;

    for (const PingRecord& rec : records) {
        std::size_t idx = static_cast<std::size_t>((rec.timestamp - origin) /
                                                   period_seconds);
        if (idx >= periods) continue; // past a pinned period count
        NodeId a = seq.node_map.at(rec.user_a);
        NodeId b = seq.node_map.at(rec.user_b);
        if (a == b) continue; // device pinging itself
        seq.graphs[idx].add_edge(a, b);
    }
    return seq;
}

NetworkSequence union_networks(const NetworkSequence& seq, std::size_t group_size) {
    if (group_size == 0) throw InvalidArgument("group size must be positive");
    if (seq.graphs.empty() || seq.graphs.size() % group_size != 0)
        throw DataError("snapshot count " + std::to_string(seq.graphs.size()) +
                        " is not divisible by group size " +
                        std::to_string(group_size));

    NetworkSequence out;
    out.node_ids = seq.node_ids;
    out.node_map = seq.node_map;
    std::size_t groups = seq.graphs.size() / group_size;
    out.graphs.reserve(groups);
    out.period_labels.reserve(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        Graph merged(seq.node_ids.size());
        for (std::size_t j = 0; j < group_size; ++j)
            for (const Edge& e : seq.graphs[g * group_size + j].edges())
                merged.add_edge(e.u, e.v);
        out.graphs.push_back(std::move(merged));
        out.period_labels.push_back(seq.period_labels[g * group_size]);
    }
    return out;
}

ModelKind parse_model_kind(const std::string& name) {
    if (name == "m0") return ModelKind::M0;
    if (name == "m1") return ModelKind::M1;
    if (name == "m2") return ModelKind::M2;
    if (name == "m3") return ModelKind::M3;
    throw InvalidArgument("unknown model '" + name + "', expected m0..m3");
}

FitResult fit_from_snapshots(const std::vector<Graph>& snapshots, ModelKind kind) {
    const bool needs_two_step = kind == ModelKind::M2 || kind == ModelKind::M3;
    if (snapshots.size() < 2)
        throw DataError("fitting needs at least two snapshots");
    if (needs_two_step && snapshots.size() < 3)
        throw DataError("random-probability fits need at least three snapshots");
    if (snapshots[0].edge_count() == 0)
        throw DataError("first snapshot has no edges");

    FitResult fit;
    fit.one_step_ratio = z1(snapshots);
    fit.two_step_ratio = needs_two_step ? v1(snapshots)
                                        : std::numeric_limits<double>::quiet_NaN();
    switch (kind) {
        case ModelKind::M0:
            fit.model = Model0{};
            break;
        case ModelKind::M1:
            fit.model = Model1{fit.one_step_ratio};
            break;
        case ModelKind::M2:
            fit.model = Model2{
                beta_from_moments(fit.one_step_ratio, fit.two_step_ratio), {}};
            break;
        case ModelKind::M3:
            fit.model = Model3{
                fit_model3_node_dist(fit.one_step_ratio, fit.two_step_ratio), {}};
            break;
    }
    return fit;
}

FitResult fit_from_sequence(const NetworkSequence& seq, ModelKind kind) {
    return fit_from_snapshots(seq.graphs, kind);
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "# nodes=" << g.node_count() << "\n";
    for (const Edge& e : g.edges()) out << e.u << '\t' << e.v << '\n';
    if (!out) throw DataError("write failed for " + path.string());
}

Graph read_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + " is empty");
    line = strip(line);
    std::size_t n = 0;
    if (line.rfind("# nodes=", 0) != 0 || !parse_int(line.substr(8), n))
        throw DataError(where(path, 1) + ": expected '# nodes=N' header");

    Graph g(n);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(line);
        if (line.empty()) continue;
        std::vector<std::string> f = split(line, '\t');
        NodeId u, v;
        if (f.size() != 2 || !parse_int(f[0], u) || !parse_int(f[1], v))
            throw DataError(where(path, lineno) + ": expected 'u<TAB>v'");
        if (u >= v)
            throw DataError(where(path, lineno) + ": endpoints must satisfy u < v");
        try {
            if (!g.add_edge(u, v))
                throw DataError(where(path, lineno) + ": duplicate edge");
        } catch (const InvalidArgument& err) {
            throw DataError(where(path, lineno) + ": " + err.what());
        }
    }
    return g;
}

void write_temporal_edge_list(const std::vector<Graph>& snapshots,
                              const std::filesystem::path& path) {
    if (snapshots.empty())
        throw InvalidArgument("temporal edge list needs at least one snapshot");
    std::size_t n = snapshots[0].node_count();
    for (const Graph& g : snapshots)
        if (g.node_count() != n)
            throw InvalidArgument("snapshots must share one node set");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "# nodes=" << n << " steps=" << snapshots.size() - 1 << "\n";
    for (std::size_t t = 0; t < snapshots.size(); ++t)
        for (const Edge& e : snapshots[t].edges())
            out << t << '\t' << e.u << '\t' << e.v << '\n';
    if (!out) throw DataError("write failed for " + path.string());
}

std::vector<Graph> read_temporal_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + " is empty");
    line = strip(line);
    std::size_t n = 0, steps = 0;
    {
        std::istringstream hdr(line);
        std::string tag, nodes_kv, steps_kv;
        hdr >> tag >> nodes_kv >> steps_kv;
        bool ok = tag == "#" && nodes_kv.rfind("nodes=", 0) == 0 &&
                  steps_kv.rfind("steps=", 0) == 0 &&
                  parse_int(nodes_kv.substr(6), n) &&
                  parse_int(steps_kv.substr(6), steps);
        if (!ok)
            throw DataError(where(path, 1) + ": expected '# nodes=N steps=T' header");
    }

    std::vector<Graph> snaps(steps + 1, Graph(n));
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(line);
        if (line.empty()) continue;
        std::vector<std::string> f = split(line, '\t');
        std::size_t t;
        NodeId u, v;
        if (f.size() != 3 || !parse_int(f[0], t) || !parse_int(f[1], u) ||
            !parse_int(f[2], v))
            throw DataError(where(path, lineno) + ": expected 't<TAB>u<TAB>v'");
        if (t > steps)
            throw DataError(where(path, lineno) + ": snapshot index " +
                            std::to_string(t) + " beyond steps=" +
                            std::to_string(steps));
        if (u >= v)
            throw DataError(where(path, lineno) + ": endpoints must satisfy u < v");
        try {
            if (!snaps[t].add_edge(u, v))
                throw DataError(where(path, lineno) + ": duplicate edge");
        } catch (const InvalidArgument& err) {
            throw DataError(where(path, lineno) + ": " + err.what());
        }
    }
    return snaps;
}

void write_degree_distribution(const DegreeDistribution& d,
                               const std::filesystem::path& path) {
    if (d.mass.empty()) throw InvalidArgument("degree distribution is empty");
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "degree,mass\n";
    out.precision(17);
    for (std::size_t k = 0; k < d.mass.size(); ++k)
        out << k << ',' << d.mass[k] << '\n';
    if (!out) throw DataError("write failed for " + path.string());
}

DegreeDistribution read_degree_distribution(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || strip(line) != "degree,mass")
        throw DataError(where(path, 1) + ": expected 'degree,mass' header");

    DegreeDistribution d;
    std::size_t lineno = 1;
    double sum = 0.0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip(line);
        if (line.empty()) continue;
        std::vector<std::string> f = split(line, ',');
        std::size_t k;
        double mass;
        if (f.size() != 2 || !parse_int(f[0], k) || !parse_double(f[1], mass))
            throw DataError(where(path, lineno) + ": expected 'degree,mass'");
        if (mass < 0.0)
            throw DataError(where(path, lineno) + ": negative mass");
        if (k < d.mass.size())
            throw DataError(where(path, lineno) + ": degrees must be ascending");
        d.mass.resize(k + 1, 0.0); // absent degrees carry zero mass
        d.mass[k] = mass;
        sum += mass;
    }
    if (d.mass.empty()) throw DataError(path.string() + " has no rows");
    if (std::abs(sum - 1.0) > 1e-6)
        throw DataError(path.string() + ": masses sum to " + std::to_string(sum) +
                        ", not 1");
    return d;
}

void write_epidemic_counts(const EpidemicTrace& trace,
                           const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "step,S,I,R\n";
    for (std::size_t t = 0; t < trace.counts.size(); ++t)
        out << t << ',' << trace.counts[t].s << ',' << trace.counts[t].i << ','
            << trace.counts[t].r << '\n';
    if (!out) throw DataError("write failed for " + path.string());
}

void write_epidemic_nodes(const EpidemicTrace& trace,
                          const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << "node,infected_at,recovered_at,infector\n";
    for (std::size_t v = 0; v < trace.nodes.size(); ++v) {
        const NodeOutcome& o = trace.nodes[v];
        out << v << ',' << o.infected_at << ',' << o.recovered_at << ','
            << o.infector << '\n';
    }
    if (!out) throw DataError("write failed for " + path.string());
}

std::string copenhagen_citation() {
    return "Sapiezynski, P., Stopczynski, A., Lassen, D. D. & Lehmann, S. "
           "Interaction data from the Copenhagen Networks Study. "
           "Scientific Data 6, 315 (2019). doi:10.1038/s41597-019-0325-x";
}

} // namespace tcmnet
