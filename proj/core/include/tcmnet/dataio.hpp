#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

#include "tcmnet/epidemics.hpp"
#include "tcmnet/graph.hpp"
#include "tcmnet/temporal.hpp"

namespace tcmnet {

// One Bluetooth proximity ping between two study participants.
struct PingRecord {
    std::int64_t timestamp = 0; // seconds
    std::string user_a;
    std::string user_b;
    int rssi = 0; // dBm
};

struct PingLoadResult {
    std::vector<PingRecord> records;
    std::size_t malformed_lines = 0;   // counted, not fatal
    std::size_t dropped_rssi = 0;      // below the signal threshold
    std::size_t dropped_sentinel = 0;  // partner outside the study roster
};

// Reads a ping CSV with columns timestamp,user_a,user_b,rssi (header row
// optional). Keeps rows with rssi >= threshold (inclusive) whose partner ids
// are both real participants; negative integer ids are roster sentinels for
// out-of-study devices and are dropped.
PingLoadResult load_pings(const std::filesystem::path& path, int rssi_threshold = -75);

// Snapshot sequence with the participant ids behind the dense node indexing.
struct NetworkSequence {
    std::vector<std::string> node_ids; // dense index -> participant id
    std::unordered_map<std::string, NodeId> node_map;
    std::vector<Graph> graphs;
    std::vector<std::int64_t> period_labels; // start timestamp of each period

    std::size_t node_count() const { return node_ids.size(); }
};

// Buckets pings into consecutive periods of `period_seconds`, period 0
// starting at the earliest timestamp. Records are first canonicalized by a
// full sort, so any reordering of the input rows yields the same sequence;
// node indices follow first appearance in that canonical order and every
// participant is a node of every snapshot. n_periods = 0 derives the count
// from the data, otherwise later pings are dropped.
NetworkSequence build_period_networks(std::vector<PingRecord> records,
                                      std::int64_t period_seconds,
                                      std::size_t n_periods = 0);

// Unions each consecutive group of `group_size` snapshots into one.
NetworkSequence union_networks(const NetworkSequence& seq, std::size_t group_size);

enum class ModelKind { M0, M1, M2, M3 };

ModelKind parse_model_kind(const std::string& name); // "m0".."m3"

struct FitResult {
    PersistenceModel model;
    double one_step_ratio = 0; // share of first-snapshot edges alive one step on
    double two_step_ratio = 0; // alive two steps on (NaN for m0/m1)
};

// Fits a persistence model to an observed sequence from its first-snapshot
// survival ratios. Random-probability models come back without a refresh
// window: one draw explains the whole observation span.
FitResult fit_from_snapshots(const std::vector<Graph>& snapshots, ModelKind kind);
FitResult fit_from_sequence(const NetworkSequence& seq, ModelKind kind);

// Plain text formats. Edge lists: "# nodes=N" then one "u<TAB>v" line per
// edge with u < v, insertion order. Temporal edge lists: "# nodes=N steps=T"
// then "t<TAB>u<TAB>v" grouped by snapshot index t = 0..T.
void write_edge_list(const Graph& g, const std::filesystem::path& path);
Graph read_edge_list(const std::filesystem::path& path);

void write_temporal_edge_list(const std::vector<Graph>& snapshots,
                              const std::filesystem::path& path);
std::vector<Graph> read_temporal_edge_list(const std::filesystem::path& path);

// Degree distributions as "degree,mass" CSV, ascending degree.
void write_degree_distribution(const DegreeDistribution& d,
                               const std::filesystem::path& path);
DegreeDistribution read_degree_distribution(const std::filesystem::path& path);

// Epidemic traces: per-step compartment counts ("step,S,I,R") and per-node
// outcomes ("node,infected_at,recovered_at,infector"), -1 for never.
void write_epidemic_counts(const EpidemicTrace& trace,
                           const std::filesystem::path& path);
void write_epidemic_nodes(const EpidemicTrace& trace,
                          const std::filesystem::path& path);

// Reference for the public proximity dataset the ping pipeline targets.
std::string copenhagen_citation();

} // namespace tcmnet
