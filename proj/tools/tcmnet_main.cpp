// Command-line front end: generation, evolution, estimation, epidemics,
// analytic reproductive numbers, distribution distances, model fitting, and
// one-shot reproduction of the replication experiments.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <tcmnet/config_model.hpp>
#include <tcmnet/dataio.hpp>
#include <tcmnet/epidemics.hpp>
#include <tcmnet/errors.hpp>
#include <tcmnet/estimate.hpp>
#include <tcmnet/metrics.hpp>
#include <tcmnet/temporal.hpp>

#include "experiments.hpp"

namespace fs = std::filesystem;
using namespace tcmnet;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return parts;
}

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InvalidArgument("cannot parse " + what + " from '" + text + "'");
    }
}

// m0 | m1:<p> | m2:<a>,<b>[:<window>|:forever] | m3:<a>,<b>[:<window>|:forever]
PersistenceModel parse_model_spec(const std::string& spec) {
    std::vector<std::string> parts = split(spec, ':');
    const std::string& head = parts[0];
    PersistenceModel model;
    if (head == "m0") {
        if (parts.size() > 1)
            throw InvalidArgument("m0 takes no parameters: '" + spec + "'");
        model = Model0{};
    } else if (head == "m1") {
        if (parts.size() != 2)
            throw InvalidArgument("expected m1:<p>, got '" + spec + "'");
        model = Model1{parse_number(parts[1], "persistence probability")};
    } else if (head == "m2" || head == "m3") {
        if (parts.size() < 2 || parts.size() > 3)
            throw InvalidArgument("expected " + head +
                                  ":<alpha>,<beta>[:<window>|:forever], got '" +
                                  spec + "'");
        std::vector<std::string> ab = split(parts[1], ',');
        if (ab.size() != 2)
            throw InvalidArgument("expected <alpha>,<beta> in '" + spec + "'");
        BetaParams w{parse_number(ab[0], "alpha"), parse_number(ab[1], "beta")};
        std::optional<int> window;
        if (parts.size() == 3 && parts[2] != "forever")
            window = static_cast<int>(parse_number(parts[2], "window length"));
        if (head == "m2")
            model = Model2{w, window};
        else
            model = Model3{w, window};
    } else {
        throw InvalidArgument("unknown model spec '" + spec + "'");
    }
    validate(model);
    return model;
}

// poisson:<mean> | const:<k>
DegreeSequence parse_degree_sample(const std::string& spec, std::size_t n,
                                   Rng& rng) {
    std::vector<std::string> parts = split(spec, ':');
    if (parts.size() == 2 && parts[0] == "poisson")
        return sample_poisson_degrees(n, parse_number(parts[1], "degree mean"),
                                      rng);
    if (parts.size() == 2 && parts[0] == "const")
        return constant_degrees(
            n, static_cast<int>(parse_number(parts[1], "degree")), rng);
    throw InvalidArgument("unknown degree spec '" + spec +
                          "' (expected poisson:<mean> or const:<k>)");
}

// poisson:<mean> | const:<k> | file:<degree distribution csv>
Pgf parse_degree_pgf(const std::string& spec) {
    std::vector<std::string> parts = split(spec, ':');
    if (parts.size() == 2 && parts[0] == "poisson")
        return poisson_pgf(parse_number(parts[1], "degree mean"));
    if (parts.size() == 2 && parts[0] == "const")
        return degenerate_pgf(static_cast<int>(parse_number(parts[1], "degree")));
    if (parts.size() == 2 && parts[0] == "file")
        return pgf_from_distribution(read_degree_distribution(parts[1]));
    throw InvalidArgument(
        "unknown degree spec '" + spec +
        "' (expected poisson:<mean>, const:<k> or file:<path>)");
}

// Degree-distribution input for distances: either a distribution csv or an
// edge list, told apart by the first line.
DegreeDistribution load_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::string first;
    std::getline(in, first);
    in.close();
    if (first.rfind("degree,mass", 0) == 0) return read_degree_distribution(path);
    if (first.rfind("# nodes=", 0) == 0)
        return degree_distribution(read_edge_list(path));
    throw DataError(path + ": expected a degree distribution csv or an edge list");
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
}

struct GenerateArgs {
    std::size_t n = 0;
    std::string degree;
    std::uint64_t seed = 0;
    std::string out = "graph.edges";
};

int cmd_generate(const GenerateArgs& a) {
    Rng rng = make_rng(a.seed);
    DegreeSequence degrees = parse_degree_sample(a.degree, a.n, rng);
    if (degrees.parity_repaired)
        std::cerr << "warning: degree sum was odd, added one stub to a random "
                     "node\n";
    MatchResult res = configuration_model(degrees, rng);
    write_edge_list(res.graph, a.out);
    std::cout << "nodes=" << res.graph.node_count()
              << " edges=" << res.graph.edge_count()
              << " discarded_pairs=" << res.discarded_pairs << "\n"
              << "wrote " << a.out << "\n";
    return 0;
}

struct EvolveArgs {
    std::string input;
    std::string model;
    std::size_t steps = 0;
    std::uint64_t seed = 0;
    std::string out = "sequence.tel";
};

int cmd_evolve(const EvolveArgs& a) {
    PersistenceModel model = parse_model_spec(a.model);
    Graph g0 = read_edge_list(a.input);
    Rng rng = make_rng(a.seed);
    TemporalNetwork tn = evolve(g0, model, a.steps, rng);
    write_temporal_edge_list(tn.snapshots, a.out);
    std::size_t discards = 0;
    for (const StepStats& s : tn.step_stats) discards += s.discards;
    std::cout << "model=" << model_name(model) << " steps=" << tn.steps()
              << " initial_edges=" << tn.snapshots.front().edge_count()
              << " final_edges=" << tn.snapshots.back().edge_count()
              << " discards=" << discards << "\n"
              << "wrote " << a.out << "\n";
    return 0;
}

struct EstimateArgs {
    std::string input;
    std::string model = "m1";
    int t0 = 1;
    bool csv = false;
};

int cmd_estimate(const EstimateArgs& a) {
    ModelKind kind = parse_model_kind(a.model);
    std::vector<Graph> snaps = read_temporal_edge_list(a.input);
    if (snaps.size() < 2)
        throw DataError(a.input + ": need at least two snapshots to estimate");

    EstimateReport report;
    report.model = a.model;
    report.n = snaps.front().node_count();
    report.t = snaps.size() - 1;
    report.t0 = a.t0;
    report.m_windows = report.t / std::max(a.t0, 1);
    report.z1 = z1(snaps);
    report.zbar = zbar(snaps, a.t0);
    if (kind == ModelKind::M2 || kind == ModelKind::M3) {
        report.v1 = v1(snaps);
        if (a.t0 >= 2) report.vbar = vbar(snaps, a.t0);
        double m1_est = a.t0 >= 2 ? *report.zbar : *report.z1;
        double m2_est = a.t0 >= 2 ? *report.vbar : *report.v1;
        report.derived = kind == ModelKind::M2
                             ? beta_from_moments(m1_est, m2_est)
                             : fit_model3_node_dist(m1_est, m2_est);
    }
    if (a.csv)
        std::cout << EstimateReport::csv_header() << "\n" << report.csv_row()
                  << "\n";
    else
        std::cout << report.key_value() << "\n";
    return 0;
}

struct SirArgs {
    std::string input;
    std::size_t n = 0;
    std::string degree;
    std::string model;
    double beta = 0.0;
    double gamma = 0.0;
    std::size_t seeds = 1;
    double early_frac = 0.01;
    std::size_t max_steps = 100000;
    bool stop_early = false;
    std::uint64_t seed = 0;
    std::string counts_out;
    std::string nodes_out;
};

int cmd_sir(const SirArgs& a) {
    PersistenceModel model = parse_model_spec(a.model);
    Rng rng = make_rng(a.seed);
    Graph g0(0);
    if (!a.input.empty()) {
        g0 = read_edge_list(a.input);
    } else if (a.n > 0 && !a.degree.empty()) {
        g0 = configuration_model(parse_degree_sample(a.degree, a.n, rng), rng)
                 .graph;
    } else {
        throw InvalidArgument("need --input, or --n together with --degree");
    }
    EpidemicParams params;
    params.beta = a.beta;
    params.gamma = a.gamma;
    params.initial_infected = a.seeds;
    params.early_stage_fraction = a.early_frac;
    SirOptions opts;
    opts.max_steps = a.max_steps;
    opts.stop_after_early_stage = a.stop_early;
    EpidemicTrace trace = simulate_sir(g0, model, params, rng, opts);
    std::cout << "total_infected=" << trace.total_infected
              << " steps=" << trace.steps << " r0_observed=" << trace.r0_observed
              << " r_star_observed=" << trace.r_star_observed
              << " early_cases=" << trace.early_cases << "\n";
    if (!a.counts_out.empty()) {
        write_epidemic_counts(trace, a.counts_out);
        std::cout << "wrote " << a.counts_out << "\n";
    }
    if (!a.nodes_out.empty()) {
        write_epidemic_nodes(trace, a.nodes_out);
        std::cout << "wrote " << a.nodes_out << "\n";
    }
    return 0;
}

struct RstarArgs {
    std::string degree;
    double beta = 0.0;
    double gamma = 0.0;
    double p = 0.0;
};

int cmd_rstar(const RstarArgs& a) {
    Pgf pgf = parse_degree_pgf(a.degree);
    double tau = transmission_probability(a.beta, a.gamma, a.p);
    std::cout << "tau=" << tau << "\n"
              << "contact_mean=" << excess_contact_mean(pgf, a.gamma, a.p) << "\n"
              << "r0=" << analytic_r0(pgf, a.beta, a.gamma, a.p) << "\n"
              << "rstar=" << analytic_r_star(pgf, a.beta, a.gamma, a.p) << "\n";
    return 0;
}

struct DistanceArgs {
    std::string a, b;
    std::string metric = "tv";
};

int cmd_distance(const DistanceArgs& args) {
    DistanceMetric metric;
    if (args.metric == "tv")
        metric = DistanceMetric::TotalVariation;
    else if (args.metric == "hellinger")
        metric = DistanceMetric::Hellinger;
    else
        throw InvalidArgument("unknown metric '" + args.metric +
                              "' (expected tv or hellinger)");
    double d = distance(load_distribution(args.a), load_distribution(args.b),
                        metric);
    std::cout << d << "\n";
    return 0;
}

struct FitArgs {
    std::string input;
    std::string model;
};

int cmd_fit(const FitArgs& a) {
    std::vector<Graph> snaps = read_temporal_edge_list(a.input);
    FitResult fit = fit_from_snapshots(snaps, parse_model_kind(a.model));
    std::cout << "model=" << model_name(fit.model) << "\n"
              << "one_step_ratio=" << fit.one_step_ratio << "\n";
    if (!std::isnan(fit.two_step_ratio))
        std::cout << "two_step_ratio=" << fit.two_step_ratio << "\n";
    if (const Model1* m1 = std::get_if<Model1>(&fit.model))
        std::cout << "p=" << m1->p << "\n";
    if (const Model2* m2 = std::get_if<Model2>(&fit.model))
        std::cout << "alpha=" << m2->w.alpha << "\nbeta=" << m2->w.beta << "\n";
    if (const Model3* m3 = std::get_if<Model3>(&fit.model))
        std::cout << "alpha=" << m3->w.alpha << "\nbeta=" << m3->w.beta << "\n";
    return 0;
}

struct ReproduceArgs {
    std::string target;
    std::string scale = "full";
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::string pings;
    int rssi = -75;
};

int cmd_reproduce(const ReproduceArgs& a) {
    if (a.scale != "full" && a.scale != "quick")
        throw InvalidArgument("--scale must be full or quick");
    fs::create_directories(a.out_dir);
    fs::path out = fs::path(a.out_dir) / (a.target + ".csv");

    if (a.target == "table1" || a.target == "table2" || a.target == "table3") {
        BiasExperiment exp = a.target == "table1" ? BiasExperiment::ConstantP
                             : a.target == "table2" ? BiasExperiment::DyadBeta
                                                    : BiasExperiment::NodeProductBeta;
        BiasGridConfig cfg = bias_config(exp);
        if (a.scale == "quick") apply_quick_scale(cfg);
        std::vector<BiasCell> cells = run_bias_grid(cfg, a.seed);
        write_file(out, bias_grid_csv(cfg, cells, a.seed, a.scale));
        const BiasCell& last = cells.back();
        std::cout << "wrote " << out.string() << "\n"
                  << "largest cell n=" << last.n << " t=" << last.t
                  << " zbar_absrelbias=" << last.zbar.abs_rel_bias
                  << " z1_absrelbias=" << last.z1.abs_rel_bias << "\n";
        return 0;
    }
    if (a.target == "figure1") {
        DriftConfig cfg;
        std::vector<DriftSummary> rows = run_drift_trace(cfg, a.seed);
        write_file(out, drift_csv(cfg, rows, a.seed));
        std::cout << "wrote " << out.string() << "\n"
                  << "median_first_step=" << rows[1].median
                  << " median_last_step=" << rows.back().median << "\n";
        return 0;
    }
    if (a.target == "table4") {
        if (a.pings.empty())
            throw InvalidArgument(
                "table4 needs --pings with a local copy of the Copenhagen "
                "proximity data (timestamp,user_a,user_b,rssi rows); see "
                "README for the citation");
        PingLoadResult pings = load_pings(a.pings, a.rssi);
        NetworkSequence daily = build_period_networks(pings.records, 86400);
        NetworkSequence weekly = union_networks(daily, 7);
        int runs = a.scale == "quick" ? 25 : 100;
        ModelComparison mc =
            run_model_comparison(weekly.graphs, runs, child_seed(a.seed, 4));
        write_file(out, model_comparison_csv(mc, runs, a.seed,
                                             fs::path(a.pings).filename().string()));
        std::cout << "wrote " << out.string() << "\n";
        for (const ModelComparisonRow& r : mc.rows)
            std::cout << r.model << " tv_mean=" << r.tv_mean
                      << " hellinger_mean=" << r.hellinger_mean << "\n";
        return 0;
    }
    throw InvalidArgument("unknown target '" + a.target +
                          "' (expected table1..table4 or figure1)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"temporal configuration-model toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a config file");

    GenerateArgs gen;
    CLI::App* c_gen = app.add_subcommand("generate", "sample a static network");
    c_gen->add_option("--n", gen.n, "number of nodes")->required();
    c_gen->add_option("--degree", gen.degree,
                      "degree law, poisson:<mean> or const:<k>")
        ->required();
    c_gen->add_option("--seed", gen.seed, "master seed");
    c_gen->add_option("--out", gen.out, "edge list output path");

    EvolveArgs evo;
    CLI::App* c_evo = app.add_subcommand("evolve", "evolve a network in time");
    c_evo->add_option("--input", evo.input, "initial edge list")->required();
    c_evo->add_option("--model", evo.model,
                      "persistence model, e.g. m1:0.8 or m2:1,4:2")
        ->required();
    c_evo->add_option("--steps", evo.steps, "number of transitions")->required();
    c_evo->add_option("--seed", evo.seed, "master seed");
    c_evo->add_option("--out", evo.out, "temporal edge list output path");

    EstimateArgs est;
    CLI::App* c_est = app.add_subcommand(
        "estimate", "estimate persistence from a snapshot sequence");
    c_est->add_option("--input", est.input, "temporal edge list")->required();
    c_est->add_option("--model", est.model, "model kind m0..m3");
    c_est->add_option("--t0", est.t0,
                      "window length; windowed second moments need t0 >= 2");
    c_est->add_flag("--csv", est.csv, "emit a csv header and row");

    SirArgs sir;
    CLI::App* c_sir =
        app.add_subcommand("sir", "simulate an epidemic on an evolving network");
    c_sir->add_option("--input", sir.input, "initial edge list");
    c_sir->add_option("--n", sir.n, "generate the initial network: node count");
    c_sir->add_option("--degree", sir.degree,
                      "generate the initial network: degree law");
    c_sir->add_option("--model", sir.model, "persistence model")->required();
    c_sir->add_option("--beta", sir.beta, "transmission probability per contact")
        ->required();
    c_sir->add_option("--gamma", sir.gamma, "recovery probability per step")
        ->required();
    c_sir->add_option("--seeds", sir.seeds, "initially infected count");
    c_sir->add_option("--early-frac", sir.early_frac,
                      "early-stage cutoff as a fraction of n");
    c_sir->add_option("--max-steps", sir.max_steps, "step limit");
    c_sir->add_flag("--stop-early", sir.stop_early,
                    "stop once early-stage tallies are final");
    c_sir->add_option("--seed", sir.seed, "master seed");
    c_sir->add_option("--counts", sir.counts_out, "write per-step S/I/R counts");
    c_sir->add_option("--nodes", sir.nodes_out, "write per-node outcomes");

    RstarArgs rst;
    CLI::App* c_rst = app.add_subcommand(
        "rstar", "analytic reproductive numbers for an evolving network");
    c_rst->add_option("--degree", rst.degree,
                      "degree law, poisson:<mean>, const:<k> or file:<path>")
        ->required();
    c_rst->add_option("--beta", rst.beta, "transmission probability")->required();
    c_rst->add_option("--gamma", rst.gamma, "recovery probability")->required();
    c_rst->add_option("--p", rst.p, "edge persistence probability")->required();

    DistanceArgs dist;
    CLI::App* c_dist = app.add_subcommand(
        "distance", "distance between two degree distributions");
    c_dist->add_option("--a", dist.a, "distribution csv or edge list")
        ->required();
    c_dist->add_option("--b", dist.b, "distribution csv or edge list")
        ->required();
    c_dist->add_option("--metric", dist.metric, "tv or hellinger");

    FitArgs fit;
    CLI::App* c_fit = app.add_subcommand(
        "fit", "fit a persistence model to a snapshot sequence");
    c_fit->add_option("--input", fit.input, "temporal edge list")->required();
    c_fit->add_option("--model", fit.model, "model kind m0..m3")->required();

    ReproduceArgs rep;
    CLI::App* c_rep = app.add_subcommand(
        "reproduce", "run a packaged replication experiment");
    c_rep->add_option("target", rep.target,
                      "table1 | table2 | table3 | table4 | figure1")
        ->required();
    c_rep->add_option("--scale", rep.scale,
                      "full (100 replications) or quick (25, larger sizes only)");
    c_rep->add_option("--seed", rep.seed, "master seed");
    c_rep->add_option("--out-dir", rep.out_dir, "directory for output csv");
    c_rep->add_option("--pings", rep.pings,
                      "proximity ping csv (table4 only)");
    c_rep->add_option("--rssi", rep.rssi,
                      "signal strength threshold, keep pings at or above");

    try {
        app.parse(argc, argv);
        if (c_gen->parsed()) return cmd_generate(gen);
        if (c_evo->parsed()) return cmd_evolve(evo);
        if (c_est->parsed()) return cmd_estimate(est);
        if (c_sir->parsed()) return cmd_sir(sir);
        if (c_rst->parsed()) return cmd_rstar(rst);
        if (c_dist->parsed()) return cmd_distance(dist);
        if (c_fit->parsed()) return cmd_fit(fit);
        if (c_rep->parsed()) return cmd_reproduce(rep);
        return 1;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const InfeasibleMoments& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
