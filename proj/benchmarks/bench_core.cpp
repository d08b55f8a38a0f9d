#include <benchmark/benchmark.h>

#include <tcmnet/config_model.hpp>
#include <tcmnet/epidemics.hpp>
#include <tcmnet/estimate.hpp>
#include <tcmnet/temporal.hpp>

using namespace tcmnet;

namespace {

Graph poisson_graph(std::size_t n, double mean, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return configuration_model(sample_poisson_degrees(n, mean, rng), rng).graph;
}

void bm_configuration_model(benchmark::State& state) {
    const std::size_t n = state.range(0);
    Rng rng = make_rng(1);
    DegreeSequence degrees = sample_poisson_degrees(n, 6.0, rng);
    for (auto _ : state) {
        MatchResult res = configuration_model(degrees, rng);
        benchmark::DoNotOptimize(res.graph.edge_count());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(bm_configuration_model)->Arg(1000)->Arg(10000);

void bm_evolve_step_constant(benchmark::State& state) {
    Graph g0 = poisson_graph(state.range(0), 6.0, 2);
    Rng rng = make_rng(3);
    TemporalProcess proc(g0, Model1{0.8}, rng);
    for (auto _ : state) {
        StepStats s = proc.advance(rng);
        benchmark::DoNotOptimize(s.survived);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g0.edge_count()));
}
BENCHMARK(bm_evolve_step_constant)->Arg(1000)->Arg(10000);

void bm_evolve_step_dyad_beta(benchmark::State& state) {
    Graph g0 = poisson_graph(state.range(0), 6.0, 4);
    Rng rng = make_rng(5);
    TemporalProcess proc(g0, Model2{{1.0, 4.0}, 2}, rng);
    for (auto _ : state) {
        StepStats s = proc.advance(rng);
        benchmark::DoNotOptimize(s.survived);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g0.edge_count()));
}
BENCHMARK(bm_evolve_step_dyad_beta)->Arg(1000)->Arg(10000);

void bm_estimators(benchmark::State& state) {
    Graph g0 = poisson_graph(1000, 6.0, 6);
    Rng rng = make_rng(7);
    TemporalNetwork tn = evolve(g0, Model2{{1.0, 4.0}, 2}, state.range(0), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(zbar(tn, 2));
        benchmark::DoNotOptimize(vbar(tn, 2));
    }
}
BENCHMARK(bm_estimators)->Arg(30)->Arg(100);

void bm_sir_run(benchmark::State& state) {
    Graph g0 = poisson_graph(state.range(0), 6.0, 8);
    EpidemicParams params;
    params.beta = 0.05;
    params.gamma = 0.2;
    SirOptions opts;
    opts.stop_after_early_stage = true;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Rng rng = make_rng(child_seed(9, seed++));
        EpidemicTrace trace = simulate_sir(g0, Model1{0.8}, params, rng, opts);
        benchmark::DoNotOptimize(trace.total_infected);
    }
}
BENCHMARK(bm_sir_run)->Arg(1000)->Arg(5000);

} // namespace

BENCHMARK_MAIN();
