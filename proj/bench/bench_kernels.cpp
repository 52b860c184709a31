// Parallel kernels against their serial references. Set OMP_NUM_THREADS / PRIOMET_THREADS to vary.
#include <benchmark/benchmark.h>

#include <cmath>

#include "priomet/frechet.hpp"
#include "priomet/generators.hpp"
#include "priomet/metric.hpp"
#include "priomet/rng.hpp"
#include "priomet/stretch.hpp"
#include "priomet/ultrametric.hpp"

using namespace priomet;

namespace {

template <bool Parallel>
void BM_apsp(benchmark::State& st) {
    WeightedGraph g = make_random_graph(std::size_t(st.range(0)), 0.05, 1);
    for (auto _ : st) {
        auto sp = Parallel ? all_pairs_shortest_paths(g) : all_pairs_shortest_paths_serial(g);
        benchmark::DoNotOptimize(sp);
    }
}

template <bool Parallel>
void BM_evaluate_pairs(benchmark::State& st) {
    const std::size_t n = std::size_t(st.range(0));
    MetricSpace m = make_random_metric(n, 2);
    PairEstimate fn = [&](Vertex u, Vertex v) { return std::sqrt(m(u, v) + 1.0); };
    for (auto _ : st) {
        PairTable t = Parallel ? evaluate_pairs(n, fn) : evaluate_pairs_serial(n, fn);
        benchmark::DoNotOptimize(t);
    }
}

template <bool Parallel>
void BM_frechet(benchmark::State& st) {
    const std::size_t n = std::size_t(st.range(0));
    MetricSpace m = make_random_metric(n, 3);
    Rng rng(4);
    std::vector<std::vector<Vertex>> sets(64);
    for (auto& s : sets)
        for (Vertex x = 0; x < n; ++x)
            if (rng.below(8) == 0) s.push_back(x);
    for (auto _ : st) {
        auto c = Parallel ? frechet_coordinates(m, sets) : frechet_coordinates_serial(m, sets);
        benchmark::DoNotOptimize(c);
    }
}

template <bool Parallel>
void BM_frt_expectation(benchmark::State& st) {
    const std::size_t n = std::size_t(st.range(0));
    MetricSpace m = make_random_metric(n, 5);
    PriorityRanking r = PriorityRanking::random(n, 6);
    for (auto _ : st) {
        auto e = Parallel ? estimate_expected_distortion(m, r, 32, 7) : estimate_expected_distortion_serial(m, r, 32, 7);
        benchmark::DoNotOptimize(e);
    }
}

}  // namespace

BENCHMARK(BM_apsp<false>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apsp<true>)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_evaluate_pairs<false>)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_evaluate_pairs<true>)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_frechet<false>)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_frechet<true>)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_frt_expectation<false>)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_frt_expectation<true>)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
