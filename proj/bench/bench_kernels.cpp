// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <vector>

#include "coarsekit/field.hpp"
#include "coarsekit/kernels.hpp"
#include "coarsekit/random.hpp"

namespace {

using namespace coarse;

struct Cloud {
    Field pts;
    std::vector<double> dist;
    std::size_t n;

    explicit Cloud(std::size_t count) : pts(count, 3), dist(count * count), n(count) {
        Rng rng(7);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t c = 0; c < 3; ++c) pts[i][c] = rng.uniform(-10.0, 10.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = euclidean_distance(pts[i], pts[j]);
    }
};

// Sparse graph weights: a ring plus chords, everything else unreachable.
std::vector<double> graph(std::size_t n) {
    std::vector<double> d(n * n, kInf);
    Rng rng(9);
    for (std::size_t i = 0; i < n; ++i) {
        d[i * n + i] = 0.0;
        const std::size_t j = (i + 1) % n, k = rng.index(n);
        d[i * n + j] = d[j * n + i] = rng.uniform(0.5, 2.0);
        if (k != i) d[i * n + k] = d[k * n + i] = rng.uniform(1.0, 20.0);
    }
    return d;
}

template <bool Parallel>
void BM_PairMax(benchmark::State& state) {
    const Cloud c(static_cast<std::size_t>(state.range(0)));
    auto ratio = [&](std::size_t i, std::size_t j) {
        return std::abs(c.pts[i][0] - c.pts[j][0]) / c.dist[i * c.n + j];
    };
    for (auto _ : state) {
        double v = Parallel ? kernels::parallel::pair_max(c.n, ratio) : kernels::serial::pair_max(c.n, ratio);
        benchmark::DoNotOptimize(v);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.n * (c.n - 1) / 2));
}

template <bool Parallel>
void BM_FloydWarshall(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto base = graph(n);
    for (auto _ : state) {
        state.PauseTiming();
        auto d = base;
        state.ResumeTiming();
        if (Parallel)
            kernels::parallel::floyd_warshall(d, n);
        else
            kernels::serial::floyd_warshall(d, n);
        benchmark::DoNotOptimize(d.data());
    }
}

template <bool Parallel>
void BM_TriangleCheck(benchmark::State& state) {
    const Cloud c(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        double v = Parallel ? kernels::parallel::worst_triangle_violation(c.dist, c.n)
                            : kernels::serial::worst_triangle_violation(c.dist, c.n);
        benchmark::DoNotOptimize(v);
    }
}

}  // namespace

BENCHMARK(BM_PairMax<false>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairMax<true>)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FloydWarshall<false>)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FloydWarshall<true>)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TriangleCheck<false>)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TriangleCheck<true>)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
