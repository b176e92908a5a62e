#include <trajkit/clustering.hpp>
#include <trajkit/distance_matrix.hpp>
#include <trajkit/similarity.hpp>

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

using namespace trajkit;

namespace {

Trajectory random_walk(std::mt19937_64& rng, std::size_t n, const std::string& id) {
    std::uniform_real_distribution<double> step(-1.0, 1.0);
    std::vector<STPoint> pts;
    double x = 0, y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back({{x, y}, static_cast<double>(i)});
        x += step(rng);
        y += step(rng);
    }
    return Trajectory::validate(id, pts);
}

std::pair<Trajectory, Trajectory> pair_of(std::size_t n) {
    std::mt19937_64 rng(42);
    auto a = random_walk(rng, n, "a");
    auto b = random_walk(rng, n, "b");
    return {std::move(a), std::move(b)};
}

void bm_dtw(benchmark::State& state) {
    const auto [a, b] = pair_of(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dtw(a, b));
    state.SetComplexityN(state.range(0));
}

void bm_frechet(benchmark::State& state) {
    const auto [a, b] = pair_of(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(discrete_frechet(a, b));
    state.SetComplexityN(state.range(0));
}

void bm_lcss(benchmark::State& state) {
    const auto [a, b] = pair_of(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lcss(a, b, 0.5));
    state.SetComplexityN(state.range(0));
}

void bm_edr(benchmark::State& state) {
    const auto [a, b] = pair_of(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(edit_distance_edr(a, b, 0.5));
    state.SetComplexityN(state.range(0));
}

std::vector<EnrichedTrajectory> dataset(std::size_t count, std::size_t length) {
    std::mt19937_64 rng(7);
    std::vector<EnrichedTrajectory> out;
    for (std::size_t i = 0; i < count; ++i) out.emplace_back(random_walk(rng, length, "t" + std::to_string(i)));
    return out;
}

void bm_distance_matrix(benchmark::State& state) {
    const auto data = dataset(static_cast<std::size_t>(state.range(0)), 50);
    SimilarityConfig cfg;
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_distance_matrix(data, cfg, MatrixMetric::dtw, static_cast<std::size_t>(state.range(1))));
}

DistanceMatrix planar_matrix(std::size_t n) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coord(0.0, 100.0);
    std::vector<std::pair<double, double>> p(n);
    for (auto& q : p) q = {coord(rng), coord(rng)};
    std::vector<std::string> ids;
    std::vector<double> values(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        ids.push_back("p" + std::to_string(i));
        for (std::size_t j = 0; j < n; ++j)
            values[i * n + j] = std::hypot(p[i].first - p[j].first, p[i].second - p[j].second);
    }
    return DistanceMatrix(std::move(ids), std::move(values));
}

void bm_k_medoids(benchmark::State& state) {
    const auto m = planar_matrix(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(k_medoids(m, 5));
}

void bm_agglomerative(benchmark::State& state) {
    const auto m = planar_matrix(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(agglomerative(m, Linkage::average));
}

void bm_dbscan(benchmark::State& state) {
    const auto m = planar_matrix(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dbscan(m, 10.0, 4));
}

}  // namespace

BENCHMARK(bm_dtw)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);
BENCHMARK(bm_frechet)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);
BENCHMARK(bm_lcss)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);
BENCHMARK(bm_edr)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);
BENCHMARK(bm_distance_matrix)->Args({100, 1})->Args({100, 4})->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(bm_k_medoids)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_agglomerative)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_dbscan)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
