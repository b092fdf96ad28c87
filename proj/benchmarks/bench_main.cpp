#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "vcell/density.hpp"
#include "vcell/optimizer.hpp"
#include "vcell/packing.hpp"

namespace {

using namespace vcell;

// Triangular lattice with spacing 2 and a small seeded jitter, rows x rows sites.
Packing jittered_lattice(int rows) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> jitter(-0.05, 0.05);
    std::vector<Point> pts;
    for (int j = 0; j < rows; ++j) {
        for (int i = 0; i < rows; ++i) {
            pts.push_back({2.2 * (i - rows / 2) + 1.1 * (j % 2) + jitter(rng),
                           2.2 * std::sqrt(3.0) / 2.0 * (j - rows / 2) + jitter(rng)});
        }
    }
    return Packing(std::move(pts));
}

void BM_VoronoiCell(benchmark::State& state) {
    const int rows = static_cast<int>(state.range(0));
    const Packing pk = jittered_lattice(rows);
    const std::size_t site = static_cast<std::size_t>(rows * (rows / 2) + rows / 2);
    VoronoiOptions o;
    o.bound = 2.2 * rows;
    o.brute_force_limit = state.range(1) ? 0 : pk.size();
    for (auto _ : state) benchmark::DoNotOptimize(voronoi_cell(pk, site, o));
    state.counters["sites"] = static_cast<double>(pk.size());
}
BENCHMARK(BM_VoronoiCell)->ArgsProduct({{8, 32, 128}, {0, 1}})->ArgNames({"rows", "grid"});

void BM_Decompose(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<Point> v;
    for (std::size_t k = 0; k < n; ++k) v.push_back(from_polar(1.3, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n)));
    const ConvexPolygon p(v);
    for (auto _ : state) benchmark::DoNotOptimize(lower_bound_certificate(p, {0.0, 0.0}));
}
BENCHMARK(BM_Decompose)->Arg(6)->Arg(7)->Arg(12);

void BM_MinimizeArea(benchmark::State& state) {
    OptimizerOptions o;
    o.restarts = 4;
    o.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(minimize_area(static_cast<std::size_t>(state.range(0)), o));
}
BENCHMARK(BM_MinimizeArea)->Arg(5)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
