// Timings for the stages that dominate a full run: building the truncated
// space, the exhaustive delta scan, cover and nerve cores, one MV stage, the
// homology engine, and Rips windows.
#include "horonerve/cover.hpp"
#include "horonerve/hyperbolicity.hpp"
#include "horonerve/mv.hpp"
#include "horonerve/opencone.hpp"
#include "horonerve/rips.hpp"

#include <benchmark/benchmark.h>

#include <memory>

using namespace horonerve;

namespace {

std::shared_ptr<const AugmentedSpace> z_line(int rg) {
    return std::make_shared<const AugmentedSpace>(build_augmented(GroupSpec::free_abelian(1), {{0}}, {rg, 5, 1}));
}

std::shared_ptr<const AugmentedSpace> free2(int rg) {
    return std::make_shared<const AugmentedSpace>(build_augmented(GroupSpec::free(2), {{0}}, {rg, 5, 5}));
}

} // namespace

static void BM_BuildAugmentedFree2(benchmark::State& state) {
    for (auto _ : state) {
        auto s = build_augmented(GroupSpec::free(2), {{0}}, {static_cast<int>(state.range(0)), 5, 5});
        benchmark::DoNotOptimize(s.graph.size());
    }
}
BENCHMARK(BM_BuildAugmentedFree2)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_DeltaHoroball(benchmark::State& state) {
    const auto base = FiniteMetricSpace::integer_interval(-static_cast<int>(state.range(0)),
                                                          static_cast<int>(state.range(0)));
    const auto g = build_horoball(base, {0, std::nullopt}, 4);
    for (auto _ : state) benchmark::DoNotOptimize(four_point_delta(g, DeltaMode::exhaustive()).twice_delta);
    state.counters["vertices"] = g.size();
}
BENCHMARK(BM_DeltaHoroball)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_DeltaNaiveHoroball(benchmark::State& state) {
    const auto g = build_horoball(FiniteMetricSpace::integer_interval(-8, 8), {0, std::nullopt}, 4);
    for (auto _ : state) benchmark::DoNotOptimize(four_point_delta_naive_twice(g));
}
BENCHMARK(BM_DeltaNaiveHoroball)->Unit(benchmark::kMillisecond);

static void BM_CoverAndCore(benchmark::State& state) {
    const auto space = free2(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const auto cover = build_cover(space, 1);
        const auto d = decompose(*cover, 0, Schedule{});
        benchmark::DoNotOptimize(nerve_core(cover, d.u, 3).kept.size());
    }
    state.counters["vertices"] = space->graph.size();
}
BENCHMARK(BM_CoverAndCore)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_MVStage(benchmark::State& state) {
    const auto space = z_line(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const auto stage = assemble_mv(space, 0, Schedule{}, 3);
        benchmark::DoNotOptimize(check_mv_exactness(stage.triple).all_certified_exact());
    }
}
BENCHMARK(BM_MVStage)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_HomologyRipsCycle(benchmark::State& state) {
    GraphBuilder b;
    const int n = static_cast<int>(state.range(0));
    for (int i = 0; i < n; ++i) b.add_vertex(VertexId::cayley(i));
    for (int i = 0; i < n; ++i) b.add_edge(i, (i + 1) % n);
    const auto g = std::move(b).build();
    const auto c = std::make_shared<const SimplicialComplex>(rips(g, 2, 3));
    for (auto _ : state) {
        SimplicialHomology h(c);
        benchmark::DoNotOptimize(h.group(1).rank);
    }
    state.counters["faces"] = static_cast<double>(c->face_count());
}
BENCHMARK(BM_HomologyRipsCycle)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_RipsWindowDecomposition(benchmark::State& state) {
    const auto space = build_level_vertex_space(GroupSpec::free_abelian(1), {{0}}, 3, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(window_decomposition_check(space.graph, 2, {1, 3}, 3).holds());
}
BENCHMARK(BM_RipsWindowDecomposition)->Unit(benchmark::kMillisecond);

static void BM_RipsProxyCore(benchmark::State& state) {
    const auto space = build_level_vertex_space(GroupSpec::free_abelian(1), {{0}}, 3, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(rips_contractibility_proxy(space.graph, static_cast<int>(state.range(0)), 3));
}
BENCHMARK(BM_RipsProxyCore)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_ConeChecks(benchmark::State& state) {
    const ConedSpace c({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}},
                       static_cast<int>(state.range(0)));
    for (auto _ : state) {
        for (int n = 1; n <= c.levels(); ++n) {
            const auto net = build_net(c, n);
            benchmark::DoNotOptimize(band_cover_check(c, net).holds);
        }
    }
}
BENCHMARK(BM_ConeChecks)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
