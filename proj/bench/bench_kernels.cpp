#include "stasurf/gallery.hpp"
#include "stasurf/mesh.hpp"
#include "stasurf/valuedist.hpp"

#include <benchmark/benchmark.h>

using namespace stasurf;

namespace {

const WeierstrassData& catenoid() {
    static const WeierstrassData d = gallery_entry("catenoid-r3").parsed().data;
    return d;
}

Grid grid(int n) { return Grid::polar(0.0, 0.5, 2.0, n, 0.0, 6.283185307179586, n); }

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_SampleMesh(benchmark::State& state) {
    const Grid g = grid(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(sample_mesh(catenoid(), g, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * g.size());
}

void BM_AuditMesh(benchmark::State& state) {
    const Grid g = grid(static_cast<int>(state.range(0)));
    const Mesh m = sample_mesh(catenoid(), g);
    for (auto _ : state)
        benchmark::DoNotOptimize(audit_mesh(catenoid(), m, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * g.size());
}

void BM_Regularity(benchmark::State& state) {
    const Grid g = grid(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(check_regularity(catenoid(), g, exec_of(state)));
    state.SetItemsProcessed(state.iterations() * g.size());
}

void BM_NegCurvatureProbe(benchmark::State& state) {
    const NegCurvatureProbeConfig cfg = shipped_probes().front().config;
    for (auto _ : state)
        benchmark::DoNotOptimize(neg_curvature_probe(cfg, exec_of(state)));
}

} // namespace

BENCHMARK(BM_SampleMesh)->ArgsProduct({{32, 128}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AuditMesh)->ArgsProduct({{32, 128}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Regularity)->ArgsProduct({{32, 128}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NegCurvatureProbe)->ArgsProduct({{0}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
