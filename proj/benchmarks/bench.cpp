#include <benchmark/benchmark.h>

#include "icefem/cr_space.hpp"
#include "icefem/dynamics.hpp"
#include "icefem/mesh.hpp"
#include "icefem/rheology.hpp"
#include "icefem/scenario.hpp"
#include "icefem/stabilization.hpp"
#include "icefem/transport.hpp"

using namespace icefem;

namespace {

Mesh bench_mesh() { return build_uniform_mesh(1000e3, 1000e3, 15e3); }

void BM_StressDivergence(benchmark::State& state) {
    const Mesh mesh = bench_mesh();
    StressField s(mesh.n_cells());
    for (std::size_t c = 0; c < mesh.n_cells(); ++c) {
        s.s11[c] = 1.0;
        s.s12[c] = -0.5;
        s.s22[c] = 0.25;
    }
    for (auto _ : state) benchmark::DoNotOptimize(stress_divergence_residual(mesh, s));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(mesh.n_cells()));
}
BENCHMARK(BM_StressDivergence);

void BM_Stabilization(benchmark::State& state) {
    const Mesh mesh = bench_mesh();
    const auto st = build_stencils(mesh);
    const std::vector<double> ze(mesh.n_edges(), 1e11);
    const VelocityField v = interpolate(mesh, [](Vec2 p) {
        return Vec2{1e-7 * p.x, -1e-7 * p.y};
    });
    for (auto _ : state) benchmark::DoNotOptimize(apply_stabilization(mesh, st, v, ze, 1.0));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(st.size()));
}
BENCHMARK(BM_Stabilization);

void BM_UpwindStep(benchmark::State& state) {
    const Mesh mesh = bench_mesh();
    const VelocityField v = interpolate(mesh, [](Vec2 p) {
        return Vec2{0.1 * (2.0 * p.y - 1000e3) / 1000e3, 0.1 * (1000e3 - 2.0 * p.x) / 1000e3};
    });
    TracerField q(mesh.n_cells(), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(upwind_step(mesh, q, v, 600.0));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(mesh.n_edges()));
}
BENCHMARK(BM_UpwindStep);

void BM_MevpStep(benchmark::State& state) {
    const Mesh mesh = build_uniform_mesh(500e3, 500e3, 25e3);
    PhysParams p;
    SolverConfig cfg;
    cfg.n_sub = static_cast<int>(state.range(0));
    ScenarioConfig sc;
    const MomentumSolver solver(mesh, p, cfg, scenario_forcing(sc));
    for (auto _ : state) {
        SimState s;
        s.v = VelocityField(mesh.n_edges());
        s.sigma = StressField(mesh.n_cells());
        scenario_tracers(sc, mesh, s.h, s.A);
        benchmark::DoNotOptimize(solver.step(SolverKind::mevp, s));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) *
                            static_cast<long>(mesh.n_cells()));
}
BENCHMARK(BM_MevpStep)->Arg(10)->Arg(100);

} // namespace

BENCHMARK_MAIN();
