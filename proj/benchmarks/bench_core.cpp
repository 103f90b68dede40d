#include <benchmark/benchmark.h>

#include "fracfem/fracderiv.hpp"
#include "fracfem/linalg.hpp"
#include "fracfem/timestep.hpp"

using namespace fracfem;

namespace {

void BM_IntegralPath(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Triangulation mesh = generate_square_mesh(n);
    const TriangleRule& rule = triangle_rule(4);
    int cell = mesh.num_cells() / 2;
    auto inf = influence_elements(mesh, cell, kXLeft);
    auto qps = map_rule_to_cell(rule, mesh, cell);
    for (auto _ : state) {
        for (const QuadPoint& qp : qps) {
            benchmark::DoNotOptimize(integral_path(mesh, inf, qp.x, qp.y, kXLeft));
        }
    }
    state.SetItemsProcessed(state.iterations() * qps.size());
}
BENCHMARK(BM_IntegralPath)->Arg(10)->Arg(20)->Arg(40);

void BM_BasisDerivs(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Triangulation mesh = generate_square_mesh(n);
    int cell = mesh.num_cells() / 2;
    auto inf = influence_elements(mesh, cell, kXLeft);
    auto qps = map_rule_to_cell(triangle_rule(4), mesh, cell);
    auto path = integral_path(mesh, inf, qps[0].x, qps[0].y, kXLeft);
    for (auto _ : state) {
        benchmark::DoNotOptimize(basis_derivs_along_path(mesh, path, 0.8));
    }
}
BENCHMARK(BM_BasisDerivs)->Arg(10)->Arg(20)->Arg(40);

void BM_AssembleStiffness(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Triangulation mesh = generate_square_mesh(n);
    const TriangleRule& rule = triangle_rule(4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_stiffness(mesh, 0.8, 0.8, 1.0, 1.0, rule));
    }
}
BENCHMARK(BM_AssembleStiffness)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_AssembleMass(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    Triangulation mesh = generate_square_mesh(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_mass(mesh));
    }
}
BENCHMARK(BM_AssembleMass)->Arg(20)->Arg(40);

void BM_BegmStep(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    ProblemSpec p = example1_spec(0.8, 0.8);
    Triangulation mesh = p.make_mesh(n);
    BegmSystem sys = build_begm_system(mesh, p);
    SchemeState s0 = begm_init(sys, p.phi);
    double tau = 1.0 / (n * n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(begm_step(sys, s0, p, tau, tau));
    }
    state.SetLabel(std::to_string(sys.dofs.num_free) + " unknowns");
}
BENCHMARK(BM_BegmStep)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
