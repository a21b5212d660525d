#include "blowup/integrate.hpp"
#include "blowup/kernel.hpp"
#include "blowup/model.hpp"

#include <benchmark/benchmark.h>

using namespace blowup;

namespace {

ProblemSpec make_spec() {
    ProblemSpec spec;
    spec.n = 3;
    spec.R = 1.0;
    spec.p = 1.0;
    spec.q = 2.0;
    spec.lambda = 1.0;
    spec.u0 = build_quadratic_initial_data(-1.0, spec, 10.0);
    return spec;
}

void BM_compute_rhs(benchmark::State& state) {
    const ProblemSpec spec = make_spec();
    const RadialGrid grid(1.0, static_cast<int>(state.range(0)));
    const RadialField u = evaluate_initial_data(spec.u0, grid);
    RadialField out(grid);
    for (auto _ : state) {
        compute_rhs(u.values(), spec, grid, out.values());
        benchmark::DoNotOptimize(out.values().data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_compute_rhs)->Arg(128)->Arg(512)->Arg(2048);

void BM_rk4_step(benchmark::State& state) {
    const ProblemSpec spec = make_spec();
    const RadialGrid grid(1.0, static_cast<int>(state.range(0)));
    const RadialField u = evaluate_initial_data(spec.u0, grid);
    const double dt = select_dt(u, spec, StepControl{});
    for (auto _ : state) benchmark::DoNotOptimize(step(u, spec, dt));
}
BENCHMARK(BM_rk4_step)->Arg(128)->Arg(512)->Arg(2048);

void BM_sphere_potential(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sphere_potential(0.5, 1.0, 0.01, n));
}
BENCHMARK(BM_sphere_potential)->Arg(1)->Arg(2)->Arg(3);

void BM_ball_potential(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ball_potential(0.5, 1.0, 0.01, n));
}
BENCHMARK(BM_ball_potential)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
