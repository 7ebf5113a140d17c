#include <benchmark/benchmark.h>

#include "phasekick/branch.hpp"
#include "phasekick/fock.hpp"
#include "phasekick/path.hpp"
#include "phasekick/quadrature.hpp"

using namespace phasekick;

static void BM_BranchTrotterStep(benchmark::State& state) {
    ModelParams p;
    p.eta = 0.5;
    p.gamma = 1.0;
    p.dt = 1e-4;
    BranchState s = BranchState::plus_coherent(1.0);
    for (auto _ : state) {
        s = trotter_step(s, p, 0.0);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_BranchTrotterStep);

static void BM_BranchTwoLegLoop(benchmark::State& state) {
    ModelParams p;
    p.eta = 0.05;
    p.gamma = 1.0;
    p.dt = 1e-3;
    const PhiSchedule loop = two_leg_schedule(static_cast<double>(state.range(0)), p.gamma);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            propagate(BranchState::plus_coherent(1.0), loop, p));
    }
}
BENCHMARK(BM_BranchTwoLegLoop)->Arg(1)->Arg(20);

static void BM_FockSplitSegment(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    ModelParams p;
    p.eta = 0.5;
    p.gamma = 1.0;
    p.dt = 1e-3;
    PhiSchedule seg;
    seg.segments = {{0.05, 0.0}};
    const DensityMatrix rho0 = DensityMatrix::plus_coherent(0.5, d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            evolve(rho0, seg, p, EvolveMethod::TrotterSplit));
    }
}
BENCHMARK(BM_FockSplitSegment)->Arg(24)->Arg(60);

static void BM_GaussHermiteRule(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gauss_hermite(64));
    }
}
BENCHMARK(BM_GaussHermiteRule);

BENCHMARK_MAIN();
