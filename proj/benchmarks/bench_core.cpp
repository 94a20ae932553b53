#include <benchmark/benchmark.h>

#include "lpsld/dual.hpp"
#include "lpsld/estimators.hpp"
#include "lpsld/pgauss.hpp"
#include "lpsld/prefactor.hpp"

using namespace lpsld;

static void BM_LambdaP(benchmark::State& state) {
    const PExponent p(3.0);
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lambda_p(t, -0.2, p));
        t = t < 10.0 ? t * 1.07 : 0.1;
    }
}
BENCHMARK(BM_LambdaP);

static void BM_Psi(benchmark::State& state) {
    const PExponent p(3.0);
    const auto& rule = GaussHermiteRule::cached(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(psi({1.1, -0.3}, p, rule));
    }
}
BENCHMARK(BM_Psi)->Arg(64)->Arg(128);

static void BM_SolveDual(benchmark::State& state) {
    const PExponent p(3.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_dual(0.7, p));
    }
}
BENCHMARK(BM_SolveDual)->Unit(benchmark::kMillisecond);

static void BM_ImportanceSampling(benchmark::State& state) {
    const DualPoint dp = solve_dual(0.7, PExponent(3.0));
    const Direction d = direction_for(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(is_tail(dp, d, 100, 1));
    }
}
BENCHMARK(BM_ImportanceSampling)->Arg(20)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_DirectionCorrections(benchmark::State& state) {
    const DualPoint dp = solve_dual(0.7, PExponent(3.0));
    const Direction d = direction_for(200, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(direction_corrections(dp, d.theta));
    }
}
BENCHMARK(BM_DirectionCorrections);
