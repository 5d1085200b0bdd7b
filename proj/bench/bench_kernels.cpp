// Serial against OpenMP versions of the exhaustive kernels, plus the
// linear binary solver and the DP.

#include <benchmark/benchmark.h>

#include "fairorient/binary_ef.hpp"
#include "fairorient/decomp.hpp"
#include "fairorient/dp.hpp"
#include "fairorient/heavy_ef.hpp"
#include "fairorient/oracle.hpp"
#include "fairorient/random.hpp"

using namespace fairorient;

namespace {

Instance random_of(std::size_t n, std::size_t m, Weight w, bool simple, std::uint64_t seed,
                   std::optional<std::size_t> heavy = std::nullopt)
{
    gen::RandomSpec s;
    s.n = n;
    s.m = m;
    s.max_weight = w;
    s.simple = simple;
    s.symmetric = true;
    s.no_zero_zero = true;
    s.max_heavy = heavy;
    s.seed = seed;
    return gen::random_instance(s);
}

void BM_oracle_min_charity(benchmark::State &state)
{
    const Instance inst = random_of(6, 12, 3, false, 17);
    oracle::Options opt;
    opt.parallel = state.range(0) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle::brute_min_charity(inst, Fairness::EFX, opt).min_charity);
}
BENCHMARK(BM_oracle_min_charity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_heavy(benchmark::State &state)
{
    // heavy edges valued 3 on a sparse graph: most branches survive pruning
    const Instance inst = random_of(120, 200, 3, true, 5, 16);
    heavy::Options opt;
    opt.parallel = state.range(0) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(heavy::solve_heavy(inst, Goal::Decision, opt).decision);
}
BENCHMARK(BM_heavy)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_heavy_reference(benchmark::State &state)
{
    const Instance inst = random_of(120, 200, 3, true, 5, 16);
    for (auto _ : state)
        benchmark::DoNotOptimize(heavy::solve_heavy_reference(inst).decision);
}
BENCHMARK(BM_heavy_reference)->Unit(benchmark::kMillisecond);

void BM_binary(benchmark::State &state)
{
    const auto m = static_cast<std::size_t>(state.range(0));
    gen::RandomSpec s;
    s.n = m / 4;
    s.m = m;
    s.max_weight = 1;
    s.seed = 3;
    const Instance inst = gen::random_instance(s);
    for (auto _ : state)
        benchmark::DoNotOptimize(binary::solve_binary(inst, Goal::MinCharity).min_charity);
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_binary)->Arg(1 << 14)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_dp_ef(benchmark::State &state)
{
    const Instance inst = random_of(14, 22, 2, false, 9);
    const auto nd = decomp::make_nice(inst, decomp::heuristic_decomposition(inst));
    for (auto _ : state)
        benchmark::DoNotOptimize(dp::solve_ef_mc(inst, nd).min_charity);
}
BENCHMARK(BM_dp_ef)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
