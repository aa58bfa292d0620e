// Engine and hot-path throughput comparisons. Run with e.g.
//   ./lucky_bench --benchmark_min_time=0.2

#include <benchmark/benchmark.h>

#include "lucky/arithmetic.hpp"
#include "lucky/formulas.hpp"
#include "lucky/sieve.hpp"

namespace {

void BM_SieveCompact(benchmark::State& state) {
    std::uint64_t limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto table = lucky::LuckyTable::sieve_upto(limit, lucky::SieveEngine::compact);
        benchmark::DoNotOptimize(table.count());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(limit));
}
BENCHMARK(BM_SieveCompact)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_SieveIndexed(benchmark::State& state) {
    std::uint64_t limit = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        auto table = lucky::LuckyTable::sieve_upto(limit, lucky::SieveEngine::indexed);
        benchmark::DoNotOptimize(table.count());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(limit));
}
BENCHMARK(BM_SieveIndexed)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

const lucky::LuckyTable& shared_table() {
    static lucky::LuckyTable table = lucky::LuckyTable::sieve_upto(1 << 20);
    return table;
}

void BM_CountFormula(benchmark::State& state) {
    const auto& table = shared_table();
    std::uint64_t x = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lucky::count_formula(table, x));
}
BENCHMARK(BM_CountFormula)->Arg(1000)->Arg(100000)->Arg(1000000);

void BM_NthFormulaFloor(benchmark::State& state) {
    const auto& table = shared_table();
    std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lucky::nth_formula_floor(table, n));
}
BENCHMARK(BM_NthFormulaFloor)->Arg(100)->Arg(10000);

void BM_FactorSweep(benchmark::State& state) {
    const auto& table = shared_table();
    std::uint64_t hi = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) {
        std::uint64_t acc = 0;
        for (std::uint64_t n = 1; n <= hi; ++n) acc += lucky::factor(table, n).elements.size();
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(hi));
}
BENCHMARK(BM_FactorSweep)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
