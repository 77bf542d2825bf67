#include <benchmark/benchmark.h>

#include "hemas/emas.hpp"
#include "hemas/harness.hpp"
#include "hemas/hybrid.hpp"
#include "hemas/stats.hpp"

using namespace hemas;

namespace {

void BM_FunctionValue(benchmark::State& state, const char* name) {
    const int dim = static_cast<int>(state.range(0));
    auto f = make_benchmark(name, dim);
    RngStream rng(1);
    Genotype x(dim);
    for (auto& v : x) v = rng.uniform(f.lower_bound, f.upper_bound);
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.value(x));
    }
    state.SetItemsProcessed(state.iterations());
}

void BM_EmasStep(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    EmasParams params;
    auto f = make_benchmark("ackley", dim);
    for (auto _ : state) {
        state.PauseTiming();
        EvalBudget budget{0, 1u << 30};
        RngStream rng(7);
        RunState run;
        run.population = create_initial_population(params, f, budget, rng);
        run.next_id = params.population_size;
        state.ResumeTiming();
        meet_step(run.population, params, rng);
        repro_step(run, params, f, budget, rng);
        dead_step(run.population, params);
    }
}

void BM_FullRun(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    EmasParams params;
    auto f = make_benchmark("ackley", dim);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        EvalBudget budget = make_budget(f);
        RngStream rng(++seed);
        benchmark::DoNotOptimize(run_emas(params, f, budget, rng));
    }
}

void BM_HybridizationStep(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    EmasParams params;
    auto f = make_benchmark("ackley", dim);
    HybridConfig config = *preset("hemas2").hybrid;
    for (auto _ : state) {
        state.PauseTiming();
        EvalBudget budget{0, 1u << 30};
        RngStream rng(5);
        RunState run;
        run.population = create_initial_population(params, f, budget, rng);
        run.next_id = params.population_size;
        state.ResumeTiming();
        hybridization_step(run, config, f, budget, rng);
    }
}

void BM_DunnTest(benchmark::State& state) {
    RngStream rng(3);
    std::vector<SampleSet> groups;
    for (int g = 0; g < 4; ++g) {
        SampleSet s{"g" + std::to_string(g), {}};
        for (int i = 0; i < 30; ++i) s.values.push_back(rng.uniform(0.0, 1.0) + 0.1 * g);
        groups.push_back(std::move(s));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(dunn_test(groups));
    }
}

BENCHMARK_CAPTURE(BM_FunctionValue, sphere, "sphere")->Arg(100)->Arg(1000);
BENCHMARK_CAPTURE(BM_FunctionValue, ackley, "ackley")->Arg(100)->Arg(1000);
BENCHMARK_CAPTURE(BM_FunctionValue, griewank, "griewank")->Arg(100)->Arg(1000);
BENCHMARK_CAPTURE(BM_FunctionValue, rastrigin, "rastrigin")->Arg(100)->Arg(1000);
BENCHMARK(BM_EmasStep)->Arg(100)->Arg(1000);
BENCHMARK(BM_FullRun)->Arg(50);
BENCHMARK(BM_HybridizationStep)->Arg(100);
BENCHMARK(BM_DunnTest);

}  // namespace

BENCHMARK_MAIN();
